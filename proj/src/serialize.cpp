#include "gilet/serialize.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>

namespace gilet {

namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

BoundingBox bbox_from_json(const Json& j) {
  BoundingBox b;
  if (j.is_null()) return b;
  const auto lo = j.at("lo").get<std::vector<double>>();
  const auto hi = j.at("hi").get<std::vector<double>>();
  b.dim = static_cast<int>(lo.size());
  b.empty = false;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    b.lo[i] = lo[i];
    b.hi[i] = hi[i];
  }
  return b;
}

}  // namespace

Json bbox_to_json(const BoundingBox& box) {
  if (box.empty) return nullptr;
  Json lo = Json::array(), hi = Json::array();
  for (int i = 0; i < box.dim; ++i) {
    lo.push_back(box.lo[static_cast<std::size_t>(i)]);
    hi.push_back(box.hi[static_cast<std::size_t>(i)]);
  }
  return {{"lo", lo}, {"hi", hi}};
}

Json scan_to_json(const ScanResult& r, const std::string& timestamp) {
  Json diag = Json::array();
  for (const auto& d : r.diagnostics) {
    Json e;
    e["sigma"] = d.sigma;
    e["lyapunov"] = d.lyapunov_valid ? Json(d.lyapunov) : Json::array();
    e["rotation_number"] = optional_number(d.rotation_number);
    e["radial_spread"] = d.radial_spread;
    e["delta"] = d.delta;
    e["flip_count"] = d.flip_count;
    if (d.hetero_flip_count) e["hetero_flip_count"] = *d.hetero_flip_count;
    e["escaped"] = d.escaped;
    e["bbox"] = bbox_to_json(d.bbox);
    diag.push_back(std::move(e));
  }
  Json events = Json::array();
  for (const auto& ev : r.events) {
    events.push_back({{"kind", ev.kind},
                      {"sigma_low", ev.sigma_low},
                      {"sigma_high", ev.sigma_high},
                      {"evidence", ev.evidence},
                      {"unresolved", ev.unresolved}});
  }
  const AssumptionReport& a = r.assumption_report;
  Json saddle = Json::array();
  for (const auto& s : a.saddle) {
    saddle.push_back({{"sigma", s.sigma},
                      {"found", s.found},
                      {"lambda_s", s.lambda_s},
                      {"lambda_u", s.lambda_u},
                      {"in_rectangle", s.in_rectangle}});
  }
  Json report{{"kappa_s", a.kappa_s},        {"kappa_u", a.kappa_u},
              {"saddle", saddle},            {"gaps", a.gaps},
              {"delta_violations", a.delta_violations}, {"rotation_sign", a.rotation_sign}};

  Json j;
  j["schema"] = kSchemaVersion;
  j["map"] = std::string(to_string(r.variant));
  j["mu"] = r.mu;
  j["beta"] = r.beta;
  j["sigma_grid"] = r.sigma_grid;
  j["diagnostics"] = diag;
  j["events"] = events;
  j["assumption_report"] = report;
  j["seed"] = r.seed;
  j["timestamp"] = timestamp;
  return j;
}

ScanResult scan_from_json(const Json& j) {
  if (j.at("schema").get<int>() != kSchemaVersion) throw ContractError("unsupported scan schema");
  ScanResult r{parse_variant(j.at("map").get<std::string>()),
               j.at("mu").get<double>(),
               j.at("beta").get<double>(),
               j.at("seed").get<std::uint64_t>(),
               j.at("sigma_grid").get<std::vector<double>>(),
               {},
               {},
               {}};
  for (const auto& e : j.at("diagnostics")) {
    SigmaDiagnostics d;
    d.sigma = e.at("sigma").get<double>();
    d.lyapunov = e.at("lyapunov").get<std::vector<double>>();
    d.lyapunov_valid = !d.lyapunov.empty();
    if (!e.at("rotation_number").is_null()) d.rotation_number = e.at("rotation_number").get<double>();
    d.radial_spread = e.at("radial_spread").get<double>();
    d.delta = e.at("delta").get<double>();
    d.flip_count = e.at("flip_count").get<int>();
    if (e.contains("hetero_flip_count")) d.hetero_flip_count = e.at("hetero_flip_count").get<int>();
    d.escaped = e.at("escaped").get<bool>();
    d.bbox = bbox_from_json(e.at("bbox"));
    r.diagnostics.push_back(std::move(d));
  }
  for (const auto& e : j.at("events")) {
    r.events.push_back({e.at("kind").get<std::string>(), e.at("sigma_low").get<double>(),
                        e.at("sigma_high").get<double>(), e.at("evidence").get<std::string>(),
                        e.value("unresolved", false)});
  }
  const Json& a = j.at("assumption_report");
  AssumptionReport& rep = r.assumption_report;
  rep.kappa_s = a.at("kappa_s").get<double>();
  rep.kappa_u = a.at("kappa_u").get<double>();
  for (const auto& s : a.at("saddle")) {
    rep.saddle.push_back({s.at("sigma").get<double>(), s.at("found").get<bool>(), s.at("lambda_s").get<double>(),
                          s.at("lambda_u").get<double>(), s.at("in_rectangle").get<bool>()});
  }
  rep.gaps = a.at("gaps").get<std::vector<double>>();
  rep.delta_violations = a.at("delta_violations").get<std::vector<double>>();
  rep.rotation_sign = a.at("rotation_sign").get<std::vector<int>>();
  return r;
}

bool same_serialized_content(const ScanResult& a, const ScanResult& b) {
  return scan_to_json(a, "") == scan_to_json(b, "");
}

Json fixed_points_to_json(const MapModel& model, const FixedPointSet& set) {
  Json pts = Json::array();
  for (const auto& p : set.points) {
    Json eig = Json::array();
    for (const auto& e : p.eigen) eig.push_back({{"re", e.value.real()}, {"im", e.value.imag()}, {"modulus", std::abs(e.value)}});
    pts.push_back({{"location", std::vector<double>(p.location.coords().begin(), p.location.coords().end())},
                   {"residual", p.residual},
                   {"classification", std::string(to_string(p.classification))},
                   {"family", std::string(to_string(p.family))},
                   {"eigenvalues", eig}});
  }
  return {{"schema", kSchemaVersion},
          {"map", std::string(to_string(model.variant()))},
          {"mu", model.mu()},
          {"sigma", model.sigma()},
          {"beta", model.potential().beta()},
          {"fixed_points", pts},
          {"dropped_seeds", set.dropped_seeds}};
}

void write_fixed_points_csv(std::ostream& os, const FixedPointSet& set) {
  const int dim = set.points.empty() ? 2 : set.points.front().location.dim();
  os << (dim == 3 ? "x,y,z" : "x,y") << ",residual,classification,family";
  for (int i = 1; i <= dim; ++i) os << ",lambda" << i << "_re,lambda" << i << "_im";
  os << '\n';
  const auto old = os.precision(17);
  for (const auto& p : set.points) {
    for (double c : p.location.coords()) os << c << ',';
    os << p.residual << ',' << to_string(p.classification) << ',' << to_string(p.family);
    for (const auto& e : p.eigen) os << ',' << e.value.real() << ',' << e.value.imag();
    os << '\n';
  }
  os.precision(old);
}

void write_orbit_csv(std::ostream& os, const std::vector<StateVec>& sample) {
  const bool three = !sample.empty() && sample.front().dim() == 3;
  os << (three ? "n,x,y,z\n" : "n,x,y\n");
  const auto old = os.precision(17);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    os << i << ',' << sample[i].x() << ',' << sample[i].y();
    if (three) os << ',' << sample[i].z();
    os << '\n';
  }
  os.precision(old);
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string sigma_tag(double sigma) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", sigma);
  return buf;
}

}  // namespace gilet
