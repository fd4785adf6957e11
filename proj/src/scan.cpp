#include "gilet/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace gilet {

bool Rectangle::contains(const StateVec& s) const {
  return s.x() > x_lo && s.x() < x_hi && s.y() > y_lo && s.y() < y_hi;
}

double Rectangle::diagonal() const { return std::hypot(x_hi - x_lo, y_hi - y_lo); }

bool ScanResult::has_unresolved() const {
  return std::any_of(events.begin(), events.end(), [](const ScanEvent& e) { return e.unresolved; });
}

const ScanEvent* ScanResult::find(const std::string& kind) const {
  for (const auto& e : events) {
    if (e.kind == kind) return &e;
  }
  return nullptr;
}

ScanConfig default_scan_config(MapVariant variant) {
  ScanConfig c;
  c.variant = variant;
  if (variant == MapVariant::ModifiedGilet) {
    c.sigma_lo = 0.05;
    c.sigma_hi = 0.20;
  }
  return c;
}

namespace {

double nearest_root(const std::vector<double>& roots, double target, const char* what) {
  if (roots.empty()) throw ContractError(std::string("scan: no ") + what + " found");
  return *std::min_element(roots.begin(), roots.end(),
                           [&](double a, double b) { return std::abs(a - target) < std::abs(b - target); });
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

MapModel model_at(const ScanConfig& c, double sigma) {
  return {c.variant, c.mu, sigma, WavePotential(c.beta)};
}

struct FlipCounts {
  int homo = 0;
  std::optional<int> hetero;
  std::size_t points = 0;
  bool truncated = false;
};

FlipCounts flip_counts(const ScanConfig& c, const ScanGeometry& g, const MapModel& model) {
  FlipCounts out;
  const FixedPointRecord saddle = critical_fixed_point(model, g.saddle_x);
  if (saddle.classification != Classification::Saddle || saddle.residual > kFixedPointResidualTol) return out;
  const ManifoldPolyline poly = trace_unstable(model, saddle, Branch::Left, c.budget);
  out.points = poly.size();
  out.truncated = poly.truncated;
  out.homo = slice_runs(model, make_slice(model, g.saddle_x, Side::Left), poly.points);
  if (g.partner_x) {
    // W^u(p) into the partner's slice, and W^u(q) into p's slice; the map is
    // odd, so W^u(q) is the point reflection of W^u(p).
    const int forward = slice_runs(model, make_slice(model, *g.partner_x, Side::Right), poly.points);
    std::vector<StateVec> mirrored;
    mirrored.reserve(poly.points.size());
    for (const auto& p : poly.points) mirrored.emplace_back(-p.x(), -p.y());
    const int backward = slice_runs(model, make_slice(model, g.saddle_x, Side::Left), mirrored);
    out.hetero = std::min(forward, backward);
  }
  return out;
}

double center_radius(const ScanConfig& c, const ScanGeometry& g, double sigma) {
  const MapModel model = model_at(c, sigma);
  return zero_fixed_point(model, g.center_x).spectral_radius();
}

}  // namespace

ScanGeometry scan_geometry(const ScanConfig& config) {
  const WavePotential pot(config.beta);
  switch (config.variant) {
    case MapVariant::GiletPlanar: {
      const double xs = nearest_root(find_critical_points(pot, {-2.0, -1.2}), -std::numbers::pi / 2, "saddle");
      const double xc = nearest_root(find_zeros(pot, {xs - 0.6, xs - 1e-3}), xs - 0.2, "cell center");
      return {xs, std::nullopt, xc};
    }
    case MapVariant::ModifiedGilet: {
      const double xs = nearest_root(find_critical_points(pot, {0.05, 0.4}), 0.35, "saddle");
      return {xs, -xs, 0.0};
    }
    default:
      throw ContractError("scan: only the planar maps can be scanned");
  }
}

Rectangle scan_rectangle(const ScanConfig& config, const MapModel& model) {
  const ScanGeometry g = scan_geometry(config);
  const double x_r = config.variant == MapVariant::ModifiedGilet ? 0.0 : g.saddle_x;
  const double mu = model.mu();
  const double y_hat = mu / (1.0 - mu) * model.potential().value(g.saddle_x);
  const double h = std::abs(y_hat) + config.beta_margin;
  return {x_r - config.alpha, x_r + config.alpha, -h, h};
}

std::vector<double> make_sigma_grid(double lo, double hi, double resolution) {
  if (!(lo > 0.0 && hi < 1.0 && lo <= hi)) throw ContractError("sigma range must lie in (0,1)");
  if (!(resolution >= 1e-5)) throw ContractError("resolution must be at least 1e-5");
  std::vector<double> grid;
  const auto n = static_cast<long>(std::floor((hi - lo) / resolution + 1e-9));
  for (long i = 0; i <= n; ++i) grid.push_back(lo + static_cast<double>(i) * resolution);
  return grid;
}

SigmaDiagnostics diagnose(const ScanConfig& c, double sigma) {
  const MapModel model = model_at(c, sigma);
  const ScanGeometry g = scan_geometry(c);
  const Rectangle rect = scan_rectangle(c, model);
  SigmaDiagnostics d;
  d.sigma = sigma;

  const StateVec center(g.center_x, 0.0);
  std::vector<StateVec> seeds{StateVec(g.center_x + 1e-3, 0.0)};
  if (c.seed_count > 1) {
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> ux(rect.x_lo, rect.x_hi), uy(rect.y_lo, rect.y_hi);
    for (int i = 1; i < c.seed_count; ++i) {
      const double x = ux(rng);
      seeds.emplace_back(x, uy(rng));
    }
  }

  for (const auto& s0 : seeds) {
    OrbitDiagnostics orb = run_orbit(model, s0, c.n_transient, c.n_keep);
    d.escaped = d.escaped || orb.escaped;
    for (const auto& p : orb.attractor_sample) {
      if (!rect.contains(p)) d.escaped = true;
      d.bbox.extend(p);
      d.sample.push_back(p);
    }
  }

  const LyapunovResult ly = lyapunov_spectrum(model, seeds.front(), std::max(c.n_keep, 1000L));
  d.lyapunov = ly.exponents;
  d.lyapunov_valid = ly.valid;
  d.mean_log_det = ly.mean_log_det;

  if (!d.sample.empty()) {
    d.radial_spread = centerset_spread(d.sample, center);
    if (d.sample.size() >= 100) {
      try {
        d.rotation_number = rotation_number(d.sample, center);
      } catch (const DegenerateAngle&) {
      }
    }
    d.delta = distance_to_slice(model, d.sample, make_slice(model, g.saddle_x, Side::Left));
  }

  const FlipCounts fc = flip_counts(c, g, model);
  d.flip_count = fc.homo;
  d.hetero_flip_count = fc.hetero;
  d.manifold_points = fc.points;
  d.manifold_truncated = fc.truncated;
  if (!c.keep_samples) {
    d.sample.clear();
    d.sample.shrink_to_fit();
  }
  return d;
}

AssumptionReport verify_assumptions(const ScanConfig& c, const std::vector<double>& grid,
                                    const std::vector<SigmaDiagnostics>& diag) {
  if (grid.empty()) throw ContractError("verify_assumptions: empty grid");
  const ScanGeometry g = scan_geometry(c);
  AssumptionReport rep;
  rep.kappa_s = 0.0;
  rep.kappa_u = std::numeric_limits<double>::infinity();
  for (double sigma : grid) {
    const MapModel model = model_at(c, sigma);
    const FixedPointRecord s = critical_fixed_point(model, g.saddle_x);
    const bool found = s.residual <= kFixedPointResidualTol && s.classification == Classification::Saddle;
    if (!found) {
      rep.gaps.push_back(sigma);
      rep.saddle.push_back({sigma, false, 0.0, 0.0, false});
      continue;
    }
    const double lu = std::abs(s.eigen.front().value);
    const double ls = std::abs(s.eigen.back().value);
    rep.kappa_s = std::max(rep.kappa_s, ls);
    rep.kappa_u = std::min(rep.kappa_u, lu);
    rep.saddle.push_back({sigma, true, ls, lu, scan_rectangle(c, model).contains(s.location)});
  }
  if (!std::isfinite(rep.kappa_u)) rep.kappa_u = 0.0;

  // Δ should not increase before the branch first reaches the slice.
  std::size_t pre = diag.size();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i].flip_count > 0) {
      pre = i;
      break;
    }
  }
  for (std::size_t i = 1; i < pre; ++i) {
    if (!diag[i].escaped && !diag[i - 1].escaped && diag[i].delta > diag[i - 1].delta + 1e-3) {
      rep.delta_violations.push_back(diag[i].sigma);
    }
  }
  for (const auto& d : diag) {
    rep.rotation_sign.push_back(!d.rotation_number ? 0 : (*d.rotation_number > 0.0) - (*d.rotation_number < 0.0));
  }
  return rep;
}

namespace {

// Bisects a 0 → positive transition of a flip count to width tol.
std::pair<double, double> refine_onset(const ScanConfig& c, const ScanGeometry& g, double lo, double hi, bool hetero,
                                       double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const FlipCounts fc = flip_counts(c, g, model_at(c, mid));
    const int n = hetero ? fc.hetero.value_or(0) : fc.homo;
    (n > 0 ? hi : lo) = mid;
  }
  return {lo, hi};
}

void tangency_events(const ScanConfig& c, const ScanGeometry& g, const std::vector<double>& grid,
                     const std::vector<SigmaDiagnostics>& diag, const std::vector<int>& count, bool hetero,
                     std::vector<ScanEvent>& events) {
  const std::string prefix = hetero ? "heteroclinic-" : "";
  const std::size_t n = grid.size();
  std::size_t ft = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (count[i - 1] == 0 && count[i] > 0) {
      ft = i;
      break;
    }
  }
  if (ft == 0) return;

  const auto [lo, hi] = refine_onset(c, g, grid[ft - 1], grid[ft], hetero, c.tangency_tol);
  events.push_back({prefix + "first-tangency", lo, hi,
                    "flip count " + std::to_string(count[ft - 1]) + " -> " + std::to_string(count[ft]) +
                        " on the grid; onset bisected to " + fmt(hi - lo)});

  // ×-crossing: first constant-parity plateau of positive counts that persists.
  std::optional<std::size_t> start;
  for (std::size_t s = ft; s < n && !start;) {
    if (count[s] == 0) {
      ++s;
      continue;
    }
    std::size_t e = s;
    while (e + 1 < n && count[e + 1] > 0 && count[e + 1] % 2 == count[s] % 2 && !diag[e + 1].escaped) ++e;
    const bool ends_grid = e + 1 == n;
    const bool ends_escape = e + 1 < n && diag[e + 1].escaped && count[e + 1] > 0;
    if (grid[e] - grid[s] >= c.crossing_persistence - 1e-12 || ends_grid || ends_escape) start = s;
    s = e + 1;
  }

  const std::size_t xc = start.value_or(n - 1);
  for (std::size_t i = ft + 1; i < xc && i < n; ++i) {
    const bool back_to_zero = count[i] == 0 && count[i - 1] > 0;
    const bool parity = count[i] > 0 && count[i - 1] > 0 && count[i] % 2 != count[i - 1] % 2;
    if (back_to_zero || parity) {
      events.push_back({prefix + "tangency", grid[i - 1], grid[i],
                        "flip count " + std::to_string(count[i - 1]) + " -> " + std::to_string(count[i])});
    }
  }
  if (start) {
    const std::size_t s = *start;
    events.push_back({prefix + "x-crossing", grid[s - 1], grid[s],
                      "flip count " + std::to_string(count[s - 1]) + " -> " + std::to_string(count[s]) +
                          ", parity " + (count[s] % 2 ? "odd" : "even") + " from here on"});
  } else {
    events.push_back({prefix + "x-crossing", grid[n - 2], grid[n - 1],
                      "no persistent constant-parity plateau before the grid end", true});
  }
}

}  // namespace

std::vector<ScanEvent> extract_events(const ScanConfig& c, const std::vector<double>& grid,
                                      const std::vector<SigmaDiagnostics>& diag) {
  std::vector<ScanEvent> events;
  const ScanGeometry g = scan_geometry(c);
  const std::size_t n = grid.size();
  if (n < 2) return events;

  // Neimark–Sacker at the cell center.
  {
    double r_prev = center_radius(c, g, grid[0]);
    for (std::size_t i = 1; i < n; ++i) {
      const double r = center_radius(c, g, grid[i]);
      if (r_prev < 1.0 && r >= 1.0) {
        double lo = grid[i - 1], hi = grid[i];
        while (hi - lo > c.ns_tol) {
          const double mid = 0.5 * (lo + hi);
          (center_radius(c, g, mid) < 1.0 ? lo : hi) = mid;
        }
        const double closed = ns_threshold(model_at(c, grid[i]), g.center_x);
        events.push_back({"neimark-sacker", lo, hi,
                          "center x=" + fmt(g.center_x) + ", closed form " + fmt(closed) +
                              ", |difference| " + fmt(std::abs(0.5 * (lo + hi) - closed)),
                          !(closed >= lo - c.ns_tol && closed <= hi + c.ns_tol)});
        break;
      }
      r_prev = r;
    }
  }

  std::vector<int> homo(n), het(n);
  for (std::size_t i = 0; i < n; ++i) {
    homo[i] = diag[i].flip_count;
    het[i] = diag[i].hetero_flip_count.value_or(0);
  }
  tangency_events(c, g, grid, diag, homo, false, events);
  if (c.variant == MapVariant::ModifiedGilet) tangency_events(c, g, grid, diag, het, true, events);

  // Onsets that cannot be separated are unresolved.
  ScanEvent* a = nullptr;
  ScanEvent* b = nullptr;
  for (auto& e : events) {
    if (e.kind == "first-tangency") a = &e;
    if (e.kind == "heteroclinic-first-tangency") b = &e;
  }
  if (a && b && a->sigma_low < b->sigma_high && b->sigma_low < a->sigma_high) {
    a->unresolved = b->unresolved = true;
  }

  // Crisis: escape from R, or a bounding-box jump over half the previous
  // diagonal once the attractor is macroscopic.
  const double floor_diag = 0.1 * scan_rectangle(c, model_at(c, grid[0])).diagonal();
  const ScanEvent* xc = nullptr;
  for (const auto& e : events) {
    if (e.kind == "x-crossing" || e.kind == "heteroclinic-x-crossing") xc = xc ? xc : &e;
  }
  const double xc_sigma = xc && !xc->unresolved ? xc->sigma_high : 2.0;
  for (std::size_t i = 1; i < n; ++i) {
    std::string why;
    if (diag[i].escaped && !diag[i - 1].escaped) {
      why = "orbit leaves the rectangle";
    } else if (!diag[i].escaped && !diag[i - 1].escaped) {
      const double d0 = diag[i - 1].bbox.diagonal(), d1 = diag[i].bbox.diagonal();
      if (d0 >= floor_diag && std::abs(d1 - d0) > 0.5 * d0) {
        why = "bounding-box diagonal " + fmt(d0) + " -> " + fmt(d1);
      }
    }
    if (!why.empty()) {
      if (grid[i] > xc_sigma) why += "; b1 proxy";
      events.push_back({"crisis", grid[i - 1], grid[i], why});
      break;
    }
  }

  std::stable_sort(events.begin(), events.end(),
                   [](const ScanEvent& x, const ScanEvent& y) { return x.sigma_high < y.sigma_high; });
  return events;
}

ScanResult detect_events(const ScanConfig& c) {
  if (!(c.mu > 0.0 && c.mu < 1.0)) throw ContractError("mu must lie in (0,1)");
  ScanResult res{c.variant, c.mu, c.beta, c.seed, make_sigma_grid(c.sigma_lo, c.sigma_hi, c.resolution), {}, {}, {}};
  const std::size_t n = res.sigma_grid.size();
  res.diagnostics.resize(n);

  unsigned workers = c.threads > 0 ? static_cast<unsigned>(c.threads) : std::thread::hardware_concurrency();
  workers = std::clamp(workers, 1u, static_cast<unsigned>(n));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&]() {
    try {
      for (std::size_t i = next++; i < n; i = next++) res.diagnostics[i] = diagnose(c, res.sigma_grid[i]);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = n;
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  res.events = extract_events(c, res.sigma_grid, res.diagnostics);
  res.assumption_report = verify_assumptions(c, res.sigma_grid, res.diagnostics);
  return res;
}

}  // namespace gilet
