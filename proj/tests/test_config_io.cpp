#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gilet/config.hpp"
#include "gilet/serialize.hpp"
#include "gilet/svg.hpp"

using namespace gilet;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "gilet_config_io";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

ScanResult sample_result() {
  ScanResult r{MapVariant::ModifiedGilet, 0.5, 1.0471975511965976, 7, {0.1, 0.1 + 1e-3}, {}, {}, {}};
  SigmaDiagnostics a;
  a.sigma = 0.1;
  a.lyapunov = {0.1234567890123456789, -0.75};
  a.mean_log_det = -0.6265432109876543;
  a.rotation_number = 0.3333333333333333;
  a.radial_spread = 1.0 / 3.0;
  a.delta = 2e-17;
  a.flip_count = 3;
  a.hetero_flip_count = 2;
  a.bbox.extend(StateVec(-0.1, 0.2));
  a.bbox.extend(StateVec(0.3, -0.4));
  SigmaDiagnostics b;
  b.sigma = 0.1 + 1e-3;
  b.lyapunov_valid = false;
  b.escaped = true;
  r.diagnostics = {a, b};
  r.events = {{"first-tangency", 0.1, 0.100000001, "flip count 0 -> 1", false},
              {"x-crossing", 0.1, 0.101, "none", true}};
  r.assumption_report.kappa_s = 0.5;
  r.assumption_report.kappa_u = 1.7;
  r.assumption_report.saddle = {{0.1, true, 0.5, 1.7, true}, {0.101, false, 0.0, 0.0, false}};
  r.assumption_report.gaps = {0.101};
  r.assumption_report.rotation_sign = {1, 0};
  return r;
}

}  // namespace

TEST_CASE("settings") {
  RunConfig c;
  apply_setting(c, "map", "modified-gilet");
  apply_setting(c, "mu", "0.8");
  apply_setting(c, "sigma_range", "0.05:0.2");
  apply_setting(c, "window", "-2:-1");
  apply_setting(c, "branch", "right");
  apply_setting(c, "svg", "true");
  apply_setting(c, "cap", "5000");
  apply_setting(c, "tangency_tol", "1e-6");
  CHECK(c.variant == MapVariant::ModifiedGilet);
  CHECK(c.mu == 0.8);
  CHECK(*c.sigma_lo == 0.05);
  CHECK(*c.sigma_hi == 0.2);
  CHECK(c.window.lo == -2.0);
  CHECK(c.window.hi == -1.0);
  CHECK(c.branch == Branch::Right);
  CHECK(c.emit_svg);
  CHECK(c.budget.cap_points == 5000);
  CHECK_NOTHROW(validate(c));
  const ScanConfig s = to_scan_config(c);
  CHECK(s.variant == MapVariant::ModifiedGilet);
  CHECK(s.sigma_lo == 0.05);
  CHECK(s.budget.cap_points == 5000);
  CHECK(s.tangency_tol == 1e-6);
}

TEST_CASE("malformed settings name the key") {
  RunConfig c;
  auto key_of = [&](const std::string& k, const std::string& v) {
    try {
      apply_setting(c, k, v);
    } catch (const ConfigError& e) {
      return e.key();
    }
    return std::string("none");
  };
  CHECK(key_of("colour", "red") == "colour");
  CHECK(key_of("mu", "half") == "mu");
  CHECK(key_of("mu", "0.5x") == "mu");
  CHECK(key_of("cap", "1.5") == "cap");
  CHECK(key_of("sigma_range", "0.3") == "sigma_range");
  CHECK(key_of("branch", "up") == "branch");
  CHECK(key_of("json", "maybe") == "json");
  CHECK(key_of("map", "henon") == "map");
}

TEST_CASE("validation") {
  auto failing_key = [](RunConfig c) {
    try {
      validate(c);
    } catch (const ConfigError& e) {
      return e.key();
    }
    return std::string("none");
  };
  RunConfig c;
  CHECK(failing_key(c) == "none");
  RunConfig bad = c;
  bad.mu = 1.0;
  CHECK(failing_key(bad) == "mu");
  bad = c;
  bad.sigma = 0.0;
  CHECK(failing_key(bad) == "sigma");
  bad = c;
  bad.sigma_lo = 0.6;
  bad.sigma_hi = 0.5;
  CHECK(failing_key(bad) == "sigma_range");
  bad = c;
  bad.resolution = 1e-7;
  CHECK(failing_key(bad) == "resolution");
  bad = c;
  bad.lyapunov_n = 10;
  CHECK(failing_key(bad) == "lyapunov_n");
  bad = c;
  bad.tangency_tol = 0.0;
  CHECK(failing_key(bad) == "tangency_tol");
  bad = c;
  bad.budget.nu = 0.5;
  CHECK(failing_key(bad) == "nu");
}

TEST_CASE("config file") {
  const fs::path p = scratch("run.cfg");
  write_file(p, "# scan settings\nmap = modified-gilet\n\nmu=0.5   \nsigma_range = 0.05:0.2 # trailing\n");
  const auto kv = read_config_file(p.string());
  CHECK(kv.size() == 3);
  CHECK(kv.at("map") == "modified-gilet");
  CHECK(kv.at("mu") == "0.5");
  CHECK(kv.at("sigma_range") == "0.05:0.2");
  // Flags are applied after the file and win.
  RunConfig c;
  for (const auto& [k, v] : kv) apply_setting(c, k, v);
  apply_setting(c, "mu", "0.7");
  CHECK(c.mu == 0.7);
  write_file(p, "mu 0.5\n");
  CHECK_THROWS_AS(read_config_file(p.string()), ConfigError);
  CHECK_THROWS_AS(read_config_file((fs::temp_directory_path() / "no_such_gilet.cfg").string()), std::exception);
}

TEST_CASE("scan JSON round trip") {
  const ScanResult r = sample_result();
  const Json j = scan_to_json(r, "2026-01-01T00:00:00Z");
  CHECK(j.at("schema") == kSchemaVersion);
  CHECK(j.at("map") == "modified-gilet");
  CHECK(j.at("diagnostics")[1].at("lyapunov").empty());
  CHECK(j.at("diagnostics")[1].at("rotation_number").is_null());
  CHECK(j.at("diagnostics")[1].at("bbox").is_null());
  CHECK(j.at("diagnostics")[0].at("hetero_flip_count") == 2);
  CHECK_FALSE(j.at("diagnostics")[1].contains("hetero_flip_count"));
  const ScanResult back = scan_from_json(Json::parse(j.dump(2)));
  CHECK(same_serialized_content(r, back));
  CHECK(back.diagnostics[0].lyapunov[0] == r.diagnostics[0].lyapunov[0]);
  CHECK(back.diagnostics[0].delta == 2e-17);
  CHECK(back.events[1].unresolved);
  CHECK(back.events[0].sigma_high == 0.100000001);
  ScanResult changed = back;
  changed.events[0].sigma_high = 0.100000002;
  CHECK_FALSE(same_serialized_content(r, changed));
  Json wrong = j;
  wrong["schema"] = 99;
  CHECK_THROWS_AS(scan_from_json(wrong), ContractError);
}

TEST_CASE("CSV writers") {
  std::ostringstream os;
  write_orbit_csv(os, {StateVec(1.0, 2.0), StateVec(3.0, 4.0)});
  CHECK(os.str().rfind("n,x,y\n0,1", 0) == 0);
  std::ostringstream os3;
  write_orbit_csv(os3, {StateVec(1.0, 2.0, 3.0)});
  CHECK(os3.str().rfind("n,x,y,z\n", 0) == 0);
  const MapModel m(MapVariant::GiletPlanar, 0.8, 0.5);
  const FixedPointSet set = enumerate_fixed_points(m, {-2.0, -1.0});
  std::ostringstream fp;
  write_fixed_points_csv(fp, set);
  CHECK(fp.str().rfind("x,y,residual,classification,family", 0) == 0);
  const Json fj = fixed_points_to_json(m, set);
  CHECK(fj.dump().find("\"classification\"") != std::string::npos);
  CHECK(sigma_tag(0.5) == "0.500000");
  CHECK(utc_timestamp().back() == 'Z');
}

TEST_CASE("SVG rendering") {
  SvgFigure f;
  f.title = "orbit";
  f.layers.push_back({SvgLayer::Kind::Points, {{0.0, 0.0}, {1.0, 2.0}}, "#ff0000", "orbit"});
  f.layers.push_back({SvgLayer::Kind::Polyline, {{0.0, 1.0}, {1.0, 1.5}, {2.0, 0.0}}, "#0000ff", "manifold"});
  f.stable_line_x = 0.5;
  const std::string a = render_svg(f), b = render_svg(f);
  CHECK(a == b);
  CHECK(a.rfind("<svg", 0) == 0);
  CHECK(a.find("class=\"points\"") != std::string::npos);
  CHECK(a.find("class=\"polyline\"") != std::string::npos);
  CHECK(a.find("id=\"stable-line\"") != std::string::npos);
  CHECK(a.find("</svg>") != std::string::npos);
  SvgFigure empty;
  const std::string e = render_svg(empty);
  CHECK(e.find("<line") != std::string::npos);
  CHECK(e.find("class=\"points\"") == std::string::npos);
  const auto t = nice_ticks(0.0, 1.0);
  REQUIRE(t.size() >= 3);
  CHECK(t.front() >= 0.0);
  CHECK(t.back() <= 1.0 + 1e-12);
}

TEST_CASE("reading XY CSV") {
  const fs::path good = scratch("xy.csv");
  write_file(good, "n,x,y\n0,1.5,2.5\n1,-1,3e-2\n");
  const auto xy = read_xy_csv(good.string());
  REQUIRE(xy.size() == 2);
  CHECK(xy[1].first == -1.0);
  CHECK(xy[1].second == 0.03);
  const fs::path nohdr = scratch("nohdr.csv");
  write_file(nohdr, "a,b\n1,2\n");
  CHECK_THROWS_AS(read_xy_csv(nohdr.string()), IoError);
  const fs::path bad = scratch("bad.csv");
  write_file(bad, "x,y\n1,oops\n");
  CHECK_THROWS_AS(read_xy_csv(bad.string()), IoError);
  CHECK_THROWS_AS(read_xy_csv(scratch("missing.csv").string()), IoError);
}
