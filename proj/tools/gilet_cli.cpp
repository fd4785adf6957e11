// gilet: fixed points, orbits, manifolds, slices, Lyapunov spectra, σ scans
// and SVG rendering for the walking-droplet map family.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>

#include "gilet/config.hpp"
#include "gilet/serialize.hpp"
#include "gilet/svg.hpp"

namespace fs = std::filesystem;
using namespace gilet;

namespace {

constexpr int kOk = 0;
constexpr int kConfig = 2;
constexpr int kUnresolved = 3;
constexpr int kIo = 4;

// Raw option values keyed by config key; only options given on the command
// line end up here, so they override the config file.
struct Raw {
  std::map<std::string, std::string> values;
  std::string config_file;
};

void add_option(CLI::App* cmd, Raw& raw, const std::string& flag, const std::string& key, const std::string& help) {
  cmd->add_option_function<std::string>(
      "--" + flag, [&raw, key](const std::string& v) { raw.values[key] = v; }, help);
}

void add_common(CLI::App* cmd, Raw& raw) {
  cmd->add_option("--config", raw.config_file, "key=value configuration file");
  add_option(cmd, raw, "map", "map", "gilet | modified-gilet | ext3d-diagonal | ext3d-coupled");
  add_option(cmd, raw, "mu", "mu", "damping μ in (0,1)");
  add_option(cmd, raw, "beta", "beta", "potential angle β (radians)");
  add_option(cmd, raw, "out-dir", "out_dir", "output directory (default $GILET_OUT_DIR or .)");
  add_option(cmd, raw, "json", "json", "write JSON (true/false)");
  add_option(cmd, raw, "csv", "csv", "write CSV (true/false)");
  add_option(cmd, raw, "svg", "svg", "write SVG (true/false)");
}

RunConfig resolve(const Raw& raw) {
  RunConfig cfg;
  cfg.out_dir = default_out_dir();
  if (!raw.config_file.empty()) {
    for (const auto& [k, v] : read_config_file(raw.config_file)) apply_setting(cfg, k, v);
  }
  for (const auto& [k, v] : raw.values) apply_setting(cfg, k, v);
  validate(cfg);
  return cfg;
}

MapModel model_of(const RunConfig& c) { return {c.variant, c.mu, c.sigma, WavePotential(c.beta)}; }

StateVec initial_state(const RunConfig& c, const MapModel& m) {
  return m.dimension() == 3 ? StateVec(c.x0, c.y0, c.z0) : StateVec(c.x0, c.y0);
}

double saddle_x_of(const RunConfig& c) {
  if (c.saddle_x) return *c.saddle_x;
  if (c.variant == MapVariant::ModifiedGilet) return scan_geometry(default_scan_config(c.variant)).saddle_x;
  ScanConfig sc = default_scan_config(MapVariant::GiletPlanar);
  sc.beta = c.beta;
  return scan_geometry(sc).saddle_x;
}

class Output {
 public:
  explicit Output(const std::string& dir) : dir_(dir) { fs::create_directories(dir_); }

  std::unique_ptr<std::ofstream> stream(const std::string& name) const {
    const fs::path p = dir_ / fs::path(name).filename();
    auto out = std::make_unique<std::ofstream>(p);
    if (!*out) throw IoError("cannot write " + p.string());
    *out << std::setprecision(17);
    return out;
  }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream out(dir_ / fs::path(name).filename());
    if (!out) throw IoError("cannot write " + path(name));
    out << text;
    if (!out) throw IoError("failed writing " + (dir_ / name).string());
  }
  std::string path(const std::string& name) const { return (dir_ / fs::path(name).filename()).string(); }

 private:
  fs::path dir_;
};

std::vector<XY> to_xy(const std::vector<StateVec>& pts) {
  std::vector<XY> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.emplace_back(p.x(), p.y());
  return out;
}

int cmd_fixed_points(const RunConfig& c) {
  const MapModel m = model_of(c);
  const FixedPointSet set = enumerate_fixed_points(m, c.window);
  std::cout << std::left << std::setw(22) << "x" << std::setw(22) << "y";
  if (m.dimension() == 3) std::cout << std::setw(22) << "z";
  std::cout << std::setw(15) << "class" << std::setw(16) << "family" << "max|lambda|\n";
  for (const auto& p : set.points) {
    std::cout << std::setprecision(12);
    for (double v : p.location.coords()) std::cout << std::setw(22) << v;
    std::cout << std::setw(15) << to_string(p.classification) << std::setw(16) << to_string(p.family)
              << p.spectral_radius() << '\n';
  }
  const Output out(c.out_dir);
  if (c.emit_json) out.write("fixed_points.json", fixed_points_to_json(m, set).dump(2) + "\n");
  if (c.emit_csv) write_fixed_points_csv(*out.stream("fixed_points.csv"), set);
  return kOk;
}

int cmd_orbit(const RunConfig& c) {
  const MapModel m = model_of(c);
  const OrbitDiagnostics d = run_orbit(m, initial_state(c, m), c.n_transient, c.n_keep);
  std::cout << "points " << d.attractor_sample.size() << (d.escaped ? " (escaped)" : "") << '\n';
  const Output out(c.out_dir);
  if (c.emit_csv) write_orbit_csv(*out.stream("orbit.csv"), d.attractor_sample);
  if (c.emit_json) {
    const Json j{{"schema", kSchemaVersion}, {"map", std::string(to_string(m.variant()))}, {"mu", m.mu()},
                 {"sigma", m.sigma()}, {"beta", m.potential().beta()}, {"points", d.attractor_sample.size()},
                 {"escaped", d.escaped}, {"bbox", bbox_to_json(d.bounding_box)}};
    out.write("orbit.json", j.dump(2) + "\n");
  }
  if (c.emit_svg) {
    SvgFigure fig;
    fig.title = "orbit";
    fig.layers.push_back({SvgLayer::Kind::Points, to_xy(d.attractor_sample), "#1f3b73", "orbit"});
    out.write("orbit.svg", render_svg(fig));
  }
  return kOk;
}

int cmd_manifold(const RunConfig& c) {
  const MapModel m = model_of(c);
  const FixedPointRecord saddle = critical_fixed_point(m, saddle_x_of(c));
  const ManifoldPolyline poly = trace_unstable(m, saddle, c.branch, c.budget);
  std::cout << "points " << poly.size() << ", generations " << poly.generations
            << (poly.truncated ? ", truncated" : "") << (poly.escaped ? ", escaped" : "")
            << (poly.unresolved ? ", unresolved" : "") << '\n';
  const Output out(c.out_dir);
  if (c.emit_csv) write_manifold_csv(*out.stream("manifold.csv"), poly);
  if (c.emit_json) {
    const Json j{{"schema", kSchemaVersion},
                 {"map", std::string(to_string(m.variant()))},
                 {"mu", m.mu()},
                 {"sigma", m.sigma()},
                 {"beta", m.potential().beta()},
                 {"saddle", std::vector<double>(saddle.location.coords().begin(), saddle.location.coords().end())},
                 {"branch", c.branch == Branch::Left ? "left" : "right"},
                 {"points", poly.size()},
                 {"generations", poly.generations},
                 {"max_spacing", poly.max_spacing()},
                 {"endpoint_arclength", poly.endpoint_arclength},
                 {"truncated", poly.truncated},
                 {"escaped", poly.escaped},
                 {"unresolved", poly.unresolved}};
    out.write("manifold.json", j.dump(2) + "\n");
  }
  if (c.emit_svg) {
    SvgFigure fig;
    fig.title = "unstable manifold";
    fig.stable_line_x = saddle.location.x();
    fig.layers.push_back({SvgLayer::Kind::Polyline, to_xy(poly.points), "#1f3b73", "manifold"});
    out.write("manifold.svg", render_svg(fig));
  }
  return kOk;
}

int cmd_slice(const RunConfig& c) {
  const MapModel m = model_of(c);
  const SliceRegion r = make_slice(m, saddle_x_of(c), c.side, c.width);
  std::cout << std::setprecision(12) << "x_hat " << r.x_hat << ", cusp_y " << r.cusp_y << ", width " << r.width
            << '\n';
  const Output out(c.out_dir);
  if (c.emit_csv) write_boundary_csv(*out.stream("slice_boundary.csv"), m, r);
  if (c.emit_json) {
    const Json j{{"schema", kSchemaVersion}, {"map", std::string(to_string(m.variant()))},
                 {"mu", m.mu()},           {"sigma", r.sigma},
                 {"x_hat", r.x_hat},        {"side", r.side == Side::Left ? "left" : "right"},
                 {"cusp_y", r.cusp_y},      {"width", r.width}};
    out.write("slice.json", j.dump(2) + "\n");
  }
  if (c.emit_svg) {
    SvgFigure fig;
    fig.title = "slice boundary";
    fig.stable_line_x = r.x_hat;
    fig.layers.push_back({SvgLayer::Kind::Polyline, to_xy(sample_boundary(m, r)), "#2a7a2a", "boundary"});
    out.write("slice.svg", render_svg(fig));
  }
  return kOk;
}

int cmd_lyapunov(const RunConfig& c) {
  const MapModel m = model_of(c);
  const LyapunovResult ly = lyapunov_spectrum(m, initial_state(c, m), c.lyapunov_n);
  std::cout << std::setprecision(10);
  if (!ly.valid) std::cout << "orbit escaped; spectrum invalid\n";
  for (double e : ly.exponents) std::cout << e << '\n';
  const Output out(c.out_dir);
  if (c.emit_json) {
    const Json j{{"schema", kSchemaVersion},
                 {"map", std::string(to_string(m.variant()))},
                 {"mu", m.mu()},
                 {"sigma", m.sigma()},
                 {"beta", m.potential().beta()},
                 {"n", c.lyapunov_n},
                 {"valid", ly.valid},
                 {"lyapunov", ly.valid ? Json(ly.exponents) : Json::array()},
                 {"mean_log_det", ly.valid ? Json(ly.mean_log_det) : Json(nullptr)}};
    out.write("lyapunov.json", j.dump(2) + "\n");
  }
  return kOk;
}

int cmd_scan(const RunConfig& c) {
  const ScanConfig sc = to_scan_config(c);
  const ScanResult r = detect_events(sc);
  for (const auto& e : r.events) {
    std::cout << std::left << std::setw(30) << e.kind << std::setprecision(9) << '[' << e.sigma_low << ", "
              << e.sigma_high << ']' << (e.unresolved ? " unresolved" : "") << "  " << e.evidence << '\n';
  }
  const Output out(c.out_dir);
  out.write("scan.json", scan_to_json(r, utc_timestamp()).dump(2) + "\n");
  if (c.spill_samples && c.emit_csv) {
    for (const auto& d : r.diagnostics) write_orbit_csv(*out.stream("sample_" + sigma_tag(d.sigma) + ".csv"), d.sample);
  }
  if (c.emit_svg) {
    SvgFigure fig;
    fig.title = "largest Lyapunov exponent vs sigma";
    SvgLayer le{SvgLayer::Kind::Points, {}, "#1f3b73", "lyapunov"};
    for (const auto& d : r.diagnostics) {
      if (d.lyapunov_valid && !d.lyapunov.empty()) le.xy.emplace_back(d.sigma, d.lyapunov.front());
    }
    fig.layers.push_back(std::move(le));
    out.write("scan.svg", render_svg(fig));
  }
  return r.has_unresolved() ? kUnresolved : kOk;
}

struct RenderArgs {
  std::vector<std::string> points, polylines;
  std::optional<double> line;
  std::string title;
  std::string out = "render.svg";
};

int cmd_render(const RunConfig& c, const RenderArgs& a) {
  SvgFigure fig;
  fig.title = a.title;
  fig.stable_line_x = a.line;
  static const char* palette[] = {"#1f3b73", "#c4561b", "#2a7a2a", "#7a2a7a", "#555555"};
  std::size_t k = 0;
  for (const auto& p : a.points) {
    fig.layers.push_back({SvgLayer::Kind::Points, read_xy_csv(p), palette[k++ % 5], fs::path(p).filename().string()});
  }
  for (const auto& p : a.polylines) {
    fig.layers.push_back({SvgLayer::Kind::Polyline, read_xy_csv(p), palette[k++ % 5], fs::path(p).filename().string()});
  }
  const Output out(c.out_dir);
  out.write(a.out, render_svg(fig));
  std::cout << out.path(a.out) << '\n';
  return kOk;
}

// "--window -2:-1" would otherwise be read as an option named "-2:-1".
std::vector<std::string> join_negative_values(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a.rfind("--", 0) == 0 && a.find('=') == std::string::npos && i + 1 < argc) {
      const std::string next = argv[i + 1];
      if (next.size() > 1 && next[0] == '-' && (std::isdigit(static_cast<unsigned char>(next[1])) || next[1] == '.')) {
        args.push_back(a + "=" + next);
        ++i;
        continue;
      }
    }
    args.push_back(a);
  }
  std::reverse(args.begin(), args.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Walking-droplet map explorer"};
  app.require_subcommand(1);
  Raw raw;
  RenderArgs render;

  auto* fp = app.add_subcommand("fixed-points", "enumerate and classify fixed points");
  add_common(fp, raw);
  add_option(fp, raw, "sigma", "sigma", "coupling σ in (0,1)");
  add_option(fp, raw, "window", "window", "x window lo:hi");

  auto* orbit = app.add_subcommand("orbit", "iterate one orbit");
  add_common(orbit, raw);
  for (const char* k : {"sigma", "x0", "y0", "z0", "transient", "keep"}) add_option(orbit, raw, k, k, k);

  auto* man = app.add_subcommand("manifold", "trace an unstable-manifold branch");
  add_common(man, raw);
  for (const char* k : {"sigma", "branch", "nu", "generations", "cap"}) add_option(man, raw, k, k, k);
  add_option(man, raw, "saddle-x", "saddle_x", "saddle abscissa (default: the cell saddle)");
  add_option(man, raw, "spacing-max", "spacing_max", "maximum point spacing");

  auto* sl = app.add_subcommand("slice", "slice boundary and cusp");
  add_common(sl, raw);
  for (const char* k : {"sigma", "side", "width"}) add_option(sl, raw, k, k, k);
  add_option(sl, raw, "saddle-x", "saddle_x", "anchor abscissa");

  auto* ly = app.add_subcommand("lyapunov", "Lyapunov spectrum of one orbit");
  add_common(ly, raw);
  for (const char* k : {"sigma", "x0", "y0", "z0"}) add_option(ly, raw, k, k, k);
  add_option(ly, raw, "n", "lyapunov_n", "iterates averaged");

  auto* scan = app.add_subcommand("scan", "σ scan with event detection");
  add_common(scan, raw);
  for (const char* k : {"resolution", "alpha", "transient", "keep", "nu", "generations", "cap", "seed", "threads",
                        "persistence"}) {
    add_option(scan, raw, k, k, k);
  }
  add_option(scan, raw, "sigma-range", "sigma_range", "lo:hi");
  add_option(scan, raw, "beta-margin", "beta_margin", "rectangle margin above |y_hat|");
  add_option(scan, raw, "spacing-max", "spacing_max", "manifold point spacing");
  add_option(scan, raw, "seed-count", "seed_count", "orbit seeds per σ");
  add_option(scan, raw, "tangency-tol", "tangency_tol", "bisection width for tangency onsets");
  add_option(scan, raw, "spill-samples", "spill_samples", "write per-σ attractor samples (true/false)");

  auto* rd = app.add_subcommand("render", "render CSV files to SVG");
  rd->add_option("--config", raw.config_file, "key=value configuration file");
  add_option(rd, raw, "out-dir", "out_dir", "output directory");
  rd->add_option("--points", render.points, "CSV with x,y columns drawn as points");
  rd->add_option("--polyline", render.polylines, "CSV with x,y columns drawn as a polyline");
  rd->add_option("--boundary", render.polylines, "slice boundary CSV");
  rd->add_option("--line", render.line, "abscissa of a vertical stable line");
  rd->add_option("--title", render.title, "figure title");
  rd->add_option("--out", render.out, "output file name");

  try {
    app.parse(join_negative_values(argc, argv));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    const RunConfig cfg = resolve(raw);
    if (*fp) return cmd_fixed_points(cfg);
    if (*orbit) return cmd_orbit(cfg);
    if (*man) return cmd_manifold(cfg);
    if (*sl) return cmd_slice(cfg);
    if (*ly) return cmd_lyapunov(cfg);
    if (*scan) return cmd_scan(cfg);
    if (*rd) return cmd_render(cfg, render);
  } catch (const ConfigError& e) {
    std::cerr << "config error (" << e.key() << "): " << e.what() << '\n';
    return kConfig;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const ContractError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kOk;
}
