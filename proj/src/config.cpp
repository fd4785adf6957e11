#include "gilet/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

namespace gilet {

namespace {

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key, key + " must be a number, got '" + v + "'");
  }
  if (pos != v.size() || !std::isfinite(d)) throw ConfigError(key, key + " must be a number, got '" + v + "'");
  return d;
}

long to_long(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  long n = 0;
  try {
    n = std::stol(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key, key + " must be an integer, got '" + v + "'");
  }
  if (pos != v.size()) throw ConfigError(key, key + " must be an integer, got '" + v + "'");
  return n;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError(key, key + " must be true or false, got '" + v + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  using Setter = std::function<void(const std::string&)>;
  const std::map<std::string, Setter> setters{
      {"map",
       [&](const std::string& v) {
         try {
           cfg.variant = parse_variant(v);
         } catch (const ContractError& e) {
           throw ConfigError(key, e.what());
         }
       }},
      {"mu", [&](const std::string& v) { cfg.mu = to_double(key, v); }},
      {"beta", [&](const std::string& v) { cfg.beta = to_double(key, v); }},
      {"sigma", [&](const std::string& v) { cfg.sigma = to_double(key, v); }},
      {"sigma_lo", [&](const std::string& v) { cfg.sigma_lo = to_double(key, v); }},
      {"sigma_hi", [&](const std::string& v) { cfg.sigma_hi = to_double(key, v); }},
      {"sigma_range",
       [&](const std::string& v) {
         const auto colon = v.find(':');
         if (colon == std::string::npos) throw ConfigError(key, "sigma_range must be lo:hi");
         cfg.sigma_lo = to_double(key, v.substr(0, colon));
         cfg.sigma_hi = to_double(key, v.substr(colon + 1));
       }},
      {"resolution", [&](const std::string& v) { cfg.resolution = to_double(key, v); }},
      {"alpha", [&](const std::string& v) { cfg.alpha = to_double(key, v); }},
      {"beta_margin", [&](const std::string& v) { cfg.beta_margin = to_double(key, v); }},
      {"window",
       [&](const std::string& v) {
         const auto colon = v.find(':', v.empty() ? 0 : 1);
         if (colon == std::string::npos) throw ConfigError(key, "window must be lo:hi");
         cfg.window = {to_double(key, v.substr(0, colon)), to_double(key, v.substr(colon + 1))};
       }},
      {"transient", [&](const std::string& v) { cfg.n_transient = to_long(key, v); }},
      {"keep", [&](const std::string& v) { cfg.n_keep = to_long(key, v); }},
      {"lyapunov_n", [&](const std::string& v) { cfg.lyapunov_n = to_long(key, v); }},
      {"nu", [&](const std::string& v) { cfg.budget.nu = to_double(key, v); }},
      {"spacing_max", [&](const std::string& v) { cfg.budget.spacing_max = to_double(key, v); }},
      {"generations", [&](const std::string& v) { cfg.budget.generations = static_cast<int>(to_long(key, v)); }},
      {"cap", [&](const std::string& v) { cfg.budget.cap_points = static_cast<std::size_t>(to_long(key, v)); }},
      {"saddle_x", [&](const std::string& v) { cfg.saddle_x = to_double(key, v); }},
      {"branch",
       [&](const std::string& v) {
         if (v != "left" && v != "right") throw ConfigError(key, "branch must be left or right");
         cfg.branch = v == "left" ? Branch::Left : Branch::Right;
       }},
      {"side",
       [&](const std::string& v) {
         if (v != "left" && v != "right") throw ConfigError(key, "side must be left or right");
         cfg.side = v == "left" ? Side::Left : Side::Right;
       }},
      {"width", [&](const std::string& v) { cfg.width = to_double(key, v); }},
      {"x0", [&](const std::string& v) { cfg.x0 = to_double(key, v); }},
      {"y0", [&](const std::string& v) { cfg.y0 = to_double(key, v); }},
      {"z0", [&](const std::string& v) { cfg.z0 = to_double(key, v); }},
      {"out_dir", [&](const std::string& v) { cfg.out_dir = v; }},
      {"seed", [&](const std::string& v) { cfg.seed = static_cast<std::uint64_t>(to_long(key, v)); }},
      {"seed_count", [&](const std::string& v) { cfg.seed_count = static_cast<int>(to_long(key, v)); }},
      {"threads", [&](const std::string& v) { cfg.threads = static_cast<int>(to_long(key, v)); }},
      {"persistence", [&](const std::string& v) { cfg.crossing_persistence = to_double(key, v); }},
      {"tangency_tol", [&](const std::string& v) { cfg.tangency_tol = to_double(key, v); }},
      {"json", [&](const std::string& v) { cfg.emit_json = to_bool(key, v); }},
      {"csv", [&](const std::string& v) { cfg.emit_csv = to_bool(key, v); }},
      {"svg", [&](const std::string& v) { cfg.emit_svg = to_bool(key, v); }},
      {"spill_samples", [&](const std::string& v) { cfg.spill_samples = to_bool(key, v); }},
  };
  const auto it = setters.find(key);
  if (it == setters.end()) throw ConfigError(key, "unknown key '" + key + "'");
  it->second(trim(value));
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open config file " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno), path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

void validate(const RunConfig& c) {
  auto require = [](bool ok, const char* key, const char* msg) {
    if (!ok) throw ConfigError(key, msg);
  };
  require(c.mu > 0.0 && c.mu < 1.0, "mu", "mu must lie in (0,1)");
  require(c.sigma > 0.0 && c.sigma < 1.0, "sigma", "sigma must lie in (0,1)");
  require(std::isfinite(c.beta), "beta", "beta must be finite");
  if (c.sigma_lo) require(*c.sigma_lo > 0.0 && *c.sigma_lo < 1.0, "sigma_lo", "sigma_lo must lie in (0,1)");
  if (c.sigma_hi) require(*c.sigma_hi > 0.0 && *c.sigma_hi < 1.0, "sigma_hi", "sigma_hi must lie in (0,1)");
  if (c.sigma_lo && c.sigma_hi) require(*c.sigma_lo <= *c.sigma_hi, "sigma_range", "sigma_lo must not exceed sigma_hi");
  require(c.resolution >= 1e-5 && c.resolution < 1.0, "resolution", "resolution must lie in [1e-5, 1)");
  require(c.alpha > 0.0, "alpha", "alpha must be positive");
  require(c.beta_margin > 0.0, "beta_margin", "beta_margin must be positive");
  require(c.window.lo <= c.window.hi, "window", "window must satisfy lo <= hi");
  require(c.n_transient >= 0, "transient", "transient must be non-negative");
  require(c.n_keep >= 0, "keep", "keep must be non-negative");
  require(c.lyapunov_n >= 1000, "lyapunov_n", "lyapunov_n must be at least 1000");
  require(c.budget.nu > 0.0 && c.budget.nu < 0.1, "nu", "nu must lie in (0, 0.1)");
  require(c.budget.spacing_max > 0.0, "spacing_max", "spacing_max must be positive");
  require(c.budget.generations >= 0 && c.budget.generations <= 200, "generations", "generations must lie in [0, 200]");
  require(c.budget.cap_points >= 16, "cap", "cap must be at least 16");
  require(c.seed_count >= 1, "seed_count", "seed_count must be at least 1");
  require(c.threads >= 0, "threads", "threads must be non-negative");
  require(c.crossing_persistence >= 0.0, "persistence", "persistence must be non-negative");
  require(c.tangency_tol > 0.0, "tangency_tol", "tangency_tol must be positive");
  require(!c.out_dir.empty(), "out_dir", "out_dir must not be empty");
}

ScanConfig to_scan_config(const RunConfig& r) {
  ScanConfig c = default_scan_config(r.variant);
  c.mu = r.mu;
  c.beta = r.beta;
  if (r.sigma_lo) c.sigma_lo = *r.sigma_lo;
  if (r.sigma_hi) c.sigma_hi = *r.sigma_hi;
  c.resolution = r.resolution;
  c.alpha = r.alpha;
  c.beta_margin = r.beta_margin;
  c.n_transient = r.n_transient;
  c.n_keep = std::max(r.n_keep, 1000L);
  c.budget = r.budget;
  c.seed = r.seed;
  c.seed_count = r.seed_count;
  c.threads = r.threads;
  c.crossing_persistence = r.crossing_persistence;
  c.tangency_tol = r.tangency_tol;
  c.keep_samples = r.spill_samples;
  return c;
}

std::string default_out_dir() {
  const char* env = std::getenv("GILET_OUT_DIR");
  return env && *env ? env : ".";
}

}  // namespace gilet
