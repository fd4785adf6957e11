#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "gilet/fixed_points.hpp"
#include "gilet/scan.hpp"

namespace gilet {

/// Invalid configuration; the message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message) : std::runtime_error(message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct RunConfig {
  MapVariant variant = MapVariant::GiletPlanar;
  double mu = 0.5;
  double beta = std::numbers::pi / 3.0;
  double sigma = 0.5;
  std::optional<double> sigma_lo;  // unset: per-map scan default
  std::optional<double> sigma_hi;
  double resolution = 1e-3;
  double alpha = 0.9;
  double beta_margin = 0.6;
  Interval window{-2.0 * std::numbers::pi, 2.0 * std::numbers::pi};
  long n_transient = 10000;
  long n_keep = 10000;
  long lyapunov_n = 100000;
  ManifoldBudget budget{};
  std::optional<double> saddle_x;  // unset: per-map default saddle
  Branch branch = Branch::Left;
  Side side = Side::Left;
  double width = 0.0;  // ≤ 0: default slice width
  double x0 = -1.789;
  double y0 = 0.0;
  double z0 = 0.0;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  int seed_count = 1;
  int threads = 0;
  double crossing_persistence = 0.05;
  double tangency_tol = 1e-8;
  bool emit_json = true;
  bool emit_csv = true;
  bool emit_svg = false;
  bool spill_samples = false;
};

/// Applies one key=value setting; throws ConfigError on unknown keys or
/// malformed values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Reads key=value lines ('#' comments, blank lines allowed).
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Range checks against the module preconditions.
void validate(const RunConfig& cfg);

ScanConfig to_scan_config(const RunConfig& cfg);

/// Default output directory: $GILET_OUT_DIR, else ".".
std::string default_out_dir();

}  // namespace gilet
