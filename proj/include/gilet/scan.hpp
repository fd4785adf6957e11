#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "gilet/manifold.hpp"
#include "gilet/orbit.hpp"
#include "gilet/slice.hpp"

namespace gilet {

/// R_{α,β} = {|x − x_R| < α, |y| < |ŷ| + β}.
struct Rectangle {
  double x_lo, x_hi, y_lo, y_hi;
  bool contains(const StateVec& s) const;
  double diagonal() const;
};

struct ScanConfig {
  MapVariant variant = MapVariant::GiletPlanar;
  double mu = 0.5;
  double beta = std::numbers::pi / 3.0;
  double sigma_lo = 0.30;
  double sigma_hi = 0.75;
  double resolution = 1e-3;
  double alpha = 0.9;         // rectangle half-width
  double beta_margin = 0.6;   // rectangle margin above |ŷ|
  long n_transient = 10000;
  long n_keep = 10000;
  ManifoldBudget budget{};
  std::uint64_t seed = 1;
  int seed_count = 1;
  /// σ-length a constant-parity flip plateau must last to mark the ×-crossing
  /// (a plateau ended by escape or by the grid end also counts).
  double crossing_persistence = 0.05;
  double ns_tol = 1e-6;
  double tangency_tol = 1e-8;
  int threads = 0;  // 0: hardware concurrency
  bool keep_samples = false;
};

/// Variant-specific defaults: μ = 0.5 for both planar maps; σ ∈ [0.30, 0.75]
/// for the Gilet map, σ ∈ [0.05, 0.20] for the modified map.
ScanConfig default_scan_config(MapVariant variant);

/// The saddle, its partner (modified map) and the cell center a scan uses.
struct ScanGeometry {
  double saddle_x;
  std::optional<double> partner_x;
  double center_x;
};
ScanGeometry scan_geometry(const ScanConfig& config);

Rectangle scan_rectangle(const ScanConfig& config, const MapModel& model);

struct SigmaDiagnostics {
  double sigma = 0.0;
  std::vector<double> lyapunov;
  bool lyapunov_valid = true;
  double mean_log_det = 0.0;
  std::optional<double> rotation_number;
  double radial_spread = 0.0;
  double delta = 0.0;
  int flip_count = 0;
  std::optional<int> hetero_flip_count;
  bool escaped = false;
  BoundingBox bbox;
  std::size_t manifold_points = 0;
  bool manifold_truncated = false;
  std::vector<StateVec> sample;  // only with keep_samples
};

struct ScanEvent {
  std::string kind;
  double sigma_low;
  double sigma_high;
  std::string evidence;
  bool unresolved = false;
};

struct SaddleSample {
  double sigma;
  bool found;
  double lambda_s;
  double lambda_u;
  bool in_rectangle;
};

struct AssumptionReport {
  std::vector<SaddleSample> saddle;
  double kappa_s = 0.0;  // max λˢ over the grid
  double kappa_u = 0.0;  // min λᵘ over the grid
  std::vector<double> gaps;
  std::vector<double> delta_violations;
  std::vector<int> rotation_sign;
};

struct ScanResult {
  MapVariant variant;
  double mu;
  double beta;
  std::uint64_t seed;
  std::vector<double> sigma_grid;
  std::vector<SigmaDiagnostics> diagnostics;
  std::vector<ScanEvent> events;
  AssumptionReport assumption_report;

  bool has_unresolved() const;
  const ScanEvent* find(const std::string& kind) const;
};

/// sigma_lo, sigma_lo + resolution, ... ≤ sigma_hi.
std::vector<double> make_sigma_grid(double lo, double hi, double resolution);

/// Per-σ diagnostics at one grid point.
SigmaDiagnostics diagnose(const ScanConfig& config, double sigma);

AssumptionReport verify_assumptions(const ScanConfig& config, const std::vector<double>& sigma_grid,
                                    const std::vector<SigmaDiagnostics>& diagnostics);

/// Runs the per-σ diagnostics and brackets the events.
ScanResult detect_events(const ScanConfig& config);

/// Event extraction from finished diagnostics (exposed for testing).
std::vector<ScanEvent> extract_events(const ScanConfig& config, const std::vector<double>& sigma_grid,
                                      const std::vector<SigmaDiagnostics>& diagnostics);

}  // namespace gilet
