#pragma once

#include <array>
#include <optional>
#include <vector>

#include "gilet/map_model.hpp"

namespace gilet {

struct BoundingBox {
  int dim = 2;
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};
  bool empty = true;

  void extend(const StateVec& s);
  double diagonal() const;
};

struct OrbitDiagnostics {
  std::vector<StateVec> attractor_sample;
  std::vector<double> lyapunov;
  std::optional<double> rotation_number;
  double radial_spread = 0.0;
  BoundingBox bounding_box;
  bool escaped = false;
};

/// Discards n_transient iterates, then records n_keep. Escape (|coord| > 1e6
/// or non-finite) stops the run with the finite prefix kept.
OrbitDiagnostics run_orbit(const MapModel& model, StateVec s0, long n_transient, long n_keep);

struct LyapunovResult {
  std::vector<double> exponents;  // descending
  double mean_log_det = 0.0;
  bool valid = true;
};

/// Gram–Schmidt tangent dynamics over n iterates after a transient of
/// min(n/10, 10⁴).
LyapunovResult lyapunov_spectrum(const MapModel& model, StateVec s0, long n);

class DegenerateAngle : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Mean wrapped angular increment about center, in revolutions.
double rotation_number(const std::vector<StateVec>& sample, const StateVec& center);

/// max − min distance to center.
double centerset_spread(const std::vector<StateVec>& sample, const StateVec& center);

/// Jacobian, shifted by 1e−12 in x when the point sits on a seam.
Matrix jacobian_off_seam(const MapModel& model, const StateVec& s);

}  // namespace gilet
