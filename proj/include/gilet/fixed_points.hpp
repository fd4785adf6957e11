#pragma once

#include <string_view>
#include <vector>

#include "gilet/eigen.hpp"
#include "gilet/map_model.hpp"

namespace gilet {

struct Interval {
  double lo;
  double hi;
};

enum class Classification { Sink, SpiralSink, Saddle, Source, SpiralSource, Nonhyperbolic };
enum class Family { CriticalPoint, Zero, Lifted3D, Numeric };

std::string_view to_string(Classification c);
std::string_view to_string(Family f);

inline constexpr double kHyperbolicityTol = 1e-9;
inline constexpr double kFixedPointResidualTol = 1e-10;

struct FixedPointRecord {
  StateVec location{0.0, 0.0};
  double residual = 0.0;
  std::vector<EigenPair> eigen;  // descending modulus
  Classification classification = Classification::Nonhyperbolic;
  Family family = Family::Numeric;

  /// Largest eigenvalue modulus.
  double spectral_radius() const;
};

/// Saddle iff exactly one modulus exceeds 1; spiral variants for non-real pairs.
Classification classify(const std::vector<EigenPair>& eigen);
inline Classification classify(const FixedPointRecord& r) { return classify(r.eigen); }

/// Fills residual, eigen data and classification for a candidate location.
FixedPointRecord describe_fixed_point(const MapModel& model, const StateVec& s, Family family);

/// Roots of Ψ′ in the window (sign-change scan at step ≤ 1e−3, then bisection
/// and Newton to |Ψ′| ≤ 1e−12). Sorted ascending.
std::vector<double> find_critical_points(const WavePotential& potential, Interval window);
/// Roots of Ψ in the window, same procedure.
std::vector<double> find_zeros(const WavePotential& potential, Interval window);

/// Root of 2z = sin²(z + Ψ′(x_m)) in [0, 1/2].
double solve_z_fixed(const WavePotential& potential, double x_m);

/// σ at which the complex pair of the Jacobian at the zero-type point (x_m, 0)
/// of the planar Gilet map reaches modulus one: (1 − μ) / (μ Ψ′(x_m)²).
double ns_threshold(const MapModel& model, double x_m);

struct FixedPointSet {
  std::vector<FixedPointRecord> points;  // sorted by x
  int dropped_seeds = 0;                 // Newton failures
};

struct NewtonResult {
  StateVec location{0.0, 0.0};
  double residual;
  bool converged;
};

/// Damped Newton on F(s) − s: at most 50 steps, step halved while the residual
/// grows. Converged means residual ≤ 1e−10.
NewtonResult newton_fixed_point(const MapModel& model, StateVec seed);

/// Fixed points with x in the window: the critical-point and zero families
/// (lifted to 3-D where applicable), Newton-polished and classified. For the
/// modified map the families are restricted to |x| ≤ 0.4 and supplemented by
/// grid seeding on 0.4 < |x| < 0.6; the fixed-point continuum on |x| ≥ 0.6 is
/// not enumerated.
FixedPointSet enumerate_fixed_points(const MapModel& model, Interval window);

/// The critical-point-type fixed point (x_k, μ/(1−μ) Ψ(x_k)[, 0]) for a root
/// x_k of Ψ′, Newton-polished.
FixedPointRecord critical_fixed_point(const MapModel& model, double x_k);
/// The zero-type fixed point (x_m, 0[, z_m]).
FixedPointRecord zero_fixed_point(const MapModel& model, double x_m);

}  // namespace gilet
