#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "gilet/fixed_points.hpp"

namespace gilet {

/// Side of the saddle's stable manifold on which a branch starts.
enum class Branch { Left, Right };

inline int sign_of(Branch b) { return b == Branch::Left ? -1 : 1; }

/// Arclength-parameterized sample of one unstable-manifold branch. Points are
/// ordered away from the saddle: generation 0 is the seed fundamental domain,
/// generation k its k-th image. Consecutive generations share their junction
/// point, which is stored once.
struct ManifoldPolyline {
  std::vector<StateVec> points;
  std::vector<double> arclengths;
  std::vector<int> generation;        // per point
  std::vector<int> index_in_generation;
  Branch branch = Branch::Left;
  int generations = 0;
  FixedPointRecord saddle;
  std::vector<double> endpoint_arclength;  // s(e^n) for n = 0..generations
  bool truncated = false;
  bool escaped = false;
  /// Refinement stalled because the seed parameter ran out of resolution.
  bool unresolved = false;

  // Seed segment p + εv → F(p + εv) and the seed parameters of the newest
  // generation, needed to keep growing.
  StateVec seed_start{0.0, 0.0};
  StateVec seed_end{0.0, 0.0};
  std::vector<double> frontier_params;

  std::size_t size() const { return points.size(); }
  double max_spacing() const;
};

struct ManifoldBudget {
  double nu = 1e-4;
  double spacing_max = 1e-3;
  int generations = 30;
  std::size_t cap_points = 2'000'000;
};

/// Thrown when a manifold operation receives a non-saddle fixed point.
class NotASaddle : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a stable line is requested for a saddle whose stable manifold
/// has no vertical-line representation.
class NoClosedForm : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Unstable eigenvector (real, unit) of a saddle with its eigenvalue.
struct UnstableDirection {
  double lambda;
  std::vector<double> vector;
};
UnstableDirection unstable_direction(const FixedPointRecord& saddle);

/// n0 points on the segment from p + εv to F(p + εv), ε chosen so that the
/// segment length (λᵘ − 1)ε|v| stays below ν.
ManifoldPolyline seed_fundamental_domain(const MapModel& model, const FixedPointRecord& saddle, Branch branch,
                                         double nu = 1e-4, int n0 = 16);

/// Maps the newest generation forward until target_generations is reached,
/// inserting points by bisecting seed parameters (then mapping them through
/// the same number of generations) wherever neighbours are more than
/// spacing_max apart.
ManifoldPolyline grow_unstable(const MapModel& model, ManifoldPolyline poly, int target_generations,
                               double spacing_max, std::size_t cap_points);

/// Convenience: seed and grow in one call.
ManifoldPolyline trace_unstable(const MapModel& model, const FixedPointRecord& saddle, Branch branch,
                                const ManifoldBudget& budget);

/// The vertical stable manifold x = x̂ of a critical-point-type saddle.
struct StableLine {
  double x_hat;
  FixedPointRecord saddle;
};

/// Validates the line by checking that it maps into itself and contracts
/// toward ŷ at rate μ.
StableLine stable_line(const MapModel& model, const FixedPointRecord& saddle);

struct LineCrossing {
  std::size_t segment;  // index of the segment's first point
  StateVec point;
  int direction;        // +1 when x increases across the line
};

std::vector<LineCrossing> crossings_with_line(const ManifoldPolyline& poly, const StableLine& line);
std::vector<LineCrossing> crossings_with_line(const std::vector<StateVec>& points, double x_hat);

/// CSV: generation,index,x,y[,z],arclength
void write_manifold_csv(std::ostream& os, const ManifoldPolyline& poly);

/// Symmetric Hausdorff distance between two point sets (brute force on a grid
/// of buckets).
double hausdorff_distance(const std::vector<StateVec>& a, const std::vector<StateVec>& b);
/// One-sided: max over a of the distance to the nearest point of b.
double directed_hausdorff(const std::vector<StateVec>& a, const std::vector<StateVec>& b);

}  // namespace gilet
