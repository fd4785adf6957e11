#pragma once

#include <ostream>
#include <vector>

#include "gilet/map_model.hpp"

namespace gilet {

enum class Side { Left, Right };

inline int sign_of(Side s) { return s == Side::Left ? -1 : 1; }

/// Points near the stable line x = x̂ whose image lands on the other side of
/// the line. Bounded by the curve y = (x − x̂)/(σΨ′(x)), which has a cusp at
/// cusp_y on the line; vertically unbounded within the width window.
struct SliceRegion {
  double x_hat;
  double sigma;
  Side side;
  double cusp_y;
  double width;
};

class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DegenerateCusp : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// 1/(σΨ″(x̂)).
double cusp_height(const MapModel& model, double x_hat);

/// Distance from x̂ to the nearest other root of Ψ′ on the given side (the
/// first pole of the boundary curve), shrunk by 1%.
double default_slice_width(const MapModel& model, double x_hat, Side side);

/// Builds the region; width ≤ 0 selects default_slice_width.
SliceRegion make_slice(const MapModel& model, double x_hat, Side side, double width = 0.0);

/// y(x) = (x − x̂)/(σΨ′(x)).
double slice_boundary(const MapModel& model, double x_hat, double x);

/// Boundary samples (x, y(x)) at spacing h over the width window, nearest the
/// line first.
std::vector<StateVec> sample_boundary(const MapModel& model, const SliceRegion& region, double h = 1e-4);

/// q lies strictly on the region's side within the width window and its image
/// lies strictly on the other side of x = x̂.
bool in_slice(const MapModel& model, const SliceRegion& region, const StateVec& q);

/// Sign of det F′(q); |det| ≤ 1e−12 gives 0.
int det_sign(const MapModel& model, const StateVec& q);

/// 0 if some sample point is in the slice, otherwise the smallest distance to
/// the boundary curve (spacing 1e−4) or to the part of the line beyond the cusp.
double distance_to_slice(const MapModel& model, const std::vector<StateVec>& sample, const SliceRegion& region);

/// Number of maximal runs of consecutive points inside the slice.
int slice_runs(const MapModel& model, const SliceRegion& region, const std::vector<StateVec>& points);

/// CSV: x,y
void write_boundary_csv(std::ostream& os, const MapModel& model, const SliceRegion& region, double h = 1e-4);

}  // namespace gilet
