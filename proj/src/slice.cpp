#include "gilet/slice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gilet/fixed_points.hpp"

namespace gilet {

double cusp_height(const MapModel& model, double x_hat) {
  const double d2 = model.potential().d2(x_hat);
  if (d2 == 0.0) throw DegenerateCusp("cusp_height: second derivative vanishes at the anchor");
  return 1.0 / (model.sigma() * d2);
}

double default_slice_width(const MapModel& model, double x_hat, Side side) {
  const double dir = sign_of(side);
  const double reach = 3.5;
  const Interval window = dir < 0 ? Interval{x_hat - reach, x_hat - 1e-6} : Interval{x_hat + 1e-6, x_hat + reach};
  double nearest = reach;
  for (double r : find_critical_points(model.potential(), window)) {
    if (std::abs(r - x_hat) > 1e-6) nearest = std::min(nearest, std::abs(r - x_hat));
  }
  return 0.99 * nearest;
}

SliceRegion make_slice(const MapModel& model, double x_hat, Side side, double width) {
  if (std::abs(model.potential().d1(x_hat)) > 1e-10) {
    throw ContractError("make_slice: anchor is not a root of the potential slope");
  }
  if (!(width > 0.0)) width = default_slice_width(model, x_hat, side);
  return {x_hat, model.sigma(), side, cusp_height(model, x_hat), width};
}

double slice_boundary(const MapModel& model, double x_hat, double x) {
  if (x == x_hat) throw ContractError("slice_boundary: x must differ from the anchor");
  const double d1 = model.potential().d1(x);
  if (d1 == 0.0) throw PoleError("slice_boundary: pole of the boundary curve");
  return (x - x_hat) / (model.sigma() * d1);
}

std::vector<StateVec> sample_boundary(const MapModel& model, const SliceRegion& region, double h) {
  std::vector<StateVec> out;
  const double dir = sign_of(region.side);
  const auto n = static_cast<long>(std::floor(region.width / h));
  out.reserve(static_cast<std::size_t>(n));
  for (long k = 1; k <= n; ++k) {
    const double x = region.x_hat + dir * static_cast<double>(k) * h;
    try {
      out.emplace_back(x, slice_boundary(model, region.x_hat, x));
    } catch (const PoleError&) {
      break;
    }
  }
  return out;
}

bool in_slice(const MapModel& model, const SliceRegion& region, const StateVec& q) {
  const double d = q.x() - region.x_hat;
  if (d == 0.0 || std::abs(d) > region.width) return false;
  if ((d < 0.0) != (region.side == Side::Left)) return false;
  const double dn = model(q).x() - region.x_hat;
  return dn != 0.0 && ((dn < 0.0) != (d < 0.0));
}

int det_sign(const MapModel& model, const StateVec& q) {
  const double det = model.jacobian(q).det();
  if (std::abs(det) <= 1e-12) return 0;
  return det > 0.0 ? 1 : -1;
}

double distance_to_slice(const MapModel& model, const std::vector<StateVec>& sample, const SliceRegion& region) {
  if (sample.empty()) throw ContractError("distance_to_slice: empty sample");
  for (const auto& q : sample) {
    if (in_slice(model, region, q)) return 0.0;
  }
  // The boundary is a graph over x, so samples are ordered by x and the search
  // around each query can stop once the horizontal gap alone exceeds the best.
  std::vector<StateVec> curve = sample_boundary(model, region);
  if (region.side == Side::Left) std::reverse(curve.begin(), curve.end());
  std::vector<double> xs;
  xs.reserve(curve.size());
  for (const auto& c : curve) xs.push_back(c.x());

  const double up = model.potential().d2(region.x_hat) > 0.0 ? 1.0 : -1.0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& q : sample) {
    // Ray {x = x̂, (y − cusp)·up ≥ 0}.
    const double along = (q.y() - region.cusp_y) * up;
    const double dx = q.x() - region.x_hat;
    best = std::min(best, along >= 0.0 ? std::abs(dx) : std::hypot(dx, along));

    const auto it = std::lower_bound(xs.begin(), xs.end(), q.x());
    auto i = static_cast<std::ptrdiff_t>(it - xs.begin());
    for (auto j = i; j < static_cast<std::ptrdiff_t>(xs.size()); ++j) {
      if (xs[static_cast<std::size_t>(j)] - q.x() > best) break;
      best = std::min(best, distance(q, curve[static_cast<std::size_t>(j)]));
    }
    for (auto j = i - 1; j >= 0; --j) {
      if (q.x() - xs[static_cast<std::size_t>(j)] > best) break;
      best = std::min(best, distance(q, curve[static_cast<std::size_t>(j)]));
    }
  }
  return best;
}

int slice_runs(const MapModel& model, const SliceRegion& region, const std::vector<StateVec>& points) {
  int runs = 0;
  bool inside = false;
  for (const auto& p : points) {
    const bool now = in_slice(model, region, p);
    if (now && !inside) ++runs;
    inside = now;
  }
  return runs;
}

void write_boundary_csv(std::ostream& os, const MapModel& model, const SliceRegion& region, double h) {
  os << "x,y\n";
  const auto old = os.precision(17);
  for (const auto& p : sample_boundary(model, region, h)) os << p.x() << ',' << p.y() << '\n';
  os.precision(old);
}

}  // namespace gilet
