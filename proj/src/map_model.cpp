#include "gilet/map_model.hpp"

#include <cmath>
#include <numbers>

namespace gilet {

std::string_view to_string(MapVariant v) {
  switch (v) {
    case MapVariant::GiletPlanar: return "gilet";
    case MapVariant::ModifiedGilet: return "modified-gilet";
    case MapVariant::Extension3DDiagonal: return "ext3d-diagonal";
    case MapVariant::Extension3DCoupled: return "ext3d-coupled";
  }
  return "unknown";
}

MapVariant parse_variant(std::string_view name) {
  if (name == "gilet") return MapVariant::GiletPlanar;
  if (name == "modified-gilet") return MapVariant::ModifiedGilet;
  if (name == "ext3d-diagonal") return MapVariant::Extension3DDiagonal;
  if (name == "ext3d-coupled") return MapVariant::Extension3DCoupled;
  throw ContractError("unknown map variant '" + std::string(name) + "'");
}

MapModel::MapModel(MapVariant variant, double mu, double sigma, WavePotential potential)
    : variant_(variant),
      mu_(mu),
      sigma_(sigma),
      potential_(potential),
      edge_value_(potential.value(0.4)),
      edge_slope_(potential.d1(0.4)) {
  if (!(mu > 0.0 && mu < 1.0)) throw ContractError("mu must lie in (0,1)");
  if (!(sigma > 0.0 && sigma < 1.0)) throw ContractError("sigma must lie in (0,1)");
}

int MapModel::dimension() const {
  return (variant_ == MapVariant::GiletPlanar || variant_ == MapVariant::ModifiedGilet) ? 2 : 3;
}

void MapModel::planar(double x, double y, double& xn, double& yn) const {
  if (variant_ != MapVariant::ModifiedGilet || std::abs(x) <= 0.4) {
    xn = x - sigma_ * potential_.d1(x) * y;
    yn = mu_ * (y + potential_.value(x));
    return;
  }
  // Outer branches. The shear uses the inner-seam slope Ψ′(±0.4) scaled by a
  // ramp that falls from 1 at |x| = 0.4 to 0 at |x| = 0.6, so the map stays
  // continuous across every seam.
  yn = mu_ * (y + potential_.capped(x));
  if (std::abs(x) >= 0.6) {
    xn = x;
    return;
  }
  const double ramp = x < 0.0 ? 1.0 + 5.0 * (x + 0.4) : 1.0 - 5.0 * (x - 0.4);
  xn = x - ramp * sigma_ * edge_slope_ * y;
}

StateVec MapModel::operator()(const StateVec& s) const {
  if (s.dim() != dimension()) throw ContractError("eval_map: state dimension does not match the map");
  double xn = 0.0, yn = 0.0;
  planar(s.x(), s.y(), xn, yn);
  switch (variant_) {
    case MapVariant::GiletPlanar:
    case MapVariant::ModifiedGilet:
      return {xn, yn};
    case MapVariant::Extension3DDiagonal:
      return {xn, yn, 0.8 * s.z()};
    case MapVariant::Extension3DCoupled: {
      const double sn = std::sin(s.z() + potential_.d1(s.x()));
      return {xn, yn, 0.8 * s.z() + 0.1 * sn * sn};
    }
  }
  throw ContractError("unreachable map variant");
}

Matrix MapModel::jacobian(const StateVec& s) const {
  if (s.dim() != dimension()) throw ContractError("jacobian: state dimension does not match the map");
  const double x = s.x(), y = s.y();
  const int n = dimension();
  Matrix j(n);

  if (variant_ == MapVariant::ModifiedGilet && std::abs(x) > 0.4) {
    const double ax = std::abs(x);
    if (ax == 0.6) throw NonSmoothPoint("modified map is not differentiable on |x| = 0.6");
    if (ax >= 0.6) {
      j(0, 0) = 1.0;
      j(1, 1) = mu_;
      return j;
    }
    const double ramp = x < 0.0 ? 1.0 + 5.0 * (x + 0.4) : 1.0 - 5.0 * (x - 0.4);
    const double ramp_d = x < 0.0 ? 5.0 : -5.0;
    j(0, 0) = 1.0 - ramp_d * sigma_ * edge_slope_ * y;
    j(0, 1) = -ramp * sigma_ * edge_slope_;
    j(1, 0) = mu_ * 10.0 * edge_value_;
    j(1, 1) = mu_;
    return j;
  }
  if (variant_ == MapVariant::ModifiedGilet && std::abs(x) == 0.4) {
    throw NonSmoothPoint("modified map is not differentiable on |x| = 0.4");
  }

  const double d1 = potential_.d1(x);
  j(0, 0) = 1.0 - sigma_ * potential_.d2(x) * y;
  j(0, 1) = -sigma_ * d1;
  j(1, 0) = mu_ * d1;
  j(1, 1) = mu_;
  if (variant_ == MapVariant::Extension3DDiagonal) {
    j(2, 2) = 0.8;
  } else if (variant_ == MapVariant::Extension3DCoupled) {
    // d/du [0.1 sin²u] = 0.1 sin 2u, u = z + Ψ′(x)
    const double w = 0.1 * std::sin(2.0 * (s.z() + d1));
    j(2, 0) = w * potential_.d2(x);
    j(2, 2) = 0.8 + w;
  }
  return j;
}

StateVec symmetry_conjugate(const StateVec& s) {
  if (s.dim() != 2) throw ContractError("symmetry_conjugate expects a planar state");
  return {-std::numbers::pi - s.x(), s.y()};
}

}  // namespace gilet
