#pragma once

#include <string>
#include <string_view>

#include "gilet/potential.hpp"
#include "gilet/state.hpp"

namespace gilet {

enum class MapVariant {
  GiletPlanar,
  ModifiedGilet,
  Extension3DDiagonal,
  Extension3DCoupled,
};

std::string_view to_string(MapVariant v);
/// Accepts the CLI spellings: gilet, modified-gilet, ext3d-diagonal, ext3d-coupled.
MapVariant parse_variant(std::string_view name);

/// Raised when a Jacobian is requested exactly on a seam line of the modified map.
class NonSmoothPoint : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// One member of the map family with its parameters fixed.
///   GiletPlanar:          (x − σΨ′(x)y, μ(y + Ψ(x)))
///   ModifiedGilet:        Gilet on |x| ≤ 0.4, capped outside
///   Extension3DDiagonal:  planar part + 0.8z
///   Extension3DCoupled:   planar part + 0.8z + 0.1 sin²(z + Ψ′(x))
class MapModel {
 public:
  MapModel(MapVariant variant, double mu, double sigma, WavePotential potential = WavePotential{});

  MapVariant variant() const { return variant_; }
  double mu() const { return mu_; }
  double sigma() const { return sigma_; }
  const WavePotential& potential() const { return potential_; }
  int dimension() const;

  MapModel with_sigma(double sigma) const { return {variant_, mu_, sigma, potential_}; }

  StateVec operator()(const StateVec& s) const;
  Matrix jacobian(const StateVec& s) const;

 private:
  // Planar part of the map shared by all variants; writes (x', y').
  void planar(double x, double y, double& xn, double& yn) const;

  MapVariant variant_;
  double mu_;
  double sigma_;
  WavePotential potential_;
  double edge_value_;  // Ψ(0.4)
  double edge_slope_;  // Ψ′(0.4) = Ψ′(−0.4)
};

inline StateVec eval_map(const MapModel& m, const StateVec& s) { return m(s); }
inline Matrix jacobian(const MapModel& m, const StateVec& s) { return m.jacobian(s); }

/// Reflection about x = −π/2: S(x, y) = (−π − x, y). Conjugates the planar
/// Gilet map to itself.
StateVec symmetry_conjugate(const StateVec& s);

}  // namespace gilet
