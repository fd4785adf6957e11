#pragma once

#include <numbers>

namespace gilet {

/// The odd, 2π-periodic wave potential
///   Ψ(x) = (cos β · sin 3x + sin β · sin 5x) / √π
/// together with its first two derivatives and the capped variant Ψ̃ used by
/// the modified map.
class WavePotential {
 public:
  explicit WavePotential(double beta = std::numbers::pi / 3.0);

  double beta() const { return beta_; }

  double value(double x) const;
  double d1(double x) const;
  double d2(double x) const;
  double d3(double x) const;

  /// Ψ̃: Ψ on |x| ≤ 0.4, linear ramps (10x ± 3)Ψ(0.4) on 0.4 < |x| < 0.6 and
  /// the constants ±3Ψ(0.4) beyond.
  double capped(double x) const;

 private:
  double beta_;
  double a3_;  // cos β / √π
  double a5_;  // sin β / √π
};

inline double psi(const WavePotential& p, double x) { return p.value(x); }
inline double psi_d1(const WavePotential& p, double x) { return p.d1(x); }
inline double psi_d2(const WavePotential& p, double x) { return p.d2(x); }
inline double psi_tilde(const WavePotential& p, double x) { return p.capped(x); }

}  // namespace gilet
