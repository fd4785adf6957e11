#include "gilet/potential.hpp"

#include <cmath>

namespace gilet {

WavePotential::WavePotential(double beta)
    : beta_(beta),
      a3_(std::cos(beta) / std::sqrt(std::numbers::pi)),
      a5_(std::sin(beta) / std::sqrt(std::numbers::pi)) {}

double WavePotential::value(double x) const {
  return a3_ * std::sin(3.0 * x) + a5_ * std::sin(5.0 * x);
}

double WavePotential::d1(double x) const {
  return 3.0 * a3_ * std::cos(3.0 * x) + 5.0 * a5_ * std::cos(5.0 * x);
}

double WavePotential::d2(double x) const {
  return -9.0 * a3_ * std::sin(3.0 * x) - 25.0 * a5_ * std::sin(5.0 * x);
}

double WavePotential::d3(double x) const {
  return -27.0 * a3_ * std::cos(3.0 * x) - 125.0 * a5_ * std::cos(5.0 * x);
}

double WavePotential::capped(double x) const {
  if (std::abs(x) <= 0.4) return value(x);
  const double edge = value(0.4);
  if (x <= -0.6) return -3.0 * edge;
  if (x >= 0.6) return 3.0 * edge;
  return x < 0.0 ? (10.0 * x + 3.0) * edge : (10.0 * x - 3.0) * edge;
}

}  // namespace gilet
