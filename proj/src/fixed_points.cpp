#include "gilet/fixed_points.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace gilet {

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::Sink: return "sink";
    case Classification::SpiralSink: return "spiral-sink";
    case Classification::Saddle: return "saddle";
    case Classification::Source: return "source";
    case Classification::SpiralSource: return "spiral-source";
    case Classification::Nonhyperbolic: return "nonhyperbolic";
  }
  return "unknown";
}

std::string_view to_string(Family f) {
  switch (f) {
    case Family::CriticalPoint: return "critical-point";
    case Family::Zero: return "zero";
    case Family::Lifted3D: return "3d-z";
    case Family::Numeric: return "numeric";
  }
  return "unknown";
}

double FixedPointRecord::spectral_radius() const {
  double r = 0.0;
  for (const auto& e : eigen) r = std::max(r, std::abs(e.value));
  return r;
}

Classification classify(const std::vector<EigenPair>& eigen) {
  int expanding = 0, contracting = 0;
  bool complex_pair = false;
  for (const auto& e : eigen) {
    const double mod = std::abs(e.value);
    if (std::abs(mod - 1.0) < kHyperbolicityTol) return Classification::Nonhyperbolic;
    if (mod > 1.0) ++expanding; else ++contracting;
    if (e.value.imag() != 0.0) complex_pair = true;
  }
  if (expanding > 0 && contracting > 0) return Classification::Saddle;
  if (expanding == 0) return complex_pair ? Classification::SpiralSink : Classification::Sink;
  return complex_pair ? Classification::SpiralSource : Classification::Source;
}

namespace {

double residual_of(const MapModel& model, const StateVec& s) { return distance(model(s), s); }

// Jacobian that tolerates the seam lines of the modified map by nudging x.
Matrix smooth_jacobian(const MapModel& model, const StateVec& s) {
  try {
    return model.jacobian(s);
  } catch (const NonSmoothPoint&) {
    std::array<double, 3> c{s.x() + 1e-12, s.y(), s.dim() == 3 ? s.z() : 0.0};
    return model.jacobian(StateVec(std::span<const double>(c.data(), static_cast<std::size_t>(s.dim()))));
  }
}

// Solves m·d = r for d by Cramer's rule; returns false when singular.
bool solve(const Matrix& m, std::span<const double> r, std::array<double, 3>& d) {
  const double det = m.det();
  if (det == 0.0 || !std::isfinite(det)) return false;
  const int n = m.dim();
  for (int k = 0; k < n; ++k) {
    Matrix mk = m;
    for (int i = 0; i < n; ++i) mk(i, k) = r[static_cast<std::size_t>(i)];
    d[static_cast<std::size_t>(k)] = mk.det() / det;
  }
  return true;
}

template <class Fn, class DFn>
std::vector<double> scan_roots(Fn f, DFn df, Interval window) {
  std::vector<double> roots;
  if (!(window.hi > window.lo)) return roots;
  const double span = window.hi - window.lo;
  const auto steps = static_cast<long>(std::ceil(span / 1e-3));
  const double h = span / static_cast<double>(steps);

  auto polish = [&](double a, double b) {
    double fa = f(a);
    for (int i = 0; i < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++i) {
      const double m = 0.5 * (a + b);
      const double fm = f(m);
      if (fm == 0.0) return m;
      if ((fm < 0.0) == (fa < 0.0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    double x = 0.5 * (a + b);
    for (int i = 0; i < 5 && std::abs(f(x)) > 1e-12; ++i) {
      const double d = df(x);
      if (d == 0.0) break;
      x -= f(x) / d;
    }
    return x;
  };

  double x_prev = window.lo;
  double f_prev = f(x_prev);
  if (f_prev == 0.0) roots.push_back(x_prev);
  for (long i = 1; i <= steps; ++i) {
    const double x = i == steps ? window.hi : window.lo + static_cast<double>(i) * h;
    const double fx = f(x);
    if (fx == 0.0) {
      roots.push_back(x);
    } else if (f_prev != 0.0 && (fx < 0.0) != (f_prev < 0.0)) {
      roots.push_back(polish(x_prev, x));
    }
    x_prev = x;
    f_prev = fx;
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(), [](double a, double b) { return std::abs(a - b) < 1e-9; }),
              roots.end());
  return roots;
}

StateVec make_state(int dim, double x, double y, double z) {
  return dim == 2 ? StateVec(x, y) : StateVec(x, y, z);
}

}  // namespace

FixedPointRecord describe_fixed_point(const MapModel& model, const StateVec& s, Family family) {
  FixedPointRecord rec{s, residual_of(model, s), eigen_decompose(smooth_jacobian(model, s)),
                       Classification::Nonhyperbolic, family};
  rec.classification = classify(rec.eigen);
  return rec;
}

std::vector<double> find_critical_points(const WavePotential& potential, Interval window) {
  return scan_roots([&](double x) { return potential.d1(x); }, [&](double x) { return potential.d2(x); },
                    window);
}

std::vector<double> find_zeros(const WavePotential& potential, Interval window) {
  return scan_roots([&](double x) { return potential.value(x); }, [&](double x) { return potential.d1(x); },
                    window);
}

double solve_z_fixed(const WavePotential& potential, double x_m) {
  const double shift = potential.d1(x_m);
  auto g = [shift](double z) {
    const double s = std::sin(z + shift);
    return 2.0 * z - s * s;
  };
  double lo = 0.0, hi = 0.5;
  if (g(lo) == 0.0) return lo;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (std::abs(gm) <= 1e-15 || hi - lo < 1e-17) return mid;
    if (gm < 0.0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double ns_threshold(const MapModel& model, double x_m) {
  if (model.variant() == MapVariant::Extension3DCoupled) {
    throw ContractError("ns_threshold: the coupled 3-D map has no closed-form threshold");
  }
  const WavePotential& p = model.potential();
  if (std::abs(p.value(x_m)) > 1e-10) throw ContractError("ns_threshold: x_m is not a zero of the potential");
  const double slope = p.d1(x_m);
  if (slope == 0.0) throw std::domain_error("ns_threshold: undefined threshold, potential slope vanishes");
  const double mu = model.mu();
  const double sigma_ns = (1.0 - mu) / (mu * slope * slope);
  // At σ_NS: tr J = 1 + μ and det J = 1, so tr² − 4 det = (1 + μ)² − 4 < 0.
  const double tr = 1.0 + mu;
  if (!(tr * tr - 4.0 < 0.0)) throw std::logic_error("ns_threshold: eigenvalues are not a complex pair");
  return sigma_ns;
}

NewtonResult newton_fixed_point(const MapModel& model, StateVec seed) {
  const int n = model.dimension();
  StateVec s = seed;
  double res = residual_of(model, s);
  for (int iter = 0; iter < 50 && res > kFixedPointResidualTol; ++iter) {
    Matrix dg = smooth_jacobian(model, s);
    for (int i = 0; i < n; ++i) dg(i, i) -= 1.0;
    const StateVec fs = model(s);
    std::array<double, 3> rhs{};
    for (int i = 0; i < n; ++i) rhs[static_cast<std::size_t>(i)] = -(fs[i] - s[i]);
    std::array<double, 3> step{};
    if (!solve(dg, std::span<const double>(rhs.data(), static_cast<std::size_t>(n)), step)) break;

    double scale = 1.0;
    bool improved = false;
    for (int halving = 0; halving < 30; ++halving, scale *= 0.5) {
      std::array<double, 3> c{};
      for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = s[i] + scale * step[static_cast<std::size_t>(i)];
      if (!std::isfinite(c[0]) || !std::isfinite(c[1]) || !std::isfinite(c[2])) continue;
      const StateVec trial(std::span<const double>(c.data(), static_cast<std::size_t>(n)));
      const double r = residual_of(model, trial);
      if (r < res || r <= kFixedPointResidualTol) {
        s = trial;
        res = r;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return {s, res, res <= kFixedPointResidualTol};
}

FixedPointRecord critical_fixed_point(const MapModel& model, double x_k) {
  const WavePotential& p = model.potential();
  const double mu = model.mu();
  const double y = mu / (1.0 - mu) * p.value(x_k);
  const double z = model.variant() == MapVariant::Extension3DCoupled ? solve_z_fixed(p, x_k) : 0.0;
  const StateVec seed = make_state(model.dimension(), x_k, y, z);
  const NewtonResult nr = newton_fixed_point(model, seed);
  return describe_fixed_point(model, nr.converged ? nr.location : seed, Family::CriticalPoint);
}

FixedPointRecord zero_fixed_point(const MapModel& model, double x_m) {
  const double z =
      model.variant() == MapVariant::Extension3DCoupled ? solve_z_fixed(model.potential(), x_m) : 0.0;
  const StateVec seed = make_state(model.dimension(), x_m, 0.0, z);
  const NewtonResult nr = newton_fixed_point(model, seed);
  const Family family = model.variant() == MapVariant::Extension3DCoupled ? Family::Lifted3D : Family::Zero;
  return describe_fixed_point(model, nr.converged ? nr.location : seed, family);
}

FixedPointSet enumerate_fixed_points(const MapModel& model, Interval window) {
  FixedPointSet out;
  if (!(window.hi > window.lo)) return out;
  const WavePotential& p = model.potential();
  const bool modified = model.variant() == MapVariant::ModifiedGilet;

  Interval analytic = window;
  if (modified) {
    analytic.lo = std::max(analytic.lo, -0.4);
    analytic.hi = std::min(analytic.hi, 0.4);
  }

  auto accept = [&](const FixedPointRecord& rec) {
    if (rec.residual <= kFixedPointResidualTol) {
      out.points.push_back(rec);
    } else {
      ++out.dropped_seeds;
    }
  };

  if (analytic.hi > analytic.lo) {
    for (double xk : find_critical_points(p, analytic)) accept(critical_fixed_point(model, xk));
    for (double xm : find_zeros(p, analytic)) accept(zero_fixed_point(model, xm));
  }

  if (modified) {
    // Grid seeding on the ramp branches; the analytic families do not apply there.
    const double mu = model.mu();
    for (double x = std::max(window.lo, -0.6); x <= std::min(window.hi, 0.6); x += 1e-2) {
      if (std::abs(x) <= 0.4 || std::abs(x) >= 0.6) continue;
      const NewtonResult nr = newton_fixed_point(model, StateVec(x, mu / (1.0 - mu) * p.capped(x)));
      const double xf = nr.location.x();
      if (!nr.converged) {
        ++out.dropped_seeds;
        continue;
      }
      if (std::abs(xf) > 0.4 && std::abs(xf) < 0.6 && xf >= window.lo && xf <= window.hi) {
        out.points.push_back(describe_fixed_point(model, nr.location, Family::Numeric));
      }
    }
  }

  std::sort(out.points.begin(), out.points.end(), [](const FixedPointRecord& a, const FixedPointRecord& b) {
    if (a.location.x() != b.location.x()) return a.location.x() < b.location.x();
    return a.location.y() < b.location.y();
  });
  out.points.erase(std::unique(out.points.begin(), out.points.end(),
                               [](const FixedPointRecord& a, const FixedPointRecord& b) {
                                 return distance(a.location, b.location) < 1e-8;
                               }),
                   out.points.end());
  return out;
}

}  // namespace gilet
