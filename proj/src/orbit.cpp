#include "gilet/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace gilet {

namespace {

bool out_of_bounds(const StateVec& s) {
  for (double c : s.coords()) {
    if (!(std::abs(c) <= 1e6)) return true;
  }
  return false;
}

}  // namespace

void BoundingBox::extend(const StateVec& s) {
  if (empty) {
    dim = s.dim();
    for (int i = 0; i < dim; ++i) lo[static_cast<std::size_t>(i)] = hi[static_cast<std::size_t>(i)] = s[i];
    empty = false;
    return;
  }
  for (int i = 0; i < dim; ++i) {
    lo[static_cast<std::size_t>(i)] = std::min(lo[static_cast<std::size_t>(i)], s[i]);
    hi[static_cast<std::size_t>(i)] = std::max(hi[static_cast<std::size_t>(i)], s[i]);
  }
}

double BoundingBox::diagonal() const {
  if (empty) return 0.0;
  double d = 0.0;
  for (int i = 0; i < dim; ++i) {
    const double w = hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)];
    d += w * w;
  }
  return std::sqrt(d);
}

Matrix jacobian_off_seam(const MapModel& model, const StateVec& s) {
  try {
    return model.jacobian(s);
  } catch (const NonSmoothPoint&) {
    std::array<double, 3> c{s.x() + 1e-12, s.y(), s.dim() == 3 ? s.z() : 0.0};
    return model.jacobian(StateVec(std::span<const double>(c.data(), static_cast<std::size_t>(s.dim()))));
  }
}

OrbitDiagnostics run_orbit(const MapModel& model, StateVec s0, long n_transient, long n_keep) {
  if (n_transient < 0 || n_keep < 0) throw ContractError("run_orbit: iterate counts must be non-negative");
  OrbitDiagnostics out;
  StateVec s = s0;
  // StateVec refuses non-finite entries, so an overflowing step surfaces as a
  // ContractError from the map and is treated as escape.
  auto step = [&]() {
    try {
      s = model(s);
    } catch (const ContractError&) {
      return false;
    }
    return !out_of_bounds(s);
  };
  for (long i = 0; i < n_transient; ++i) {
    if (!step()) {
      out.escaped = true;
      return out;
    }
  }
  out.attractor_sample.reserve(static_cast<std::size_t>(n_keep));
  for (long i = 0; i < n_keep; ++i) {
    if (i > 0 && !step()) {
      out.escaped = true;
      break;
    }
    out.attractor_sample.push_back(s);
    out.bounding_box.extend(s);
  }
  return out;
}

LyapunovResult lyapunov_spectrum(const MapModel& model, StateVec s0, long n) {
  if (n < 1000) throw ContractError("lyapunov_spectrum: n must be at least 1000");
  const int dim = model.dimension();
  LyapunovResult out;
  const long transient = std::min(n / 10, 10000L);
  StateVec s = s0;
  try {
    for (long i = 0; i < transient; ++i) {
      s = model(s);
      if (out_of_bounds(s)) throw ContractError("escape");
    }

    std::array<std::array<double, 3>, 3> q{};
    for (int i = 0; i < dim; ++i) q[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
    std::array<double, 3> sums{};
    double log_det_sum = 0.0;

    for (long it = 0; it < n; ++it) {
      const Matrix j = jacobian_off_seam(model, s);
      log_det_sum += std::log(std::abs(j.det()));
      std::array<std::array<double, 3>, 3> v{};
      for (int c = 0; c < dim; ++c) {
        for (int r = 0; r < dim; ++r) {
          double acc = 0.0;
          for (int k = 0; k < dim; ++k) acc += j(r, k) * q[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)];
          v[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)] = acc;
        }
      }
      // Modified Gram–Schmidt.
      for (int c = 0; c < dim; ++c) {
        auto& vc = v[static_cast<std::size_t>(c)];
        for (int p = 0; p < c; ++p) {
          const auto& qp = q[static_cast<std::size_t>(p)];
          double dot = 0.0;
          for (int k = 0; k < dim; ++k) dot += vc[static_cast<std::size_t>(k)] * qp[static_cast<std::size_t>(k)];
          for (int k = 0; k < dim; ++k) vc[static_cast<std::size_t>(k)] -= dot * qp[static_cast<std::size_t>(k)];
        }
        double norm = 0.0;
        for (int k = 0; k < dim; ++k) norm += vc[static_cast<std::size_t>(k)] * vc[static_cast<std::size_t>(k)];
        norm = std::sqrt(norm);
        sums[static_cast<std::size_t>(c)] += std::log(norm);
        for (int k = 0; k < dim; ++k) q[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)] = vc[static_cast<std::size_t>(k)] / norm;
      }
      s = model(s);
      if (out_of_bounds(s)) throw ContractError("escape");
    }
    for (int c = 0; c < dim; ++c) out.exponents.push_back(sums[static_cast<std::size_t>(c)] / static_cast<double>(n));
    out.mean_log_det = log_det_sum / static_cast<double>(n);
    out.valid = std::all_of(out.exponents.begin(), out.exponents.end(), [](double e) { return std::isfinite(e); });
  } catch (const ContractError&) {
    out.valid = false;
    out.exponents.assign(static_cast<std::size_t>(dim), std::numeric_limits<double>::quiet_NaN());
  }
  std::sort(out.exponents.begin(), out.exponents.end(), std::greater<>());
  return out;
}

double rotation_number(const std::vector<StateVec>& sample, const StateVec& center) {
  if (sample.size() < 100) throw ContractError("rotation_number: at least 100 sample points required");
  double prev = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double dx = sample[i].x() - center.x();
    const double dy = sample[i].y() - center.y();
    if (std::hypot(dx, dy) <= 1e-9) throw DegenerateAngle("rotation_number: sample point coincides with the center");
    const double a = std::atan2(dy, dx);
    if (i > 0) total += std::remainder(a - prev, 2.0 * std::numbers::pi);
    prev = a;
  }
  return total / (2.0 * std::numbers::pi * static_cast<double>(sample.size() - 1));
}

double centerset_spread(const std::vector<StateVec>& sample, const StateVec& center) {
  if (sample.empty()) return 0.0;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& p : sample) {
    const double r = std::hypot(p.x() - center.x(), p.y() - center.y());
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return hi - lo;
}

}  // namespace gilet
