#include <algorithm>
#include <cmath>

#include "gilet/eigen.hpp"
#include "gilet/state.hpp"

namespace gilet {

StateVec::StateVec(std::span<const double> coords) : c_{0.0, 0.0, 0.0}, dim_(static_cast<int>(coords.size())) {
  if (dim_ != 2 && dim_ != 3) throw ContractError("state dimension must be 2 or 3");
  std::copy(coords.begin(), coords.end(), c_.begin());
  check();
}

void StateVec::check() const {
  for (int i = 0; i < dim_; ++i) {
    if (!std::isfinite(c_[static_cast<std::size_t>(i)])) {
      throw ContractError("state coordinates must be finite");
    }
  }
}

double distance(const StateVec& a, const StateVec& b) {
  if (a.dim() != b.dim()) throw ContractError("distance: dimension mismatch");
  double acc = 0.0;
  for (int i = 0; i < a.dim(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(acc);
}

StateVec lerp(const StateVec& a, const StateVec& b, double t) {
  if (a.dim() != b.dim()) throw ContractError("lerp: dimension mismatch");
  std::array<double, 3> c{};
  for (int i = 0; i < a.dim(); ++i) c[static_cast<std::size_t>(i)] = a[i] + t * (b[i] - a[i]);
  return StateVec(std::span<const double>(c.data(), static_cast<std::size_t>(a.dim())));
}

StateVec midpoint(const StateVec& a, const StateVec& b) { return lerp(a, b, 0.5); }

Matrix::Matrix(int dim, std::initializer_list<double> row_major) : dim_(dim) {
  if (static_cast<int>(row_major.size()) != dim * dim) throw ContractError("matrix initializer size");
  int k = 0;
  for (double v : row_major) {
    (*this)(k / dim, k % dim) = v;
    ++k;
  }
}

double Matrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::det() const {
  const Matrix& m = *this;
  if (dim_ == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

namespace {

// Roots of λ² + b λ + c.
std::array<Complex, 2> quadratic_roots(double b, double c) {
  const double disc = b * b - 4.0 * c;
  if (disc >= 0.0) {
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    if (q == 0.0) return {Complex(0.0), Complex(0.0)};
    return {Complex(q), Complex(c / q)};
  }
  const double re = -0.5 * b;
  const double im = 0.5 * std::sqrt(-disc);
  return {Complex(re, im), Complex(re, -im)};
}

double cubic(double a, double b, double c, double x) { return ((x + a) * x + b) * x + c; }

// One real root of λ³ + a λ² + b λ + c by bisection on the Cauchy bound, then
// Newton polish.
double one_real_root(double a, double b, double c) {
  const double bound = 1.0 + std::max({std::abs(a), std::abs(b), std::abs(c)});
  double lo = -bound, hi = bound;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * bound; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (cubic(a, b, c, mid) < 0.0) lo = mid; else hi = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    const double d = (3.0 * x + 2.0 * a) * x + b;
    if (d == 0.0) break;
    const double step = cubic(a, b, c, x) / d;
    if (!std::isfinite(step) || std::abs(step) > 1e-8 * (1.0 + std::abs(x))) break;
    x -= step;
  }
  return x;
}

std::array<Complex, 3> cubic_roots(double a, double b, double c) {
  const double r = one_real_root(a, b, c);
  // Deflate: λ³ + aλ² + bλ + c = (λ − r)(λ² + q1 λ + q0)
  const double q1 = a + r;
  const double q0 = b + r * q1;
  const auto rest = quadratic_roots(q1, q0);
  return {Complex(r), rest[0], rest[1]};
}

ComplexVec normalized(ComplexVec v, int dim) {
  double n = 0.0;
  for (int i = 0; i < dim; ++i) n += std::norm(v[static_cast<std::size_t>(i)]);
  n = std::sqrt(n);
  if (n > 0.0) {
    for (int i = 0; i < dim; ++i) v[static_cast<std::size_t>(i)] /= n;
  }
  return v;
}

ComplexVec null_vector_2(const Matrix& m, Complex lambda) {
  const Complex a = m(0, 0) - lambda, b = m(0, 1);
  const Complex c = m(1, 0), d = m(1, 1) - lambda;
  const double r1 = std::norm(a) + std::norm(b);
  const double r2 = std::norm(c) + std::norm(d);
  const double scale = std::max(1.0, std::abs(lambda));
  if (std::max(r1, r2) <= 1e-28 * scale * scale) {
    return {Complex(1.0), Complex(0.0), Complex(0.0)};
  }
  if (r1 >= r2) return normalized({b, -a, Complex(0.0)}, 2);
  return normalized({-d, c, Complex(0.0)}, 2);
}

ComplexVec cross(const ComplexVec& u, const ComplexVec& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

ComplexVec null_vector_3(const Matrix& m, Complex lambda) {
  std::array<ComplexVec, 3> rows;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
          Complex(m(r, c)) - (r == c ? lambda : Complex(0.0));
    }
  }
  ComplexVec best{Complex(1.0), Complex(0.0), Complex(0.0)};
  double best_norm = 0.0;
  for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
    const ComplexVec v = cross(rows[static_cast<std::size_t>(i)], rows[static_cast<std::size_t>(j)]);
    const double n = std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]);
    if (n > best_norm) {
      best_norm = n;
      best = v;
    }
  }
  return normalized(best, 3);
}

Matrix leading_block(const Matrix& m) {
  return Matrix(2, {m(0, 0), m(0, 1), m(1, 0), m(1, 1)});
}

void sort_by_modulus(std::vector<EigenPair>& pairs) {
  std::stable_sort(pairs.begin(), pairs.end(), [](const EigenPair& l, const EigenPair& r) {
    const double al = std::abs(l.value), ar = std::abs(r.value);
    if (al != ar) return al > ar;
    return l.value.real() > r.value.real();
  });
}

}  // namespace

std::vector<double> real_cubic_roots(double a, double b, double c) {
  std::vector<double> out;
  for (const Complex& z : cubic_roots(a, b, c)) {
    if (z.imag() == 0.0) out.push_back(z.real());
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<EigenPair> eigen_decompose(const Matrix& m) {
  std::vector<EigenPair> pairs;
  if (m.dim() == 2) {
    for (const Complex& l : quadratic_roots(-m.trace(), m.det())) {
      pairs.push_back({l, null_vector_2(m, l)});
    }
  } else if (m(0, 2) == 0.0 && m(1, 2) == 0.0) {
    const Matrix block = leading_block(m);
    const double corner = m(2, 2);
    for (const Complex& l : quadratic_roots(-block.trace(), block.det())) {
      ComplexVec v = null_vector_2(block, l);
      const Complex gap = l - corner;
      if (std::abs(gap) > 1e-14) {
        v[2] = (m(2, 0) * v[0] + m(2, 1) * v[1]) / gap;
        v = normalized(v, 3);
      } else {
        v = null_vector_3(m, l);
      }
      pairs.push_back({l, v});
    }
    pairs.push_back({Complex(corner), {Complex(0.0), Complex(0.0), Complex(1.0)}});
  } else {
    const double a = -m.trace();
    const double b = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) -
                     m(0, 2) * m(2, 0) + m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    const double c = -m.det();
    for (const Complex& l : cubic_roots(a, b, c)) pairs.push_back({l, null_vector_3(m, l)});
  }
  sort_by_modulus(pairs);
  return pairs;
}

}  // namespace gilet
