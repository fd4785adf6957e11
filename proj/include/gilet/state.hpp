#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>

namespace gilet {

/// Thrown when a caller breaks an operation's documented precondition.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Phase-space point of a planar (x, y) or spatial (x, y, z) map.
/// Entries are finite by construction.
class StateVec {
 public:
  static constexpr int kMaxDim = 3;

  StateVec(double x, double y) : c_{x, y, 0.0}, dim_(2) { check(); }
  StateVec(double x, double y, double z) : c_{x, y, z}, dim_(3) { check(); }
  explicit StateVec(std::span<const double> coords);

  int dim() const { return dim_; }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  double x() const { return c_[0]; }
  double y() const { return c_[1]; }
  double z() const { return c_[2]; }

  std::span<const double> coords() const {
    return {c_.data(), static_cast<std::size_t>(dim_)};
  }

  friend bool operator==(const StateVec&, const StateVec&) = default;

 private:
  void check() const;

  std::array<double, kMaxDim> c_;
  int dim_;
};

double distance(const StateVec& a, const StateVec& b);
StateVec midpoint(const StateVec& a, const StateVec& b);
/// a + t (b - a)
StateVec lerp(const StateVec& a, const StateVec& b, double t);

/// Square matrix of dimension 2 or 3, row-major.
class Matrix {
 public:
  explicit Matrix(int dim) : dim_(dim) {}
  Matrix(int dim, std::initializer_list<double> row_major);

  int dim() const { return dim_; }
  double& operator()(int r, int c) { return a_[static_cast<std::size_t>(r * 3 + c)]; }
  double operator()(int r, int c) const { return a_[static_cast<std::size_t>(r * 3 + c)]; }

  double trace() const;
  double det() const;

 private:
  std::array<double, 9> a_{};
  int dim_;
};

}  // namespace gilet
