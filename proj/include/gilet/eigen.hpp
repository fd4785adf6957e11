#pragma once

#include <array>
#include <complex>
#include <vector>

#include "gilet/state.hpp"

namespace gilet {

using Complex = std::complex<double>;
using ComplexVec = std::array<Complex, 3>;

struct EigenPair {
  Complex value;
  ComplexVec vector;  // unit 2-norm; trailing entry unused for 2x2
};

/// Eigen-decomposition of a 2x2 or 3x3 matrix from its characteristic
/// polynomial. Eigenvalues are sorted by descending modulus (ties: real part).
/// When the last column is decoupled (entries above the diagonal are zero) a
/// 3x3 matrix factors exactly into its leading 2x2 block and the corner entry.
std::vector<EigenPair> eigen_decompose(const Matrix& m);

/// Real roots of the monic cubic λ³ + a λ² + b λ + c, largest first.
/// Always returns at least one root.
std::vector<double> real_cubic_roots(double a, double b, double c);

}  // namespace gilet
