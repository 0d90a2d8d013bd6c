#pragma once

#include <vector>

namespace psiac {

/// n-point Gauss-Legendre rule on [-1, 1]; exact through degree 2n-1.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;
};

/// Nodes by Newton iteration on P_n from Chebyshev initial guesses.
QuadratureRule gauss_legendre(int n);

/// Cached rule, safe to call from several threads.
const QuadratureRule& gauss_legendre_cached(int n);

}  // namespace psiac
