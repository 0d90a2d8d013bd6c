#pragma once

// Independent reference computations for the tests. Nothing here goes
// through T, Q or the Pascal/scaling factorization.

#include <vector>

#include "psiac/dg_field.hpp"
#include "psiac/kernel.hpp"
#include "psiac/rat_poly.hpp"
#include "psiac/spline.hpp"

namespace psiac::oracle {

/// Kernel placed with knots h t + xi: coefficients from an exact solve on
/// the transformed knots.
std::vector<Rational> direct_coefficients(const FilterSpec& spec, const Rational& h, const Rational& xi);

/// The DG field as one exact piecewise polynomial over [a, b].
PiecewisePoly field_as_piecewise(const DGField<Rational>& u);

/// int K(t) u(x - t) dt for the kernel at x, by exact piecewise products.
/// One-sided specs use xi = x - h lambda, symmetric ones xi = 0.
Rational direct_convolution(const FilterSpec& spec, const DGField<Rational>& u, const Rational& x);

/// Coefficients in x of sum_j c0_j int B_j(t) (x - t)^delta dt.
std::vector<Rational> reproduced_polynomial(const FilterSpec& spec, int delta);

/// Divided difference of the values over distinct points.
Rational divided_difference(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

}  // namespace psiac::oracle
