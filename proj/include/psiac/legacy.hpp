#pragma once

// Floating-point baseline: at every evaluation point, assemble the moment
// system of the kernel placed there by Gauss quadrature, solve it by LU in
// double, then convolve by quadrature. Ill-conditioning is left visible on
// purpose.

#include <span>
#include <vector>

#include "psiac/dg_field.hpp"
#include "psiac/kernel.hpp"

namespace psiac {

/// B(x | knots) in double by the Cox-de Boor recursion, scaled to unit
/// integral. Half-open support.
double bspline_eval_double(double x, std::span<const double> knots);

/// Moment matrix A(delta, q) = int B_q(t) t^delta dt of the kernel used at
/// x, in kernel coordinates measured in units of h; row-major
/// (r+1) x (r+1), together with each B-spline's knots in those coordinates.
struct LegacySystem {
  std::vector<double> A;
  std::vector<std::vector<double>> windows;
  std::size_t size = 0;
};

/// Symmetric specs are centred on x; one-sided specs are pinned to the
/// mesh end by boundary_lambda.
LegacySystem legacy_system(const FilterSpec& spec, const Mesh& mesh, double x);

/// Solves A X = B in place by LU with partial pivoting; B has `nrhs`
/// columns, row-major. Throws SingularMatrix on a zero pivot.
void lu_solve(std::vector<double> a, std::size_t n, std::vector<double>& b, std::size_t nrhs = 1);

/// ||A||_1 ||A^-1||_1 for a row-major n x n matrix.
double condition_1norm(std::span<const double> a, std::size_t n);

double condition_estimate(const FilterSpec& spec, const Mesh& mesh, double x);

/// The filtered value at x by the numerical approach.
double numeric_filter_point(const FilterSpec& spec, const DGField<double>& u, double x);

/// Values at a + h (c + theta), cell-major, using the one-sided specs on
/// the boundary regions and the symmetric kernel in between, with the same
/// region split as FilteredField.
std::vector<double> legacy_sample(const DGField<double>& u, const FilterSpec& left, const FilterSpec& right,
                                  std::span<const double> offsets);

}  // namespace psiac
