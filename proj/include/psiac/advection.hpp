#pragma once

// u_t + u_x = 0 on [a, b] by DG in Bernstein form: upwind flux, classical RK4.

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "psiac/dg_field.hpp"
#include "psiac/rat_poly.hpp"
#include "psiac/rational.hpp"

namespace psiac {

using ScalarFn = std::function<double(double)>;

/// Periodic, or inflow value u(a, t) supplied by `inflow`.
struct Boundary {
  bool periodic = true;
  std::function<double(double t)> inflow;
};

struct Example {
  int id = 0;
  Rational a;
  Rational b;
  double t_end = 0.0;
  Boundary boundary;
  ScalarFn u0;
  std::function<double(double x, double t)> exact;
};

/// 1: Dirichlet, u0 = 0.7 sin(pi sqrt(10/7) x), t_end = 1/16.
/// 2: periodic, u0 = sin(2 pi x), t_end = 1. Both on [0, 1].
Example make_example(int id);

/// Per-cell L2 projection with Gauss-Legendre quadrature of d+5 points.
DGField<double> l2_project(const ScalarFn& f, const Mesh& mesh, int d);

/// Exact per-cell L2 projection of a rational polynomial.
DGField<Rational> exact_project(const RatPoly& p, const Mesh& mesh, int d);

/// du/dt for the semi-discrete system at time t.
DGField<double> advection_rhs(const DGField<double>& u, const Boundary& bc, double t);

/// RK4 from u0.time to t_end with dt = cfl h; the last step is shortened.
/// Throws UnstableStep when a coefficient stops being finite.
DGField<double> integrate(DGField<double> u0, const Boundary& bc, double t_end, double cfl = 0.1);

struct ErrorMetrics {
  std::vector<double> x;
  std::vector<double> error;  ///< |approx - exact| at x
  double weight = 0.0;        ///< quadrature weight per sample
  double l2 = 0.0;
  double linf = 0.0;
};

/// Midpoints (2j+1)/(2P) of P equal sub-intervals of the unit cell.
std::vector<Rational> sample_offsets(int points_per_cell);

/// Metrics from values sampled cell-major at sample_offsets(P). L2 is the
/// composite midpoint rule on that grid.
ErrorMetrics error_metrics(const Mesh& mesh, int points_per_cell, std::span<const double> values,
                           const ScalarFn& exact);
ErrorMetrics error_metrics(const DGField<double>& u, const ScalarFn& exact, int points_per_cell = 20);

/// The same metrics over the samples with lo <= x <= hi.
ErrorMetrics restrict_to(const ErrorMetrics& m, double lo, double hi);

/// Least-squares slope of log(error) against log(h).
double fitted_order(std::span<const double> h, std::span<const double> error);

/// CSV with columns cell,l,coefficient.
void write_snapshot_csv(std::ostream& os, const DGField<double>& u);

}  // namespace psiac
