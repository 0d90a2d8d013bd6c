#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "psiac/advection.hpp"
#include "psiac/errors.hpp"
#include "psiac/quadrature.hpp"
#include "psiac/spline.hpp"

using namespace psiac;

namespace {

double l2_norm(const DGField<double>& u) {
  // Exact for the squared Bernstein polynomial: c^T (h M_d) c per cell.
  const RatMatrix m = bernstein_mass_matrix(u.degree);
  const auto md = m.to_double();
  const std::size_t p = u.dofs_per_cell();
  double s = 0.0;
  for (std::size_t c = 0; c < u.mesh.cells(); ++c)
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) s += u.coeffs[c * p + i] * md[i * p + j] * u.coeffs[c * p + j];
  return std::sqrt(s * u.mesh.h_d());
}

double cell_average_sum(const DGField<double>& u) {
  double s = 0.0;
  for (double c : u.coeffs) s += c;  // Bernstein functions share the average 1/(d+1)
  return s;
}

const Boundary kPeriodic{true, {}};

}  // namespace

TEST_CASE("examples") {
  const Example e1 = make_example(1);
  CHECK(e1.a == 0);
  CHECK(e1.b == 1);
  CHECK(e1.t_end == doctest::Approx(1.0 / 16));
  CHECK_FALSE(e1.boundary.periodic);
  const double k = std::numbers::pi * std::sqrt(10.0 / 7.0);
  for (double x : {0.0, 0.3, 0.9}) {
    CHECK(e1.u0(x) == doctest::Approx(0.7 * std::sin(k * x)));
    CHECK(e1.exact(x, 0.05) == doctest::Approx(0.7 * std::sin(k * (x - 0.05))));
  }
  CHECK(e1.boundary.inflow(0.02) == doctest::Approx(e1.exact(0.0, 0.02)));

  const Example e2 = make_example(2);
  CHECK(e2.boundary.periodic);
  CHECK(e2.t_end == 1.0);
  CHECK(e2.exact(0.3, 1.0) == doctest::Approx(std::sin(2 * std::numbers::pi * 0.3)));
  CHECK_THROWS_AS(make_example(3), ConfigError);
}

TEST_CASE("quadrature rules") {
  for (int n = 1; n <= 12; ++n) {
    const QuadratureRule q = gauss_legendre(n);
    REQUIRE(q.nodes.size() == static_cast<std::size_t>(n));
    const int deg = 2 * n - 1;
    for (int p = 0; p <= deg; ++p) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += q.weights[static_cast<std::size_t>(i)] * std::pow(q.nodes[static_cast<std::size_t>(i)], p);
      const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
      CHECK(std::abs(s - exact) <= 1e-13);
    }
  }
  CHECK(&gauss_legendre_cached(5) == &gauss_legendre_cached(5));
}

TEST_CASE("l2_project") {
  const Mesh m(0, 1, 7);
  const auto one = l2_project([](double) { return 1.0; }, m, 3);
  for (double c : one.coeffs) CHECK(c == doctest::Approx(1.0).epsilon(1e-14));

  const auto lin = l2_project([](double x) { return x; }, Mesh(0, 1, 1), 1);
  CHECK(std::abs(lin.coeffs[0]) < 1e-14);
  CHECK(lin.coeffs[1] == doctest::Approx(1.0));

  // Residual of x^2 is orthogonal to the cell basis.
  const auto sq = l2_project([](double x) { return x * x; }, m, 1);
  const QuadratureRule q = gauss_legendre(8);
  for (std::size_t c = 0; c < m.cells(); ++c) {
    for (int l = 0; l <= 1; ++l) {
      double s = 0.0;
      for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        const double y = 0.5 * (q.nodes[i] + 1);
        const double x = m.cell_lower(c).to_double() + m.h_d() * y;
        const double phi = l == 0 ? 1 - y : y;
        s += 0.5 * q.weights[i] * m.h_d() * (eval_in_cell(sq, c, y) - x * x) * phi;
      }
      CHECK(std::abs(s) <= 1e-12);
    }
  }

  // Order d+1 in L2 for smooth data.
  for (int d = 1; d <= 3; ++d) {
    std::vector<double> hs, errs;
    for (int n : {10, 20, 40}) {
      const Mesh mesh(0, 1, static_cast<std::size_t>(n));
      const auto u = l2_project([](double x) { return std::exp(x) * std::cos(3 * x); }, mesh, d);
      hs.push_back(mesh.h_d());
      errs.push_back(error_metrics(u, [](double x) { return std::exp(x) * std::cos(3 * x); }).l2);
    }
    CHECK(fitted_order(hs, errs) == doctest::Approx(d + 1).epsilon(0.1));
  }
}

TEST_CASE("advection_rhs") {
  const Mesh m(0, 1, 9);
  DGField<double> c(m, 2);
  for (auto& v : c.coeffs) v = 2.5;
  for (double v : advection_rhs(c, kPeriodic, 0.0).coeffs) CHECK(std::abs(v) < 1e-13);

  // One cell, d = 0, inflow: upwind finite volume.
  const Mesh single(0, Rational(1, 4), 1);
  DGField<double> u(single, 0);
  u.coeffs[0] = 0.3;
  const Boundary inflow{false, [](double) { return 1.1; }};
  CHECK(advection_rhs(u, inflow, 0.0).coeffs[0] == doctest::Approx((1.1 - 0.3) / 0.25));

  // Upwind DG dissipates the L2 norm.
  const auto s = l2_project([](double x) { return std::sin(2 * std::numbers::pi * x); }, Mesh(0, 1, 16), 2);
  const auto after = integrate(s, kPeriodic, 0.1 * s.mesh.h_d(), 0.1);
  CHECK(l2_norm(after) <= l2_norm(s));
}

TEST_CASE("integrate") {
  const Example ex = make_example(2);
  const Mesh m(0, 1, 20);
  const auto u0 = l2_project(ex.u0, m, 2);
  const auto same = integrate(u0, ex.boundary, 0.0);
  CHECK(same.coeffs == u0.coeffs);

  // Periodic conservation.
  const auto u1 = integrate(u0, ex.boundary, 0.37);
  CHECK(u1.time == doctest::Approx(0.37));
  CHECK(std::abs(cell_average_sum(u1) - cell_average_sum(u0)) <= 1e-12 * std::max(1.0, std::abs(cell_average_sum(u0))));

  // DG L2 order d+1 on Example 2.
  for (int d = 1; d <= 2; ++d) {
    std::vector<double> hs, errs;
    for (int n : {20, 40, 80}) {
      const Mesh mesh(0, 1, static_cast<std::size_t>(n));
      const auto u = integrate(l2_project(ex.u0, mesh, d), ex.boundary, ex.t_end);
      hs.push_back(mesh.h_d());
      errs.push_back(error_metrics(u, [&](double x) { return ex.exact(x, ex.t_end); }).l2);
    }
    CHECK(std::abs(fitted_order(hs, errs) - (d + 1)) <= 0.4);
  }

  // Example 1 (Dirichlet) converges to the translate.
  const Example e1 = make_example(1);
  std::vector<double> errs;
  for (int n : {20, 40}) {
    const auto u = integrate(l2_project(e1.u0, Mesh(0, 1, static_cast<std::size_t>(n)), 2), e1.boundary, e1.t_end);
    errs.push_back(error_metrics(u, [&](double x) { return e1.exact(x, e1.t_end); }).l2);
  }
  CHECK(errs[1] < errs[0] / 6);
  CHECK(errs[1] < 1e-5);
}

TEST_CASE("RK4 temporal order") {
  const Example ex = make_example(2);
  const Mesh m(0, 1, 8);
  const auto u0 = l2_project(ex.u0, m, 1);
  const auto ref = integrate(u0, ex.boundary, 1.0, 0.005);
  auto diff = [&](double cfl) {
    const auto u = integrate(u0, ex.boundary, 1.0, cfl);
    double s = 0.0;
    for (std::size_t i = 0; i < u.coeffs.size(); ++i) s = std::max(s, std::abs(u.coeffs[i] - ref.coeffs[i]));
    return s;
  };
  const double ratio = diff(0.4) / diff(0.2);
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("instability is reported") {
  const Example ex = make_example(2);
  const auto u0 = l2_project(ex.u0, Mesh(0, 1, 40), 3);
  CHECK_THROWS_AS(integrate(u0, ex.boundary, 200.0, 4.0), UnstableStep);
}

TEST_CASE("error metrics") {
  const Mesh m(0, 1, 5);
  DGField<double> c(m, 0);
  for (auto& v : c.coeffs) v = 0.25;
  const ErrorMetrics e = error_metrics(c, [](double) { return 0.25; }, 20);
  CHECK(e.x.size() == 100);
  CHECK(e.l2 == 0.0);
  CHECK(e.linf == 0.0);
  CHECK(e.x.front() == doctest::Approx(0.2 / 40));

  const auto lin = l2_project([](double x) { return 3 * x - 1; }, m, 1);
  CHECK(error_metrics(lin, [](double x) { return 3 * x - 1; }).linf <= 1e-12);

  const ErrorMetrics sub = restrict_to(e, 0.4, 0.6);
  CHECK(sub.x.size() == 20);

  const std::vector<double> hs{0.1, 0.05, 0.025}, err{1e-3, 1.25e-4, 1.5625e-5};
  CHECK(fitted_order(hs, err) == doctest::Approx(3.0));
}

TEST_CASE("snapshot export") {
  DGField<double> u(Mesh(0, 1, 2), 1);
  u.coeffs = {0.5, 1.0, -0.25, 2.0};
  std::ostringstream os;
  write_snapshot_csv(os, u);
  CHECK(os.str() == "cell,l,coefficient\n0,0,0.5\n0,1,1\n1,0,-0.25\n1,1,2\n");
}
