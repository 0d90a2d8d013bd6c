#include "oracle.hpp"

#include "psiac/rat_matrix.hpp"

namespace psiac::oracle {

std::vector<Rational> direct_coefficients(const FilterSpec& spec, const Rational& h, const Rational& xi) {
  const FilterSpec moved(FilterFamily::Custom, spec.kernel_degree(), spec.index_set(),
                         spec.knots().scaled(h).shifted(xi), spec.side(), spec.dg_degree());
  const int r = spec.reproduction_degree();
  RatMatrix e0(static_cast<std::size_t>(r) + 1, 1);
  e0(0, 0) = Rational(1);
  return rat_solve(build_reproduction_matrix(moved), e0).column(0);
}

PiecewisePoly field_as_piecewise(const DGField<Rational>& u) {
  std::vector<Rational> breaks;
  std::vector<RatPoly> pieces;
  for (std::size_t c = 0; c < u.mesh.cells(); ++c) {
    const Rational lo = u.mesh.cell_lower(c);
    const Rational hi = lo + u.mesh.h();
    breaks.push_back(lo);
    RatPoly p;
    for (int l = 0; l <= u.degree; ++l) p = p + bernstein_poly(u.degree, l, lo, hi) * u.at(c, l);
    pieces.push_back(p);
  }
  breaks.push_back(u.mesh.b());
  return PiecewisePoly(std::move(breaks), std::move(pieces));
}

Rational direct_convolution(const FilterSpec& spec, const DGField<Rational>& u, const Rational& x) {
  const Mesh& mesh = u.mesh;
  const Rational xi = spec.side() == Side::Symmetric
                          ? Rational(0)
                          : x - mesh.h() * boundary_lambda(spec, mesh.a(), mesh.b(), mesh.h());
  const std::vector<Rational> c = direct_coefficients(spec, mesh.h(), xi);
  const PiecewisePoly data = field_as_piecewise(u);
  Rational value;
  for (std::size_t q = 0; q < c.size(); ++q) {
    // s = x - t maps the kernel spline onto the data axis.
    const KnotVector kernel = spec.window(spec.index_set()[q]).scaled(mesh.h()).shifted(xi);
    value += c[q] * integrate_piecewise_product(bspline_pieces(kernel.reflected(x)), data, mesh.a(), mesh.b());
  }
  return value;
}

std::vector<Rational> reproduced_polynomial(const FilterSpec& spec, int delta) {
  const std::vector<Rational> c0 = kernel_coefficients(spec).c0;
  std::vector<Rational> out(static_cast<std::size_t>(delta) + 1);
  for (std::size_t q = 0; q < c0.size(); ++q) {
    const PiecewisePoly b = bspline_pieces(spec.window(spec.index_set()[q]));
    for (int m = 0; m <= delta; ++m) {
      // (x - t)^delta = sum_m C(delta, m) x^(delta-m) (-t)^m
      const Rational sign = m % 2 == 0 ? Rational(1) : Rational(-1);
      const PiecewisePoly tm({b.lower(), b.upper()}, {RatPoly::monomial(m)});
      const Rational moment = integrate_piecewise_product(b, tm, b.lower(), b.upper());
      out[static_cast<std::size_t>(delta - m)] += c0[q] * binom(delta, m) * sign * moment;
    }
  }
  return out;
}

Rational divided_difference(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  std::vector<Rational> t = ys;
  for (std::size_t order = 1; order < xs.size(); ++order)
    for (std::size_t i = 0; i + order < xs.size(); ++i) t[i] = (t[i + 1] - t[i]) / (xs[i + order] - xs[i]);
  return t[0];
}

}  // namespace psiac::oracle
