#include "psiac/spline.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace psiac {

KnotVector::KnotVector(std::vector<Rational> knots) : t_(std::move(knots)) {
  if (!std::is_sorted(t_.begin(), t_.end())) {
    throw std::invalid_argument("KnotVector: knots must be non-decreasing");
  }
}

KnotVector KnotVector::window(std::size_t first, std::size_t count) const {
  if (first + count > t_.size()) {
    throw std::out_of_range("KnotVector::window: out of range");
  }
  return KnotVector(std::vector<Rational>(t_.begin() + static_cast<std::ptrdiff_t>(first),
                                          t_.begin() + static_cast<std::ptrdiff_t>(first + count)));
}

KnotVector KnotVector::shifted(const Rational& xi) const {
  std::vector<Rational> t = t_;
  for (auto& v : t) v += xi;
  return KnotVector(std::move(t));
}

KnotVector KnotVector::scaled(const Rational& h) const {
  if (h.sign() <= 0) {
    throw std::invalid_argument("KnotVector::scaled: scale must be positive");
  }
  std::vector<Rational> t = t_;
  for (auto& v : t) v *= h;
  return KnotVector(std::move(t));
}

KnotVector KnotVector::reflected(const Rational& c) const {
  std::vector<Rational> t;
  t.reserve(t_.size());
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) t.push_back(c - *it);
  return KnotVector(std::move(t));
}

std::size_t KnotVector::multiplicity(const Rational& value) const {
  return static_cast<std::size_t>(std::count(t_.begin(), t_.end(), value));
}

PiecewisePoly::PiecewisePoly(std::vector<Rational> breakpoints, std::vector<RatPoly> pieces)
    : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (breaks_.size() != pieces_.size() + 1) {
    throw std::invalid_argument("PiecewisePoly: need one more breakpoint than pieces");
  }
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
    if (!(breaks_[i] < breaks_[i + 1])) {
      throw std::invalid_argument("PiecewisePoly: breakpoints must be strictly increasing");
    }
  }
}

std::size_t PiecewisePoly::piece_index(const Rational& x) const {
  if (pieces_.empty() || x < breaks_.front() || !(x < breaks_.back())) return pieces_.size();
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  return static_cast<std::size_t>(it - breaks_.begin()) - 1;
}

Rational PiecewisePoly::operator()(const Rational& x) const {
  const std::size_t i = piece_index(x);
  return i < pieces_.size() ? pieces_[i](x) : Rational(0);
}

Rational PiecewisePoly::left_limit(const Rational& x) const {
  if (pieces_.empty() || !(breaks_.front() < x) || breaks_.back() < x) return Rational(0);
  const auto it = std::lower_bound(breaks_.begin(), breaks_.end(), x);
  const auto i = static_cast<std::size_t>(it - breaks_.begin()) - 1;
  return pieces_[i](x);
}

Rational complete_homogeneous(std::span<const Rational> vars, int degree) {
  if (degree < 0) return Rational(0);
  const auto deg = static_cast<std::size_t>(degree);
  // h[q] over the variables seen so far: h_q(v_0..v_i) = h_q(v_0..v_{i-1}) + v_i h_{q-1}(v_0..v_i).
  std::vector<Rational> h(deg + 1);
  h[0] = 1;
  if (vars.empty()) return deg == 0 ? Rational(1) : Rational(0);
  for (std::size_t q = 1; q <= deg; ++q) h[q] = h[q - 1] * vars[0];
  for (std::size_t i = 1; i < vars.size(); ++i) {
    for (std::size_t q = 1; q <= deg; ++q) h[q] += vars[i] * h[q - 1];
  }
  return h[deg];
}

Rational divdiff_monomial(const KnotVector& knots, int power) {
  if (power < 0) {
    throw std::invalid_argument("divdiff_monomial: negative power");
  }
  const int order = static_cast<int>(knots.size()) - 1;
  if (power < order) return Rational(0);
  return complete_homogeneous(knots.values(), power - order);
}

Rational bspline_eval(const Rational& x, const KnotVector& knots) {
  if (knots.size() < 2) {
    throw std::invalid_argument("bspline_eval: need at least two knots");
  }
  if (knots.front() == knots.back()) {
    throw std::invalid_argument("bspline_eval: knot vector has zero-length support");
  }
  if (x < knots.front() || !(x < knots.back())) return Rational(0);
  const int k = static_cast<int>(knots.size()) - 2;
  // Taylor coefficients of g(t) = (t - x)_+^k, strictly truncated at t = x.
  auto taylor = [&](const Rational& t, int m) -> Rational {
    if (m > k || !(x < t)) return Rational(0);
    return binom(k, m) * (t - x).pow(k - m);
  };
  return Rational(k + 1) * divdiff_recursive(knots.values(), taylor);
}

PiecewisePoly bspline_pieces(const KnotVector& knots) {
  if (knots.size() < 2) {
    throw std::invalid_argument("bspline_pieces: need at least two knots");
  }
  if (knots.front() == knots.back()) {
    throw std::invalid_argument("bspline_pieces: knot vector has zero-length support");
  }
  const std::size_t n = knots.size();
  const int k = static_cast<int>(n) - 2;
  std::vector<Rational> breaks(knots.values().begin(), knots.values().end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  std::vector<RatPoly> pieces;
  pieces.reserve(breaks.size() - 1);
  for (std::size_t m = 0; m + 1 < breaks.size(); ++m) {
    const Rational& lo = breaks[m];
    // Cox-de Boor on the interval [lo, breaks[m+1]).
    std::vector<RatPoly> basis(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (knots[i] <= lo && lo < knots[i + 1]) basis[i] = RatPoly::constant(1);
    }
    for (int p = 1; p <= k; ++p) {
      const auto pp = static_cast<std::size_t>(p);
      std::vector<RatPoly> next(n - 1 - pp);
      for (std::size_t i = 0; i + pp + 1 < n; ++i) {
        RatPoly acc;
        const Rational left_span = knots[i + pp] - knots[i];
        if (!left_span.is_zero() && !basis[i].is_zero()) {
          acc += RatPoly({-knots[i] / left_span, Rational(1) / left_span}) * basis[i];
        }
        const Rational right_span = knots[i + pp + 1] - knots[i + 1];
        if (!right_span.is_zero() && !basis[i + 1].is_zero()) {
          acc += RatPoly({knots[i + pp + 1] / right_span, Rational(-1) / right_span}) * basis[i + 1];
        }
        next[i] = std::move(acc);
      }
      basis = std::move(next);
    }
    pieces.push_back(basis[0] * (Rational(k + 1) / (knots.back() - knots.front())));
  }
  return PiecewisePoly(std::move(breaks), std::move(pieces));
}

RatPoly bernstein_poly(int d, int l, const Rational& lo, const Rational& hi) {
  if (l < 0 || l > d) {
    throw std::invalid_argument("bernstein_poly: index out of range");
  }
  const Rational w = hi - lo;
  if (w.sign() <= 0) {
    throw std::invalid_argument("bernstein_poly: empty cell");
  }
  const Rational inv = Rational(1) / w;
  RatPoly p = RatPoly::constant(binom(d, l));
  const RatPoly up({-lo * inv, inv});
  const RatPoly down({hi * inv, -inv});
  for (int i = 0; i < l; ++i) p = p * up;
  for (int i = 0; i < d - l; ++i) p = p * down;
  return p;
}

PiecewisePoly bernstein_basis(int d, int l, const Rational& lo, const Rational& hi) {
  return PiecewisePoly({lo, hi}, {bernstein_poly(d, l, lo, hi)});
}

std::vector<Rational> to_bernstein(const RatPoly& p, int d, const Rational& lo, const Rational& hi) {
  if (p.degree() > d) {
    throw std::invalid_argument("to_bernstein: polynomial degree exceeds d");
  }
  const RatPoly local = p.compose_affine(hi - lo, lo);
  std::vector<Rational> b(static_cast<std::size_t>(d) + 1);
  for (int l = 0; l <= d; ++l) {
    Rational acc;
    for (int i = 0; i <= l; ++i) acc += binom(l, i) / binom(d, i) * local.coeff(static_cast<std::size_t>(i));
    b[static_cast<std::size_t>(l)] = acc;
  }
  return b;
}

RatMatrix uniform_bspline_bb_coeffs(int d) {
  if (d < 0) {
    throw std::invalid_argument("uniform_bspline_bb_coeffs: negative degree");
  }
  std::vector<Rational> t;
  for (int i = 0; i <= d + 1; ++i) t.emplace_back(i);
  const PiecewisePoly pieces = bspline_pieces(KnotVector(std::move(t)));
  const auto n = static_cast<std::size_t>(d) + 1;
  RatMatrix m(n, n);
  for (std::size_t rho = 0; rho < n; ++rho) {
    const Rational lo(static_cast<long>(rho));
    const auto b = to_bernstein(pieces.pieces()[rho], d, lo, lo + Rational(1));
    for (std::size_t l = 0; l < n; ++l) m(l, rho) = b[l];
  }
  return m;
}

RatMatrix bernstein_mass_matrix(int d) {
  if (d < 0) {
    throw std::invalid_argument("bernstein_mass_matrix: negative degree");
  }
  const auto n = static_cast<std::size_t>(d) + 1;
  RatMatrix m(n, n);
  for (int l = 0; l <= d; ++l)
    for (int j = 0; j <= d; ++j)
      m(static_cast<std::size_t>(l), static_cast<std::size_t>(j)) =
          binom(d, l) * binom(d, j) / (Rational(2 * d + 1) * binom(2 * d, l + j));
  return m;
}

Rational integrate_piecewise_product(const PiecewisePoly& f, const PiecewisePoly& g,
                                     const Rational& a, const Rational& b) {
  if (b < a) {
    throw std::invalid_argument("integrate_piecewise_product: a > b");
  }
  if (f.empty() || g.empty()) return Rational(0);
  const Rational lo = std::max({a, f.lower(), g.lower()});
  const Rational hi = std::min({b, f.upper(), g.upper()});
  if (!(lo < hi)) return Rational(0);

  std::vector<Rational> cuts{lo, hi};
  for (const auto& x : f.breakpoints())
    if (lo < x && x < hi) cuts.push_back(x);
  for (const auto& x : g.breakpoints())
    if (lo < x && x < hi) cuts.push_back(x);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  Rational total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const std::size_t fi = f.piece_index(cuts[i]);
    const std::size_t gi = g.piece_index(cuts[i]);
    if (fi >= f.pieces().size() || gi >= g.pieces().size()) continue;
    total += integrate_on(f.pieces()[fi] * g.pieces()[gi], cuts[i], cuts[i + 1]);
  }
  return total;
}

}  // namespace psiac
