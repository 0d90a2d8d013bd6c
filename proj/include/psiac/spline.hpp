#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "psiac/rat_matrix.hpp"
#include "psiac/rat_poly.hpp"
#include "psiac/rational.hpp"

namespace psiac {

/// Non-decreasing sequence of rational knots.
class KnotVector {
 public:
  KnotVector() = default;
  explicit KnotVector(std::vector<Rational> knots);
  KnotVector(std::initializer_list<Rational> knots) : KnotVector(std::vector<Rational>(knots)) {}

  std::size_t size() const { return t_.size(); }
  const Rational& operator[](std::size_t i) const { return t_[i]; }
  const Rational& front() const { return t_.front(); }
  const Rational& back() const { return t_.back(); }
  std::span<const Rational> values() const { return t_; }

  /// Knots first .. first+count-1.
  KnotVector window(std::size_t first, std::size_t count) const;
  KnotVector shifted(const Rational& xi) const;
  KnotVector scaled(const Rational& h) const;
  /// (c - t_last, ..., c - t_first): the reflection s -> c - s.
  KnotVector reflected(const Rational& c) const;
  /// Number of occurrences of value.
  std::size_t multiplicity(const Rational& value) const;

  friend bool operator==(const KnotVector&, const KnotVector&) = default;

 private:
  std::vector<Rational> t_;
};

/// Piecewise polynomial on strictly increasing breakpoints; zero outside.
/// Piece i lives on [breakpoints[i], breakpoints[i+1]).
class PiecewisePoly {
 public:
  PiecewisePoly() = default;
  PiecewisePoly(std::vector<Rational> breakpoints, std::vector<RatPoly> pieces);

  const std::vector<Rational>& breakpoints() const { return breaks_; }
  const std::vector<RatPoly>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  const Rational& lower() const { return breaks_.front(); }
  const Rational& upper() const { return breaks_.back(); }

  /// Half-open evaluation; zero outside [lower, upper).
  Rational operator()(const Rational& x) const;
  /// Limit from the left; used at the right end of a closed domain.
  Rational left_limit(const Rational& x) const;
  /// Index of the piece containing x, or pieces().size() when outside.
  std::size_t piece_index(const Rational& x) const;

 private:
  std::vector<Rational> breaks_;
  std::vector<RatPoly> pieces_;
};

/// Complete homogeneous symmetric polynomial of the given degree evaluated
/// at vars, i.e. the sum over all multi-indices |w| = degree of vars^w.
Rational complete_homogeneous(std::span<const Rational> vars, int degree);

/// Divided difference of t -> t^power over the (possibly repeated) knots,
/// computed from the multi-index sum.
Rational divdiff_monomial(const KnotVector& knots, int power);

/// Divided difference by the defining recursion. `taylor(t, m)` must return
/// g^(m)(t) / m!; it is consulted at repeated knots.
template <class Taylor>
Rational divdiff_recursive(std::span<const Rational> knots, Taylor&& taylor) {
  const std::size_t n = knots.size();
  std::vector<Rational> table(n);
  for (std::size_t i = 0; i < n; ++i) table[i] = taylor(knots[i], 0);
  for (std::size_t order = 1; order < n; ++order) {
    for (std::size_t i = 0; i + order < n; ++i) {
      const Rational& lo = knots[i];
      const Rational& hi = knots[i + order];
      if (lo == hi) {
        table[i] = taylor(lo, static_cast<int>(order));
      } else {
        table[i] = (table[i + 1] - table[i]) / (hi - lo);
      }
    }
  }
  return table[0];
}

/// B(x | knots) = (k+1) [knots] (. - x)_+^k with k = knots.size() - 2;
/// unit integral, support [first, last).
Rational bspline_eval(const Rational& x, const KnotVector& knots);

/// Exact polynomial pieces of B(. | knots) between distinct knots.
PiecewisePoly bspline_pieces(const KnotVector& knots);

/// C(d, l) ((x-lo)/w)^l ((hi-x)/w)^(d-l) on [lo, hi], w = hi - lo.
RatPoly bernstein_poly(int d, int l, const Rational& lo, const Rational& hi);
PiecewisePoly bernstein_basis(int d, int l, const Rational& lo, const Rational& hi);

/// Bernstein coefficients on [lo, hi] of a polynomial of degree <= d.
std::vector<Rational> to_bernstein(const RatPoly& p, int d, const Rational& lo, const Rational& hi);

/// Columns b_0..b_d: Bernstein coefficients of the pieces of the uniform
/// degree-d B-spline on knots 0..d+1.
RatMatrix uniform_bspline_bb_coeffs(int d);

/// M_d(l, j) = C(d,l) C(d,j) / ((2d+1) C(2d, l+j)).
RatMatrix bernstein_mass_matrix(int d);

/// Exact integral of f * g over [a, b].
Rational integrate_piecewise_product(const PiecewisePoly& f, const PiecewisePoly& g,
                                     const Rational& a, const Rational& b);

}  // namespace psiac
