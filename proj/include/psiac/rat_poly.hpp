#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "psiac/rational.hpp"

namespace psiac {

/// Dense univariate polynomial with rational coefficients, constant term
/// first. The zero polynomial has no coefficients.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> coeffs);
  RatPoly(std::initializer_list<Rational> coeffs) : RatPoly(std::vector<Rational>(coeffs)) {}

  static RatPoly constant(const Rational& c);
  /// (x - root)^power
  static RatPoly shifted_power(const Rational& root, int power);
  static RatPoly monomial(int power, const Rational& coeff = Rational(1));

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return c_; }
  /// Coefficient of x^power (zero beyond the degree).
  Rational coeff(std::size_t power) const { return power < c_.size() ? c_[power] : Rational(0); }

  Rational operator()(const Rational& x) const;
  double eval(double x) const;

  RatPoly derivative() const;
  /// Antiderivative vanishing at zero.
  RatPoly antiderivative() const;
  /// p(alpha * x + beta)
  RatPoly compose_affine(const Rational& alpha, const Rational& beta) const;

  RatPoly& operator+=(const RatPoly& o);
  RatPoly& operator-=(const RatPoly& o);
  RatPoly& operator*=(const Rational& s);

  friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
  friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(RatPoly a, const Rational& s) { return a *= s; }
  friend RatPoly operator*(const Rational& s, RatPoly a) { return a *= s; }
  friend bool operator==(const RatPoly& a, const RatPoly& b) = default;

 private:
  void trim();
  std::vector<Rational> c_;
};

Rational poly_eval(const RatPoly& p, const Rational& x);

/// Exact integral of p over [a, b].
Rational integrate_on(const RatPoly& p, const Rational& a, const Rational& b);

}  // namespace psiac
