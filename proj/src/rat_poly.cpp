#include "psiac/rat_poly.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace psiac {

RatPoly::RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void RatPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

RatPoly RatPoly::constant(const Rational& c) { return RatPoly({c}); }

RatPoly RatPoly::monomial(int power, const Rational& coeff) {
  std::vector<Rational> c(static_cast<std::size_t>(power) + 1);
  c.back() = coeff;
  return RatPoly(std::move(c));
}

RatPoly RatPoly::shifted_power(const Rational& root, int power) {
  std::vector<Rational> c(static_cast<std::size_t>(power) + 1);
  const Rational neg = -root;
  for (int i = 0; i <= power; ++i) {
    c[static_cast<std::size_t>(i)] = binom(power, i) * neg.pow(power - i);
  }
  return RatPoly(std::move(c));
}

Rational RatPoly::operator()(const Rational& x) const {
  Rational acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

double RatPoly::eval(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->to_double();
  return acc;
}

RatPoly RatPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long>(i));
  return RatPoly(std::move(d));
}

RatPoly RatPoly::antiderivative() const {
  if (c_.empty()) return {};
  std::vector<Rational> a(c_.size() + 1);
  for (std::size_t i = 0; i < c_.size(); ++i) a[i + 1] = c_[i] / Rational(static_cast<long>(i + 1));
  return RatPoly(std::move(a));
}

RatPoly RatPoly::compose_affine(const Rational& alpha, const Rational& beta) const {
  // Horner in the polynomial ring: acc = acc * (alpha x + beta) + c_i.
  const RatPoly inner({beta, alpha});
  RatPoly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * inner;
    acc += RatPoly::constant(*it);
  }
  return acc;
}

RatPoly& RatPoly::operator+=(const RatPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

RatPoly& RatPoly::operator*=(const Rational& s) {
  if (s.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return RatPoly(std::move(c));
}

Rational poly_eval(const RatPoly& p, const Rational& x) { return p(x); }

Rational integrate_on(const RatPoly& p, const Rational& a, const Rational& b) {
  if (b < a) {
    throw std::invalid_argument("integrate_on: a > b");
  }
  const RatPoly anti = p.antiderivative();
  return anti(b) - anti(a);
}

}  // namespace psiac
