#include "psiac/dg_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace psiac {

Mesh::Mesh(Rational a, Rational b, std::size_t cells)
    : a_(std::move(a)), b_(std::move(b)), cells_(cells) {
  if (cells_ == 0) {
    throw std::invalid_argument("Mesh: need at least one cell");
  }
  if (!(a_ < b_)) {
    throw std::invalid_argument("Mesh: need a < b");
  }
  h_ = (b_ - a_) / Rational(static_cast<long>(cells_));
  a_d_ = a_.to_double();
  b_d_ = b_.to_double();
  h_d_ = h_.to_double();
}

std::vector<Rational> Mesh::prototype_breakpoints() const {
  std::vector<Rational> s;
  s.reserve(cells_ + 1);
  const Rational s0 = a_ / h_;
  for (std::size_t i = 0; i <= cells_; ++i) s.push_back(s0 + Rational(static_cast<long>(i)));
  return s;
}

std::size_t Mesh::cell_of(double x) const {
  const double c = std::floor((x - a_d_) / h_d_);
  if (c < 0.0) return 0;
  return std::min(static_cast<std::size_t>(c), cells_ - 1);
}

std::size_t Mesh::cell_of(const Rational& x) const {
  const mpz_class c = ((x - a_) / h_).floor();
  if (c < 0) return 0;
  if (c >= static_cast<unsigned long>(cells_)) return cells_ - 1;
  return static_cast<std::size_t>(c.get_ui());
}

double bernstein_eval(std::span<const double> coeffs, double y) {
  double buf[32];
  const std::size_t n = coeffs.size();
  if (n > 32) {
    throw std::invalid_argument("bernstein_eval: degree too large");
  }
  std::copy(coeffs.begin(), coeffs.end(), buf);
  for (std::size_t r = 1; r < n; ++r)
    for (std::size_t i = 0; i + r < n; ++i) buf[i] = (1.0 - y) * buf[i] + y * buf[i + 1];
  return buf[0];
}

Rational bernstein_eval(std::span<const Rational> coeffs, const Rational& y) {
  std::vector<Rational> buf(coeffs.begin(), coeffs.end());
  const Rational one_minus = Rational(1) - y;
  for (std::size_t r = 1; r < buf.size(); ++r)
    for (std::size_t i = 0; i + r < buf.size(); ++i) buf[i] = one_minus * buf[i] + y * buf[i + 1];
  return buf.empty() ? Rational(0) : buf[0];
}

double eval_in_cell(const DGField<double>& u, std::size_t cell, double y) {
  return bernstein_eval(u.cell_coeffs(cell), y);
}

double eval(const DGField<double>& u, double x) {
  const std::size_t c = u.mesh.cell_of(x);
  const double y = (x - u.mesh.a_d()) / u.mesh.h_d() - static_cast<double>(c);
  return eval_in_cell(u, c, y);
}

Rational eval(const DGField<Rational>& u, const Rational& x) {
  const std::size_t c = u.mesh.cell_of(x);
  const Rational y = (x - u.mesh.cell_lower(c)) / u.mesh.h();
  return bernstein_eval(u.cell_coeffs(c), y);
}

DGField<double> to_double(const DGField<Rational>& u) {
  DGField<double> out(u.mesh, u.degree);
  for (std::size_t i = 0; i < u.coeffs.size(); ++i) out.coeffs[i] = u.coeffs[i].to_double();
  out.time = u.time;
  return out;
}

}  // namespace psiac
