#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "psiac/rational.hpp"

namespace psiac {

/// Uniform partition of [a, b] into N cells of width h = (b - a) / N. The
/// prototype breakpoints are a/h + i, i = 0..N.
class Mesh {
 public:
  Mesh(Rational a, Rational b, std::size_t cells);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  std::size_t cells() const { return cells_; }
  const Rational& h() const { return h_; }
  double a_d() const { return a_d_; }
  double b_d() const { return b_d_; }
  double h_d() const { return h_d_; }

  std::vector<Rational> prototype_breakpoints() const;
  /// Physical left end of cell i.
  Rational cell_lower(std::size_t i) const { return a_ + h_ * Rational(static_cast<long>(i)); }
  /// Cell containing x (half-open, the last cell also owns b); clamps outside.
  std::size_t cell_of(double x) const;
  std::size_t cell_of(const Rational& x) const;

  friend bool operator==(const Mesh& l, const Mesh& r) {
    return l.a_ == r.a_ && l.b_ == r.b_ && l.cells_ == r.cells_;
  }

 private:
  Rational a_, b_, h_;
  std::size_t cells_;
  double a_d_, b_d_, h_d_;
};

/// Piecewise Bernstein-Bezier field: coeffs[cell * (degree+1) + l].
template <class T>
struct DGField {
  Mesh mesh;
  int degree;
  std::vector<T> coeffs;
  double time = 0.0;

  DGField(Mesh m, int d) : mesh(std::move(m)), degree(d), coeffs(mesh.cells() * static_cast<std::size_t>(d + 1)) {}

  std::size_t dofs_per_cell() const { return static_cast<std::size_t>(degree) + 1; }
  T& at(std::size_t cell, int l) { return coeffs[cell * dofs_per_cell() + static_cast<std::size_t>(l)]; }
  const T& at(std::size_t cell, int l) const { return coeffs[cell * dofs_per_cell() + static_cast<std::size_t>(l)]; }
  std::span<const T> cell_coeffs(std::size_t cell) const {
    return {coeffs.data() + cell * dofs_per_cell(), dofs_per_cell()};
  }
};

/// de Casteljau evaluation of Bernstein coefficients at y in [0, 1].
double bernstein_eval(std::span<const double> coeffs, double y);
Rational bernstein_eval(std::span<const Rational> coeffs, const Rational& y);

double eval(const DGField<double>& u, double x);
Rational eval(const DGField<Rational>& u, const Rational& x);
/// Value inside a given cell at local coordinate y in [0, 1].
double eval_in_cell(const DGField<double>& u, std::size_t cell, double y);

DGField<double> to_double(const DGField<Rational>& u);

}  // namespace psiac
