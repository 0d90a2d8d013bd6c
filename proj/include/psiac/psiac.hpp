#pragma once

// Position-dependent filtering of Bernstein-Bezier DG output.
//
// A one-sided kernel over knots h t + x - h lambda touches the DG data only on
// the fixed window h [lambda - t_n, lambda - t_0]; the filtered value is then a
// single polynomial in x,
//
//   (u * f)(x) = u_I Q diag(h^-l) ((x - h lambda)^l)^T,
//   Q = T A M^-1 diag((-1)^l C(l+k+1, l)),
//
// where T holds the x-independent integrals of DG basis functions against the
// reflected B-splines and A is the reversal matrix. Everything up to the final
// contraction is exact.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "psiac/dg_field.hpp"
#include "psiac/kernel.hpp"
#include "psiac/rat_matrix.hpp"
#include "psiac/rational.hpp"

namespace psiac {

/// T with its row index set I: cells [first_cell, first_cell + cell_count)
/// in the mesh, (degree+1) Bernstein functions per cell, cell-major.
/// Column p belongs to B-spline index_set[r - p].
struct TMatrix {
  RatMatrix T;
  Rational lambda;
  std::size_t first_cell = 0;
  std::size_t cell_count = 0;
  int dg_degree = 0;
};

/// T over arbitrary rational prototype breakpoints s_{0:N}.
/// Throws MeshTooCoarse when the filter window leaves [s_0, s_N].
TMatrix build_T_general(const FilterSpec& spec, const Rational& lambda,
                        std::span<const Rational> breakpoints, int dg_degree);

/// Smallest integer >= t_n - t_0: the number of unit cells under the window.
std::size_t window_cells(const FilterSpec& spec);

/// T for unit cells with the window pinned to a domain endpoint. Rows run
/// over the window's cells from left to right, matching build_T_general.
RatMatrix build_T_uniform(const FilterSpec& spec, int dg_degree);

/// Banded closed forms built from M_d and the uniform B-spline's
/// Bernstein coefficients (left side).
RatMatrix closed_form_T_srv(int d);
RatMatrix closed_form_T_rlkv(int d);

struct ConvolutionMatrix {
  RatMatrix Q;
  /// Row-major double copy of Q, for floating-point contraction.
  std::vector<double> Q_double;
  Side side = Side::Left;
  Rational lambda;
  Rational h;
  std::size_t first_cell = 0;
  std::size_t cell_count = 0;
  int dg_degree = 0;
  /// Physical interval the polynomial is meant for, when known.
  std::optional<std::pair<Rational, Rational>> valid_range;
  /// Q re-expanded in z = (x - centre) / half_width. Near a boundary
  /// x - h lambda is several cells away from x, so the plain expansion
  /// cancels badly in double; the double path contracts with this one.
  RatMatrix Q_local;
  std::vector<double> Q_local_double;
  Rational centre;
  Rational half_width;

  int reproduction_degree() const { return static_cast<int>(Q.cols()) - 1; }
  /// h * lambda, the expansion point of the output polynomial.
  Rational shift() const { return h * lambda; }
};

/// The local frame defaults to centre h lambda, half-width h.
ConvolutionMatrix build_Q(const FilterSpec& spec, const TMatrix& t, const Rational& h);

/// Recentres the local frame on [lo, hi].
void set_local_frame(ConvolutionMatrix& q, const Rational& lo, const Rational& hi);

/// Q for a one-sided filter on a uniform mesh, with the boundary region
/// [a, a + h mu) or (b - h mu, b] as valid range, mu = (3d+1)/2.
ConvolutionMatrix boundary_convolution(const FilterSpec& spec, const Mesh& mesh, int dg_degree);

/// u_I: the coefficients of the DG field restricted to Q's rows.
template <class T>
std::vector<T> gather(const DGField<T>& u, const ConvolutionMatrix& q) {
  const std::size_t per = u.dofs_per_cell();
  const auto first = u.coeffs.begin() + static_cast<std::ptrdiff_t>(q.first_cell * per);
  return std::vector<T>(first, first + static_cast<std::ptrdiff_t>(q.cell_count * per));
}

/// Filtered output on one boundary region as a polynomial in (x - h lambda).
template <class T>
struct BoundaryPoly {
  /// value(x) = sum_l coefficients[l] (x - h lambda)^l
  std::vector<T> coefficients;
  /// Same polynomial in y = (x - h lambda) / h, i.e. u_I Q.
  std::vector<T> scaled;
  /// Same polynomial in z = (x - centre) / half_width, i.e. u_I Q_local.
  std::vector<T> local;
  Rational centre;
  Rational half_width;
  Rational lambda;
  Rational h;
  Side side = Side::Left;
  std::optional<std::pair<Rational, Rational>> valid_range;

  T operator()(const T& x) const { return derivative(x, 0); }
  T derivative(const T& x, int order) const;
  /// Batched evaluation; double only.
  void evaluate(std::span<const double> xs, std::span<double> out) const;
};

template <>
Rational BoundaryPoly<Rational>::derivative(const Rational& x, int order) const;
template <>
double BoundaryPoly<double>::derivative(const double& x, int order) const;
template <>
void BoundaryPoly<double>::evaluate(std::span<const double> xs, std::span<double> out) const;

BoundaryPoly<Rational> make_boundary_poly(std::span<const Rational> u_I, const ConvolutionMatrix& q);
BoundaryPoly<double> make_boundary_poly(std::span<const double> u_I, const ConvolutionMatrix& q);

/// Throws OutOfRegion when x lies outside q.valid_range.
Rational filter_eval(std::span<const Rational> u_I, const ConvolutionMatrix& q, const Rational& x);
double filter_eval(std::span<const double> u_I, const ConvolutionMatrix& q, double x);
Rational filter_deriv(std::span<const Rational> u_I, const ConvolutionMatrix& q, const Rational& x, int order);
double filter_deriv(std::span<const double> u_I, const ConvolutionMatrix& q, double x, int order);

/// Exact weights of the symmetric filter at local cell offset theta: the
/// filtered value at a + h (c + theta) is sum over cells m in
/// [c + first_offset, c + first_offset + cells) and l of u(m, l) W(m, l).
struct SymmetricStencil {
  long first_offset = 0;
  std::size_t cells = 0;
  std::vector<Rational> weights;
  std::vector<double> weights_double;
};

class SymmetricFilter {
 public:
  /// Catalog symmetric kernel of degree d applied to degree-d DG data.
  explicit SymmetricFilter(int d);

  const FilterSpec& spec() const { return spec_; }
  const std::vector<Rational>& coefficients() const { return c0_; }
  /// (3d+1)/2
  const Rational& half_width() const { return half_width_; }
  SymmetricStencil stencil(const Rational& theta) const;

 private:
  FilterSpec spec_;
  std::vector<Rational> c0_;
  Rational half_width_;
};

/// Exact symmetric filtering at x. Throws OutOfRegion when the kernel
/// support leaves [a, b].
Rational symmetric_filter_eval(const DGField<Rational>& u, const Rational& x);
double symmetric_filter_eval(const DGField<double>& u, const Rational& x);

enum class Region { Left, Interior, Right };

/// Boundary polynomials on [a, a + h mu) and (b - h mu, b], the symmetric
/// filter in between. No blending at the seams.
template <class T>
class FilteredField {
 public:
  FilteredField(DGField<T> u, const FilterSpec& left, const FilterSpec& right);

  const DGField<T>& field() const { return u_; }
  const BoundaryPoly<T>& left() const { return left_; }
  const BoundaryPoly<T>& right() const { return right_; }
  const Rational& interior_lower() const { return seam_lo_; }
  const Rational& interior_upper() const { return seam_hi_; }
  const FilterSpec& left_spec() const { return left_spec_; }
  const FilterSpec& right_spec() const { return right_spec_; }

  Region classify(const Rational& x) const;
  T operator()(const Rational& x) const;

  /// Values at a + h (c + theta) for every cell c and offset theta,
  /// cell-major.
  std::vector<T> sample(std::span<const Rational> offsets) const;

  struct Seam {
    Rational x;
    T boundary_value;
    T interior_value;
  };
  /// Both one-sided values at each of the two seams.
  std::vector<Seam> seams() const;

 private:
  T interior_value(std::size_t cell, const SymmetricStencil& s) const;

  DGField<T> u_;
  FilterSpec left_spec_;
  FilterSpec right_spec_;
  SymmetricFilter symmetric_;
  BoundaryPoly<T> left_;
  BoundaryPoly<T> right_;
  Rational seam_lo_;
  Rational seam_hi_;
};

/// Throws MeshTooCoarse when a filter window exceeds the domain.
template <class T>
FilteredField<T> filter_field(const DGField<T>& u, const FilterSpec& left, const FilterSpec& right) {
  return FilteredField<T>(u, left, right);
}

extern template class FilteredField<double>;
extern template class FilteredField<Rational>;

}  // namespace psiac
