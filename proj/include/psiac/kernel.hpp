#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psiac/rat_matrix.hpp"
#include "psiac/rat_poly.hpp"
#include "psiac/spline.hpp"

namespace psiac {

enum class Side { Left, Right, Symmetric };

enum class FilterFamily { RS, SRV, RLKV, MultiKnot, Symmetric, Custom };

std::string_view to_string(Side side);
std::string_view to_string(FilterFamily family);
/// Accepts "L"/"left", "R"/"right", "sym"/"symmetric" (case-insensitive).
Side parse_side(std::string_view text);
/// Accepts RS, SRV, RLKV, MULTIKNOT, SYMMETRIC (case-insensitive).
FilterFamily parse_family(std::string_view text);

/// Spline kernel sum_{j in index_set} c_j B(. | t_{j:j+k+1}) over prototype
/// knots t_{0:n}, n = index_set.back() + k + 1.
class FilterSpec {
 public:
  FilterSpec(FilterFamily family, int kernel_degree, std::vector<int> index_set, KnotVector knots,
             Side side, int dg_degree);

  FilterFamily family() const { return family_; }
  Side side() const { return side_; }
  int kernel_degree() const { return k_; }
  int reproduction_degree() const { return static_cast<int>(index_set_.size()) - 1; }
  /// Degree of the DG data the filter is designed for.
  int dg_degree() const { return dg_degree_; }
  const std::vector<int>& index_set() const { return index_set_; }
  const KnotVector& knots() const { return knots_; }
  /// n, the index of the last knot.
  int last_knot() const { return static_cast<int>(knots_.size()) - 1; }
  /// Knot window t_{j:j+k+1} of B-spline j.
  KnotVector window(int j) const;
  /// Width t_n - t_0 of the prototype support.
  Rational support_width() const { return knots_.back() - knots_.front(); }

 private:
  FilterFamily family_;
  int k_;
  std::vector<int> index_set_;
  KnotVector knots_;
  Side side_;
  int dg_degree_;
};

/// lambda_L = t_n + a/h, lambda_R = t_0 + b/h: the shift that pins the
/// kernel's outer knot to the domain endpoint.
Rational boundary_lambda(const FilterSpec& spec, const Rational& a, const Rational& b, const Rational& h);

struct ReproSystem {
  RatMatrix M;
  RatMatrix M_inv;
  std::vector<Rational> c0;
};

/// M(delta, q) = sum_{|w| = delta} t_{j:j+k+1}^w with j = index_set[q].
RatMatrix build_reproduction_matrix(const FilterSpec& spec);

/// Exact inverse and its first column. Throws SingularMatrix.
ReproSystem kernel_coefficients(const FilterSpec& spec);

/// Lower-triangular P with P(delta, beta) = C(delta+k+1, delta-beta) xi^(delta-beta).
RatMatrix pascal_shift_matrix(int k, int r, const Rational& xi);

/// diag((-1)^l C(l+k+1, l)), l = 0..r.
RatMatrix signed_binomial_diag(int k, int r);

/// Coefficients of the filter over knots h t + xi as polynomials in xi;
/// entry q belongs to B-spline index_set[q].
std::vector<RatPoly> shifted_scaled_coefficients(const FilterSpec& spec, const Rational& h);

/// Named filters for DG degree d. Throws UnsupportedDegree for d < 1 and
/// std::invalid_argument when the side does not fit the family.
FilterSpec filter_catalog(FilterFamily family, int d, Side side);

/// Half-width (3d+1)/2 of the symmetric kernel's prototype support.
Rational symmetric_half_width(int d);

}  // namespace psiac
