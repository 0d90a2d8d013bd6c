#pragma once

// JSON views of filters and filtered fields. Rationals are "p/q" strings.

#include <span>

#include <json.hpp>

#include "psiac/kernel.hpp"
#include "psiac/psiac.hpp"
#include "psiac/rat_matrix.hpp"
#include "psiac/rational.hpp"

namespace psiac {

nlohmann::json rational_json(const Rational& q);
nlohmann::json rational_json(std::span<const Rational> v);
nlohmann::json rational_json(const RatMatrix& m);

/// Knots, index set, c_xi polynomials at h = 1 (outer index B-spline,
/// inner index power of xi) and, for one-sided filters, Q on unit cells
/// with the window at the domain end.
nlohmann::json dump_filter(const FilterSpec& spec);

/// Boundary polynomials, region breakpoints, seam values and samples at the
/// given offsets.
nlohmann::json filtered_field_json(const FilteredField<double>& f, std::span<const Rational> offsets);
nlohmann::json filtered_field_json(const FilteredField<Rational>& f, std::span<const Rational> offsets);

}  // namespace psiac
