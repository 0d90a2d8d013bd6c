#include "psiac/io.hpp"

#include <string>

namespace psiac {

using nlohmann::json;

json rational_json(const Rational& q) { return q.to_string(); }

json rational_json(std::span<const Rational> v) {
  json out = json::array();
  for (const Rational& q : v) out.push_back(q.to_string());
  return out;
}

json rational_json(const RatMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(rational_json(m.row(i)));
  return out;
}

json dump_filter(const FilterSpec& spec) {
  json j;
  j["filter"] = std::string(to_string(spec.family()));
  j["d"] = spec.dg_degree();
  j["side"] = std::string(to_string(spec.side()));
  j["k"] = spec.kernel_degree();
  j["r"] = spec.reproduction_degree();
  j["knots"] = rational_json(spec.knots().values());
  j["index_set"] = spec.index_set();

  json coeffs = json::array();
  for (const RatPoly& p : shifted_scaled_coefficients(spec, Rational(1))) {
    json row = json::array();
    for (int l = 0; l <= spec.reproduction_degree(); ++l) row.push_back(p.coeff(l).to_string());
    coeffs.push_back(std::move(row));
  }
  j["coefficients"] = std::move(coeffs);

  if (spec.side() == Side::Symmetric) {
    j["Q"] = nullptr;
    return j;
  }
  // Unit cells 0..n0 with the window pinned to the near end.
  const std::size_t n0 = window_cells(spec);
  const Mesh mesh(Rational(0), Rational(static_cast<long>(n0)), n0);
  const ConvolutionMatrix q = boundary_convolution(spec, mesh, spec.dg_degree());
  j["lambda"] = q.lambda.to_string();
  j["Q"] = rational_json(q.Q);
  return j;
}

namespace {

json value_json(double v) { return v; }
json value_json(const Rational& v) { return v.to_string(); }

template <class T>
json boundary_json(const BoundaryPoly<T>& p) {
  json j;
  j["side"] = std::string(to_string(p.side));
  j["lambda"] = p.lambda.to_string();
  j["h"] = p.h.to_string();
  j["expansion_point"] = (p.h * p.lambda).to_string();
  json c = json::array();
  for (const T& v : p.coefficients) c.push_back(value_json(v));
  j["coefficients"] = std::move(c);
  if (p.valid_range) j["valid_range"] = {p.valid_range->first.to_string(), p.valid_range->second.to_string()};
  return j;
}

template <class T>
json field_json(const FilteredField<T>& f, std::span<const Rational> offsets) {
  json j;
  const Mesh& mesh = f.field().mesh;
  j["a"] = mesh.a().to_string();
  j["b"] = mesh.b().to_string();
  j["cells"] = mesh.cells();
  j["d"] = f.field().degree;
  j["left_filter"] = std::string(to_string(f.left_spec().family()));
  j["right_filter"] = std::string(to_string(f.right_spec().family()));
  j["regions"] = {mesh.a().to_string(), f.interior_lower().to_string(), f.interior_upper().to_string(),
                  mesh.b().to_string()};
  j["left"] = boundary_json(f.left());
  j["right"] = boundary_json(f.right());
  json seams = json::array();
  for (const auto& s : f.seams()) {
    seams.push_back({{"x", s.x.to_string()},
                     {"boundary_value", value_json(s.boundary_value)},
                     {"interior_value", value_json(s.interior_value)}});
  }
  j["seams"] = std::move(seams);
  j["offsets"] = rational_json(offsets);
  json samples = json::array();
  for (const T& v : f.sample(offsets)) samples.push_back(value_json(v));
  j["samples"] = std::move(samples);
  return j;
}

}  // namespace

json filtered_field_json(const FilteredField<double>& f, std::span<const Rational> offsets) {
  return field_json(f, offsets);
}

json filtered_field_json(const FilteredField<Rational>& f, std::span<const Rational> offsets) {
  return field_json(f, offsets);
}

}  // namespace psiac
