#include "psiac/kernel.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <utility>

#include "psiac/errors.hpp"

namespace psiac {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

/// start, start+1, ..., start+count-1
std::vector<Rational> unit_steps(const Rational& start, int count) {
  std::vector<Rational> t;
  t.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) t.push_back(start + Rational(i));
  return t;
}

std::vector<int> iota_indices(int first, int last) {
  std::vector<int> v;
  for (int i = first; i <= last; ++i) v.push_back(i);
  return v;
}

/// Right-sided counterpart of a left-sided kernel: knots reflected about
/// zero, B-spline j becomes j_r - j.
FilterSpec mirror(const FilterSpec& left) {
  const int jr = left.index_set().back();
  std::vector<int> idx;
  for (int j : left.index_set()) idx.push_back(jr - j);
  std::sort(idx.begin(), idx.end());
  return FilterSpec(left.family(), left.kernel_degree(), std::move(idx),
                    left.knots().reflected(Rational(0)), Side::Right, left.dg_degree());
}

}  // namespace

std::string_view to_string(Side side) {
  switch (side) {
    case Side::Left: return "L";
    case Side::Right: return "R";
    case Side::Symmetric: return "sym";
  }
  return "?";
}

std::string_view to_string(FilterFamily family) {
  switch (family) {
    case FilterFamily::RS: return "RS";
    case FilterFamily::SRV: return "SRV";
    case FilterFamily::RLKV: return "RLKV";
    case FilterFamily::MultiKnot: return "MULTIKNOT";
    case FilterFamily::Symmetric: return "SYMMETRIC";
    case FilterFamily::Custom: return "CUSTOM";
  }
  return "?";
}

Side parse_side(std::string_view text) {
  const std::string s = lower(text);
  if (s == "l" || s == "left") return Side::Left;
  if (s == "r" || s == "right") return Side::Right;
  if (s == "sym" || s == "symmetric") return Side::Symmetric;
  throw std::invalid_argument("unknown side '" + std::string(text) + "'");
}

FilterFamily parse_family(std::string_view text) {
  const std::string s = lower(text);
  if (s == "rs") return FilterFamily::RS;
  if (s == "srv") return FilterFamily::SRV;
  if (s == "rlkv") return FilterFamily::RLKV;
  if (s == "multiknot") return FilterFamily::MultiKnot;
  if (s == "symmetric") return FilterFamily::Symmetric;
  throw std::invalid_argument("unknown filter '" + std::string(text) + "'");
}

FilterSpec::FilterSpec(FilterFamily family, int kernel_degree, std::vector<int> index_set,
                       KnotVector knots, Side side, int dg_degree)
    : family_(family),
      k_(kernel_degree),
      index_set_(std::move(index_set)),
      knots_(std::move(knots)),
      side_(side),
      dg_degree_(dg_degree) {
  if (k_ < 0) {
    throw std::invalid_argument("FilterSpec: negative kernel degree");
  }
  if (index_set_.empty() || index_set_.front() != 0) {
    throw std::invalid_argument("FilterSpec: index set must start at 0");
  }
  for (std::size_t i = 1; i < index_set_.size(); ++i) {
    if (index_set_[i] <= index_set_[i - 1]) {
      throw std::invalid_argument("FilterSpec: index set must be strictly increasing");
    }
  }
  if (last_knot() != index_set_.back() + k_ + 1) {
    throw std::invalid_argument("FilterSpec: knot count must be index_set.back() + k + 2");
  }
  for (int j : index_set_) {
    const KnotVector w = window(j);
    if (w.front() == w.back()) {
      throw std::invalid_argument("FilterSpec: B-spline " + std::to_string(j) +
                                  " has zero-length support");
    }
  }
}

KnotVector FilterSpec::window(int j) const {
  return knots_.window(static_cast<std::size_t>(j), static_cast<std::size_t>(k_) + 2);
}

Rational boundary_lambda(const FilterSpec& spec, const Rational& a, const Rational& b,
                         const Rational& h) {
  switch (spec.side()) {
    case Side::Left: return spec.knots().back() + a / h;
    case Side::Right: return spec.knots().front() + b / h;
    case Side::Symmetric: break;
  }
  throw std::invalid_argument("boundary_lambda: symmetric filters have no boundary shift");
}

RatMatrix build_reproduction_matrix(const FilterSpec& spec) {
  const int r = spec.reproduction_degree();
  const auto n = static_cast<std::size_t>(r) + 1;
  RatMatrix m(n, n);
  for (std::size_t q = 0; q < n; ++q) {
    const KnotVector w = spec.window(spec.index_set()[q]);
    for (int delta = 0; delta <= r; ++delta) {
      m(static_cast<std::size_t>(delta), q) = complete_homogeneous(w.values(), delta);
    }
  }
  return m;
}

ReproSystem kernel_coefficients(const FilterSpec& spec) {
  ReproSystem sys;
  sys.M = build_reproduction_matrix(spec);
  sys.M_inv = rat_inverse(sys.M);
  sys.c0 = sys.M_inv.column(0);
  return sys;
}

RatMatrix pascal_shift_matrix(int k, int r, const Rational& xi) {
  const auto n = static_cast<std::size_t>(r) + 1;
  RatMatrix p(n, n);
  for (int delta = 0; delta <= r; ++delta)
    for (int beta = 0; beta <= delta; ++beta)
      p(static_cast<std::size_t>(delta), static_cast<std::size_t>(beta)) =
          binom(delta + k + 1, delta - beta) * xi.pow(delta - beta);
  return p;
}

RatMatrix signed_binomial_diag(int k, int r) {
  std::vector<Rational> d;
  for (int l = 0; l <= r; ++l) d.push_back((l % 2 == 0 ? Rational(1) : Rational(-1)) * binom(l + k + 1, l));
  return RatMatrix::diagonal(d);
}

std::vector<RatPoly> shifted_scaled_coefficients(const FilterSpec& spec, const Rational& h) {
  if (h.sign() <= 0) {
    throw std::invalid_argument("shifted_scaled_coefficients: h must be positive");
  }
  const int r = spec.reproduction_degree();
  const RatMatrix m_inv = rat_inverse(build_reproduction_matrix(spec));
  const RatMatrix scaled = m_inv * signed_binomial_diag(spec.kernel_degree(), r);
  std::vector<RatPoly> out;
  for (int q = 0; q <= r; ++q) {
    std::vector<Rational> c(static_cast<std::size_t>(r) + 1);
    for (int l = 0; l <= r; ++l) {
      c[static_cast<std::size_t>(l)] = scaled(static_cast<std::size_t>(q), static_cast<std::size_t>(l)) / h.pow(l);
    }
    out.emplace_back(std::move(c));
  }
  return out;
}

Rational symmetric_half_width(int d) { return Rational(3 * d + 1, 2); }

FilterSpec filter_catalog(FilterFamily family, int d, Side side) {
  if (d < 1) {
    throw UnsupportedDegree("filter_catalog: DG degree must be at least 1, got " + std::to_string(d));
  }
  const bool one_sided = side == Side::Left || side == Side::Right;
  if (family == FilterFamily::Symmetric && one_sided) {
    throw std::invalid_argument("filter_catalog: SYMMETRIC has no one-sided variant");
  }
  if (family != FilterFamily::Symmetric && !one_sided) {
    throw std::invalid_argument("filter_catalog: " + std::string(to_string(family)) +
                                " needs side L or R");
  }

  switch (family) {
    case FilterFamily::Symmetric:
    case FilterFamily::RS: {
      const Rational mu = symmetric_half_width(d);
      return FilterSpec(family, d, iota_indices(0, 2 * d), KnotVector(unit_steps(-mu, 3 * d + 2)), side, d);
    }
    case FilterFamily::SRV: {
      const Rational mu(5 * d + 1, 2);
      return FilterSpec(family, d, iota_indices(0, 4 * d), KnotVector(unit_steps(-mu, 5 * d + 2)), side, d);
    }
    case FilterFamily::RLKV: {
      const Rational mu = symmetric_half_width(d);
      std::vector<Rational> t = unit_steps(-mu, 3 * d + 1);
      for (int i = 0; i <= d; ++i) t.push_back(mu);
      std::vector<int> idx = iota_indices(0, 2 * d);
      idx.push_back(3 * d);
      FilterSpec left(family, d, std::move(idx), KnotVector(std::move(t)), Side::Left, d);
      return side == Side::Left ? left : mirror(left);
    }
    case FilterFamily::MultiKnot: {
      const Rational mu = symmetric_half_width(d);
      std::vector<Rational> t = unit_steps(-mu, 3 * d);
      t.push_back(mu - Rational(1));
      t.push_back(mu - Rational(1));
      t.push_back(mu);
      t.push_back(mu);
      const int splines = static_cast<int>(t.size()) - 2;
      FilterSpec left(family, 1, iota_indices(0, splines - 1), KnotVector(std::move(t)), Side::Left, d);
      return side == Side::Left ? left : mirror(left);
    }
    case FilterFamily::Custom: break;
  }
  throw std::invalid_argument("filter_catalog: CUSTOM filters are built from explicit knots");
}

}  // namespace psiac
