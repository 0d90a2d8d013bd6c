#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "psiac/errors.hpp"
#include "psiac/kernel.hpp"

using namespace psiac;

namespace {

const FilterFamily kFamilies[] = {FilterFamily::RS, FilterFamily::SRV, FilterFamily::RLKV, FilterFamily::MultiKnot,
                                  FilterFamily::Symmetric};

std::vector<FilterSpec> catalog(int d) {
  std::vector<FilterSpec> out;
  for (FilterFamily f : kFamilies) {
    if (f == FilterFamily::Symmetric) {
      out.push_back(filter_catalog(f, d, Side::Symmetric));
    } else {
      out.push_back(filter_catalog(f, d, Side::Left));
      out.push_back(filter_catalog(f, d, Side::Right));
    }
  }
  return out;
}

FilterSpec with_knots(const FilterSpec& s, const KnotVector& knots) {
  return FilterSpec(FilterFamily::Custom, s.kernel_degree(), s.index_set(), knots, s.side(), s.dg_degree());
}

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
  return Rational(num(rng), den(rng));
}

Rational random_positive(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(1, 20), den(1, 9);
  return Rational(num(rng), den(rng));
}

std::vector<Rational> ints(std::initializer_list<long> v) { return std::vector<Rational>(v.begin(), v.end()); }

}  // namespace

TEST_CASE("catalog recipes") {
  const FilterSpec srv = filter_catalog(FilterFamily::SRV, 1, Side::Left);
  CHECK(srv.kernel_degree() == 1);
  CHECK(srv.reproduction_degree() == 4);
  CHECK(srv.knots() == KnotVector(ints({-3, -2, -1, 0, 1, 2, 3})));
  CHECK(srv.last_knot() == srv.index_set().back() + srv.kernel_degree() + 1);

  const FilterSpec rlkv = filter_catalog(FilterFamily::RLKV, 1, Side::Left);
  CHECK(rlkv.knots() == KnotVector(ints({-2, -1, 0, 1, 2, 2})));
  CHECK(rlkv.reproduction_degree() == 3);
  CHECK(filter_catalog(FilterFamily::RLKV, 2, Side::Left).index_set() == std::vector<int>{0, 1, 2, 3, 4, 6});

  const FilterSpec mk = filter_catalog(FilterFamily::MultiKnot, 1, Side::Left);
  CHECK(mk.knots() == KnotVector(ints({-2, -1, 0, 1, 1, 2, 2})));
  CHECK(mk.kernel_degree() == 1);

  const FilterSpec sym = filter_catalog(FilterFamily::Symmetric, 1, Side::Symmetric);
  CHECK(sym.knots() == KnotVector(ints({-2, -1, 0, 1, 2})));
  CHECK(sym.index_set() == std::vector<int>{0, 1, 2});

  // Half-integral mu keeps rational knots.
  const FilterSpec rs2 = filter_catalog(FilterFamily::RS, 2, Side::Left);
  CHECK(rs2.knots().front() == Rational(-7, 2));
  CHECK(rs2.knots().back() == Rational(7, 2));

  CHECK_THROWS_AS(filter_catalog(FilterFamily::SRV, 0, Side::Left), UnsupportedDegree);
  CHECK_THROWS_AS(filter_catalog(FilterFamily::SRV, 1, Side::Symmetric), std::invalid_argument);
  CHECK_THROWS_AS(parse_family("nope"), std::invalid_argument);
  CHECK(parse_family("multiknot") == FilterFamily::MultiKnot);
  CHECK(parse_side("sym") == Side::Symmetric);
}

TEST_CASE("catalog structure for d = 1..3") {
  for (int d = 1; d <= 3; ++d) {
    for (const FilterSpec& s : catalog(d)) {
      CAPTURE(to_string(s.family()));
      CAPTURE(to_string(s.side()));
      CAPTURE(d);
      const int k = s.kernel_degree();
      const int r = s.reproduction_degree();
      CHECK(s.index_set().front() == 0);
      CHECK(s.last_knot() == s.index_set().back() + k + 1);
      switch (s.family()) {
        case FilterFamily::RS:
        case FilterFamily::Symmetric: CHECK(r == 2 * d); CHECK(k == d); break;
        case FilterFamily::SRV: CHECK(r == 4 * d); CHECK(k == d); break;
        case FilterFamily::RLKV: CHECK(r == 2 * d + 1); CHECK(k == d); break;
        case FilterFamily::MultiKnot: CHECK(r == 3 * d + 1); CHECK(k == 1); break;
        default: FAIL("unexpected family");
      }
      if (s.side() == Side::Right) {
        const FilterSpec left = filter_catalog(s.family(), d, Side::Left);
        CHECK(s.knots() == left.knots().reflected(0));
      }
    }
  }
}

TEST_CASE("reproduction matrix and coefficients for the symmetric d=1 kernel") {
  const FilterSpec sym = filter_catalog(FilterFamily::Symmetric, 1, Side::Symmetric);
  const RatMatrix m = build_reproduction_matrix(sym);
  CHECK(m == RatMatrix(3, 3, {1, 1, 1, -3, 0, 3, 7, 1, 7}));
  const ReproSystem rs = kernel_coefficients(sym);
  CHECK(rs.c0 == std::vector<Rational>{Rational(-1, 12), Rational(7, 6), Rational(-1, 12)});
  CHECK(rs.M * rs.M_inv == RatMatrix::identity(3));

  const FilterSpec box(FilterFamily::Custom, 0, {0}, KnotVector{0, 1}, Side::Symmetric, 0);
  CHECK(kernel_coefficients(box).c0 == std::vector<Rational>{1});
}

TEST_CASE("FilterSpec validation") {
  CHECK_THROWS(FilterSpec(FilterFamily::Custom, 1, {1, 2}, KnotVector{0, 1, 2, 3, 4}, Side::Symmetric, 1));
  CHECK_THROWS(FilterSpec(FilterFamily::Custom, 1, {0, 0}, KnotVector{0, 1, 2, 3}, Side::Symmetric, 1));
  CHECK_THROWS(FilterSpec(FilterFamily::Custom, 1, {0, 1}, KnotVector{0, 1, 2}, Side::Symmetric, 1));
  // A B-spline with zero-length support.
  CHECK_THROWS(FilterSpec(FilterFamily::Custom, 1, {0, 1}, KnotVector{0, 0, 0, 1}, Side::Symmetric, 1));
  CHECK_NOTHROW(FilterSpec(FilterFamily::Custom, 1, {0, 2}, KnotVector{0, 1, 2, 3, 4}, Side::Symmetric, 1));
}

TEST_CASE("catalog coefficients: M inverse, row zero, partition") {
  for (int d = 1; d <= 3; ++d) {
    for (const FilterSpec& s : catalog(d)) {
      const ReproSystem rs = kernel_coefficients(s);
      const std::size_t n = rs.M.rows();
      CHECK(rs.M * rs.M_inv == RatMatrix::identity(n));
      for (std::size_t j = 0; j < n; ++j) CHECK(rs.M(0, j) == 1);
      Rational sum;
      for (const auto& c : rs.c0) sum += c;
      CHECK(sum == 1);
    }
  }
}

TEST_CASE("Pascal shift matrix") {
  CHECK(pascal_shift_matrix(2, 4, 0) == RatMatrix::identity(5));
  CHECK(pascal_shift_matrix(1, 2, 1).column(0) == std::vector<Rational>{1, 3, 6});
  std::mt19937 rng(99);
  for (int i = 0; i < 20; ++i) {
    const int k = static_cast<int>(rng() % 4), r = static_cast<int>(rng() % 6);
    const Rational xi = random_rational(rng), eta = random_rational(rng);
    const std::size_t n = static_cast<std::size_t>(r) + 1;
    CHECK(pascal_shift_matrix(k, r, xi) * pascal_shift_matrix(k, r, -xi) == RatMatrix::identity(n));
    CHECK(pascal_shift_matrix(k, r, xi) * pascal_shift_matrix(k, r, eta) == pascal_shift_matrix(k, r, xi + eta));
  }
}

TEST_CASE("shifted and scaled knots") {
  std::mt19937 rng(1234);
  for (int d = 1; d <= 3; ++d) {
    for (const FilterSpec& s : catalog(d)) {
      const RatMatrix m = build_reproduction_matrix(s);
      const int k = s.kernel_degree(), r = s.reproduction_degree();
      for (int trial = 0; trial < 5; ++trial) {
        const Rational xi = random_rational(rng), h = random_positive(rng);
        CHECK(build_reproduction_matrix(with_knots(s, s.knots().shifted(xi))) == pascal_shift_matrix(k, r, xi) * m);
        std::vector<Rational> powers;
        for (int q = 0; q <= r; ++q) powers.push_back(h.pow(q));
        CHECK(build_reproduction_matrix(with_knots(s, s.knots().scaled(h))) == RatMatrix::diagonal(powers) * m);
      }
    }
  }
}

TEST_CASE("c_xi polynomials agree with direct solves on transformed knots") {
  std::mt19937 rng(77);
  for (int d = 1; d <= 2; ++d) {
    for (const FilterSpec& s : catalog(d)) {
      const auto c0 = kernel_coefficients(s).c0;
      const auto at_unit = shifted_scaled_coefficients(s, 1);
      for (std::size_t q = 0; q < c0.size(); ++q) {
        CHECK(at_unit[q](0) == c0[q]);
        CHECK(at_unit[q].degree() <= s.reproduction_degree());
      }
      for (int trial = 0; trial < 3; ++trial) {
        const Rational h = random_positive(rng), xi = random_rational(rng);
        const auto polys = shifted_scaled_coefficients(s, h);
        const auto direct = oracle::direct_coefficients(s, h, xi);
        for (std::size_t q = 0; q < polys.size(); ++q) CHECK(polys[q](xi) == direct[q]);
        // Scaling alone leaves the constant terms at c0.
        for (std::size_t q = 0; q < polys.size(); ++q) CHECK(polys[q](0) == c0[q]);
      }
    }
  }
}

TEST_CASE("monomial reproduction for every catalog filter") {
  for (int d = 1; d <= 3; ++d) {
    for (const FilterSpec& s : catalog(d)) {
      for (int delta = 0; delta <= s.reproduction_degree(); ++delta) {
        std::vector<Rational> want(static_cast<std::size_t>(delta) + 1);
        want.back() = 1;
        CHECK(oracle::reproduced_polynomial(s, delta) == want);
      }
    }
  }
}

TEST_CASE("boundary lambda pins the outer knot") {
  const Mesh m(0, 1, 10);
  for (int d = 1; d <= 3; ++d) {
    const FilterSpec l = filter_catalog(FilterFamily::SRV, d, Side::Left);
    const FilterSpec r = filter_catalog(FilterFamily::SRV, d, Side::Right);
    CHECK(boundary_lambda(l, m.a(), m.b(), m.h()) == l.knots().back());
    CHECK(boundary_lambda(r, m.a(), m.b(), m.h()) == r.knots().front() + 10);
  }
  CHECK(symmetric_half_width(1) == 2);
  CHECK(symmetric_half_width(2) == Rational(7, 2));
}
