#include <doctest.h>

#include <algorithm>
#include <random>

#include "psiac/errors.hpp"
#include "psiac/rat_matrix.hpp"
#include "psiac/rat_poly.hpp"
#include "psiac/rational.hpp"

using namespace psiac;

namespace {

Rational random_rational(std::mt19937& rng, int span = 9) {
  std::uniform_int_distribution<long> num(-span, span), den(1, span);
  return Rational(num(rng), den(rng));
}

bool lowest_terms(const Rational& q) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), q.numerator().get_mpz_t(), q.denominator().get_mpz_t());
  return g == 1 && q.denominator() > 0;
}

// Determinant by cofactor expansion along the first row.
Rational det(const RatMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  Rational s;
  for (std::size_t j = 0; j < n; ++j) {
    RatMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = a(r, c);
    const Rational term = a(0, j) * det(minor);
    s = (j % 2 == 0) ? s + term : s - term;
  }
  return s;
}

}  // namespace

TEST_CASE("Rational normal form") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, -6).to_string() == "-1/2");
  CHECK(Rational(0, 7).to_string() == "0/1");
  CHECK(Rational::parse("-6/8") == Rational(-3, 4));
  CHECK(Rational::parse("5") == Rational(5));
  CHECK_THROWS(Rational(1, 0));
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK(Rational::from_double(0.375) == Rational(3, 8));
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(7, 2).ceil() == 4);
  CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
}

TEST_CASE("Rational results stay in lowest terms") {
  std::mt19937 rng(17);
  for (int i = 0; i < 500; ++i) {
    const Rational a = random_rational(rng), b = random_rational(rng);
    CHECK(lowest_terms(a + b));
    CHECK(lowest_terms(a - b));
    CHECK(lowest_terms(a * b));
    if (!b.is_zero()) CHECK(lowest_terms(a / b));
  }
}

TEST_CASE("binom") {
  CHECK(binom(4, 2) == 6);
  CHECK(binom(3, 0) == 1);
  CHECK(binom(5, 6) == 0);
  CHECK(binom(5, -1) == 0);
  for (long n = 1; n < 12; ++n)
    for (long k = 1; k <= n; ++k) CHECK(binom(n, k) == binom(n - 1, k - 1) + binom(n - 1, k));
}

TEST_CASE("rat_solve examples") {
  std::mt19937 rng(3);
  RatMatrix b(3, 2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) b(i, j) = random_rational(rng);
  CHECK(rat_solve(RatMatrix::identity(3), b) == b);

  RatMatrix diag(2, 2, {2, 0, 0, 4});
  CHECK(rat_solve(diag, RatMatrix::identity(2)) == RatMatrix(2, 2, {Rational(1, 2), 0, 0, Rational(1, 4)}));

  RatMatrix hilbert(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) hilbert(i, j) = Rational(1, static_cast<long>(i + j + 1));
  const RatMatrix inv = rat_solve(hilbert, RatMatrix::identity(4));
  // Inverse by cofactors: X(i,j) = (-1)^(i+j) det(minor_ji) / det(H).
  const Rational d = det(hilbert);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      RatMatrix minor(3, 3);
      for (std::size_t r = 0, rr = 0; r < 4; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, cc = 0; c < 4; ++c)
          if (c != i) minor(rr, cc++) = hilbert(r, c);
        ++rr;
      }
      Rational cof = det(minor) / d;
      if ((i + j) % 2) cof = -cof;
      CHECK(inv(i, j) == cof);
      CHECK(inv(i, j).is_integer());
    }
  }
  CHECK(inv(0, 0) == 16);
  CHECK(inv(3, 3) == 2800);
}

TEST_CASE("rat_solve rejects singular systems") {
  RatMatrix a(3, 3, {1, 2, 3, 2, 4, 6, 1, 0, 1});
  CHECK_THROWS_AS(rat_solve(a, RatMatrix::identity(3)), SingularMatrix);
  CHECK_THROWS(rat_solve(RatMatrix(2, 3), RatMatrix::identity(2)));
}

TEST_CASE("random inverses multiply back to the identity") {
  std::mt19937 rng(2024);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      RatMatrix a(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = random_rational(rng);
      RatMatrix x;
      try {
        x = rat_solve(a, RatMatrix::identity(n));
      } catch (const SingularMatrix&) {
        continue;
      }
      CHECK(a * x == RatMatrix::identity(n));
      CHECK(x * a == RatMatrix::identity(n));
    }
  }
}

TEST_CASE("poly_eval") {
  CHECK(poly_eval(RatPoly(), 5) == 0);
  CHECK(poly_eval(RatPoly::monomial(2), Rational(3, 2)) == Rational(9, 4));
  CHECK(poly_eval(RatPoly{1, -2, 1}, 1) == 0);
  CHECK(RatPoly{0, 0, 0}.is_zero());
  CHECK(RatPoly{1, 2, 0}.degree() == 1);
}

TEST_CASE("poly arithmetic and integration") {
  CHECK(integrate_on(RatPoly{1}, 0, 1) == 1);
  CHECK(integrate_on(RatPoly::monomial(2), 0, 1) == Rational(1, 3));
  CHECK(integrate_on(RatPoly{0, 1} * RatPoly{1, -1}, 0, 1) == Rational(1, 6));
  CHECK(RatPoly{1, 1} * RatPoly{1, -1} == RatPoly{1, 0, -1});
  CHECK(RatPoly{1, 1} + RatPoly{-1, -1} == RatPoly());
  CHECK_THROWS(integrate_on(RatPoly{1}, 1, 0));
  CHECK(RatPoly{1, 2, 3}.derivative() == RatPoly{2, 6});
  CHECK(RatPoly::shifted_power(2, 2) == RatPoly{4, -4, 1});
  CHECK(RatPoly{0, 1}.compose_affine(3, 1) == RatPoly{1, 3});

  std::mt19937 rng(11);
  for (int i = 0; i < 50; ++i) {
    std::vector<Rational> c(5);
    for (auto& v : c) v = random_rational(rng);
    const RatPoly p(c);
    std::vector<Rational> ends{random_rational(rng), random_rational(rng), random_rational(rng)};
    std::sort(ends.begin(), ends.end());
    const Rational &a = ends[0], &b = ends[1], &e = ends[2];
    CHECK(integrate_on(p, a, b) + integrate_on(p, b, e) == integrate_on(p, a, e));
    const Rational x = random_rational(rng);
    CHECK(p.antiderivative().derivative() == p);
    CHECK(p.compose_affine(2, x)(Rational(1, 3)) == p(Rational(2, 3) + x));
  }
}
