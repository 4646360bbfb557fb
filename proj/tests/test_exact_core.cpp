#include <doctest.h>

#include <random>

#include "feq/poly.hpp"
#include "feq/qmatrix.hpp"
#include "feq/rational.hpp"
#include "support/generators.hpp"

using namespace feq;

namespace {

Poly t() { return Poly::variable(1, 0); }
Poly one() { return Poly::constant(1, 1); }

}  // namespace

TEST_CASE("rationals are kept in lowest terms") {
  CHECK(Rational(6, 4).str() == "3/2");
  CHECK(Rational(3, -6).str() == "-1/2");
  CHECK(Rational(0, 7).str() == "0");
  CHECK(Rational(0, 7).denominator() == 1);
  CHECK(Rational(-4, 2).is_integer());
  CHECK(Rational::parse("-10/4") == Rational(-5, 2));
  CHECK(Rational::parse("+3") == Rational(3));
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS(Rational(0).inverse());
}

TEST_CASE("equal rationals print identically") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> small(-40, 40);
  std::uniform_int_distribution<long> scale(1, 30);
  for (int i = 0; i < 200; ++i) {
    const long num = small(rng);
    const long den = scale(rng);
    const long k = scale(rng) * (i % 2 ? -1 : 1);
    const Rational a(num, den);
    const Rational b(num * k, den * k);
    CHECK(a == b);
    CHECK(a.str() == b.str());
    CHECK(gcd(a.numerator(), a.denominator()) == 1);
    CHECK(a.denominator() > 0);
  }
}

TEST_CASE("rational arithmetic and powers") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(3, 4).pow(2) == Rational(9, 16));
  CHECK(Rational(3, 4).pow(-2) == Rational(16, 9));
  CHECK(Rational(2).pow(0) == Rational(1));
  CHECK(Rational(-2, 3).abs() == Rational(2, 3));
  CHECK(Rational(-1, 3) < Rational(1, 4));
  CHECK(lcm(mpz_class(4), mpz_class(6)) == 12);
}

TEST_CASE("binomial coefficients") {
  CHECK(binom(5, 2) == Rational(10));
  for (unsigned n = 0; n < 8; ++n) CHECK(binom(n, 0) == Rational(1));
  CHECK(binom(4, 2) == Rational(6));
  CHECK(binom(3, 5) == Rational(0));
  CHECK(binom(40, 20) == Rational::parse("137846528820"));
}

TEST_CASE("polynomial ring operations") {
  SUBCASE("difference of squares") {
    CHECK(poly_arith(PolyOp::mul, t() + one(), t() - one()) == t() * t() - one());
  }
  SUBCASE("additive identity") {
    const Poly p = Poly::variable_power(1, 0, 3) * Rational(2, 3) + one();
    CHECK(poly_arith(PolyOp::add, p, Poly(1)) == p);
  }
  SUBCASE("square of a binomial in two variables") {
    const Poly t1 = Poly::variable(2, 0);
    const Poly t2 = Poly::variable(2, 1);
    const Poly expected = t1 * t1 + Rational(2) * t1 * t2 + t2 * t2;
    CHECK(poly_arith(PolyOp::mul, t1 + t2, t1 + t2) == expected);
    CHECK(expected.str() == "t1^2 + 2*t1*t2 + t2^2");
  }
  SUBCASE("arity mismatch is rejected") {
    CHECK_THROWS_AS(poly_arith(PolyOp::add, Poly(1), Poly(2)), std::invalid_argument);
  }
  SUBCASE("subtraction cancels to zero") {
    const Poly p = t() * t() + one();
    CHECK(poly_arith(PolyOp::sub, p, p).is_zero());
    CHECK(poly_arith(PolyOp::sub, p, p).str() == "0");
  }
}

TEST_CASE("canonical polynomial rendering") {
  Poly p(2);
  p.add_term(Monomial({2, 1}), Rational(2));
  p.add_term(Monomial({0, 0}), Rational(-1, 3));
  CHECK(p.str() == "2*t1^2*t2 - 1/3");
  CHECK((Rational(-1) * t()).str() == "-t");
  CHECK(Poly::variable_power(1, 0, 3).partial(0) == Rational(3) * t() * t());
  CHECK(Poly(1).degree() == -1);
  CHECK(monomials_up_to(2, 2).size() == 6);
}

TEST_CASE("stored coefficients are never zero") {
  Poly p = t();
  p.add_term(Monomial({1}), Rational(-1));
  CHECK(p.is_zero());
  CHECK(p.terms().empty());
}

TEST_CASE("distributivity holds exactly on random polynomials") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 100; ++i) {
    const std::size_t arity = 1 + i % 3;
    const Poly a = testing::random_poly(rng, arity, 3, 4);
    const Poly b = testing::random_poly(rng, arity, 3, 4);
    const Poly c = testing::random_poly(rng, arity, 3, 4);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("linear solve: identity system") {
  const auto r = qmat_solve(QMatrix::identity(3), {1, 2, 3});
  REQUIRE(std::holds_alternative<UniqueSolution>(r));
  CHECK(std::get<UniqueSolution>(r).x == std::vector<Rational>{1, 2, 3});
}

TEST_CASE("linear solve: recovery-style triangular system") {
  // 5f + 2g = 1, 3g = -1
  const QMatrix a{{5, 2}, {0, 3}};
  const auto r = qmat_solve(a, {1, -1});
  REQUIRE(std::holds_alternative<UniqueSolution>(r));
  CHECK(std::get<UniqueSolution>(r).x == std::vector<Rational>{Rational(1, 3), Rational(-1, 3)});
}

TEST_CASE("linear solve: rank one system reports its kernel") {
  const QMatrix a{{1, 1}, {2, 2}};
  const auto r = qmat_solve(a, {0, 0});
  REQUIRE(std::holds_alternative<AffineSolution>(r));
  const auto& sol = std::get<AffineSolution>(r);
  REQUIRE(sol.kernel.size() == 1);
  const auto& k = sol.kernel[0];
  CHECK(k[0] == -k[1]);
  CHECK(!k[0].is_zero());
  CHECK(sol.particular == std::vector<Rational>{0, 0});
}

TEST_CASE("linear solve: inconsistency is a result, not an error") {
  const QMatrix a{{1, 1}, {1, 1}};
  CHECK(std::holds_alternative<Inconsistent>(qmat_solve(a, {1, 2})));
}

TEST_CASE("linear solve: returned solutions satisfy the system exactly") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-3, 3);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t rows = dim(rng), cols = dim(rng);
    QMatrix a(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) a.at(r, c) = entry(rng);
    // consistent right-hand side from a random vector
    std::vector<Rational> x0(cols);
    for (auto& v : x0) v = entry(rng);
    const std::vector<Rational> b = a * x0;
    const auto result = qmat_solve(a, b);
    REQUIRE(!std::holds_alternative<Inconsistent>(result));
    if (const auto* u = std::get_if<UniqueSolution>(&result)) {
      CHECK(a * u->x == b);
    } else {
      const auto& aff = std::get<AffineSolution>(result);
      CHECK(a * aff.particular == b);
      for (const auto& k : aff.kernel) CHECK(a * k == std::vector<Rational>(rows, Rational(0)));
      std::vector<std::size_t> pivots;
      rref(a, &pivots);
      CHECK(aff.kernel.size() == cols - pivots.size());
    }
  }
}

TEST_CASE("row reduction") {
  std::vector<std::size_t> pivots;
  const QMatrix r = rref(QMatrix{{2, 4, 2}, {1, 2, 3}}, &pivots);
  CHECK(r == QMatrix{{1, 2, 0}, {0, 0, 1}});
  CHECK(pivots == std::vector<std::size_t>{0, 2});
  CHECK(kernel_basis(QMatrix{{2, 4, 2}, {1, 2, 3}}) == std::vector<std::vector<Rational>>{{-2, 1, 0}});
}
