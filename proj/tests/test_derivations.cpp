#include <doctest.h>

#include <random>

#include "feq/derivations.hpp"
#include "support/generators.hpp"

using namespace feq;

namespace {

Poly t() { return Poly::variable(1, 0); }
Poly tp(std::uint32_t e) { return Poly::variable_power(1, 0, e); }
Poly c(long v) { return Poly::constant(1, v); }
BasicDerivation d() { return BasicDerivation::partial(1, 0); }

}  // namespace

TEST_CASE("applying operators") {
  CHECK(DiffOperator::of(d()).apply(tp(3)) == Rational(3) * tp(2));
  CHECK(DiffOperator::power(d(), 2).apply(t() * t()) == c(2));
  const Poly p = tp(4) + Rational(1, 2) * t();
  CHECK(DiffOperator::identity(1).apply(p) == p);
  CHECK(DiffOperator::zero(1).apply(p).is_zero());
  CHECK_THROWS_AS(DiffOperator::of(BasicDerivation::partial(2, 0)).apply(p), std::invalid_argument);
}

TEST_CASE("derivations with polynomial coefficients") {
  const BasicDerivation euler({t()});  // t d/dt
  CHECK(euler(tp(3)) == Rational(3) * tp(3));
  CHECK(euler(c(5)).is_zero());
  const DiffOperator twice = DiffOperator::of(euler).compose(DiffOperator::of(euler));
  CHECK(twice.apply(tp(2)) == Rational(4) * tp(2));
  CHECK(twice.order() == 2);
}

TEST_CASE("defect") {
  SUBCASE("a derivation has zero defect") {
    const AdditiveMap a(DiffOperator::of(d()));
    CHECK(defect(a, tp(2) + c(1), tp(3)).is_zero());
  }
  SUBCASE("second power of d at t, t") {
    CHECK(defect(AdditiveMap(DiffOperator::power(d(), 2)), t(), t()) == c(2));
  }
  SUBCASE("identity at t, t") {
    CHECK(defect(AdditiveMap::identity(1), t(), t()) == Rational(-1) * tp(2));
  }
}

TEST_CASE("every basic derivation has zero defect on samples") {
  std::mt19937 rng(5);
  for (int i = 0; i < 40; ++i) {
    const std::size_t arity = 1 + i % 2;
    std::vector<Poly> coeffs;
    for (std::size_t k = 0; k < arity; ++k) coeffs.push_back(testing::random_poly(rng, arity, 2, 2));
    const AdditiveMap a(DiffOperator::of(BasicDerivation(coeffs)));
    const Poly x = testing::random_poly(rng, arity, 3, 3);
    const Poly y = testing::random_poly(rng, arity, 3, 3);
    CHECK(defect(a, x, y).is_zero());
  }
}

TEST_CASE("Leibniz expansion") {
  CHECK(leibniz_expand(d(), 2, t(), tp(2)) == Rational(6) * t());
  CHECK(leibniz_expand(d(), 2, t(), tp(2)) == DiffOperator::power(d(), 2).apply(tp(3)));
  const Poly x = tp(2) + c(3);
  const Poly y = tp(5) - t();
  CHECK(leibniz_expand(d(), 0, x, y) == x * y);
  CHECK(leibniz_expand(d(), 1, x, y) == d()(x) * y + x * d()(y));
}

TEST_CASE("Leibniz expansion matches d^k on random products") {
  std::mt19937 rng(99);
  for (int i = 0; i < 30; ++i) {
    const std::size_t arity = 1 + i % 2;
    const BasicDerivation dd = BasicDerivation::partial(arity, i % arity);
    const Poly x = testing::random_poly(rng, arity, 4, 3);
    const Poly y = testing::random_poly(rng, arity, 4, 3);
    for (unsigned k = 0; k <= 4; ++k) CHECK(leibniz_expand(dd, k, x, y) == DiffOperator::power(dd, k).apply(x * y));
  }
}

TEST_CASE("order identity certificates") {
  const AdditiveMap d2(DiffOperator::power(d(), 2));
  CHECK(order_check(d2, 2, 3));
  CHECK_FALSE(order_check(d2, 1, 3));
  const auto witness = order_violation(d2, 1, 3);
  REQUIRE(witness.has_value());
  CHECK(witness->size() == 2);
  for (unsigned bound = 1; bound <= 4; ++bound) CHECK(order_check(AdditiveMap::zero(1), 0, bound));
  CHECK_FALSE(order_check(AdditiveMap::identity(1), 0, 2));
  // the identity is a differential operator of every order, but not a derivation of any
  CHECK_FALSE(order_check(AdditiveMap::identity(1), 3, 2));
}

TEST_CASE("powers of d are strict members of their order") {
  for (unsigned n = 1; n <= 3; ++n) {
    const AdditiveMap dn(DiffOperator::power(d(), n));
    CHECK(order_check(dn, n, 3));
    CHECK_FALSE(order_check(dn, n - 1, 3));
  }
}

TEST_CASE("order certificates are monotone") {
  const std::vector<DiffOperator> ops{
      DiffOperator::of(d()), DiffOperator::power(d(), 2), DiffOperator::power(d(), 3),
      parse_operator("d1.d2 + 2*d1", 2), parse_operator("d1.d1.d2 - d2", 2)};
  for (const auto& op : ops) {
    const AdditiveMap a(op);
    // a bound below the operator order lets it vanish on every sample, which
    // certifies nothing
    for (unsigned n = 0; n < 4; ++n)
      if (order_check(a, n, 3)) CHECK(order_check(a, n + 1, 3));
  }
  CHECK(order_check(AdditiveMap(parse_operator("d1.d2", 2)), 2, 2));
  CHECK_FALSE(order_check(AdditiveMap(parse_operator("d1.d2", 2)), 1, 2));
}

TEST_CASE("multisets visited in non-decreasing order") {
  std::vector<std::vector<std::size_t>> seen;
  for_each_multiset(3, 2, [&](const std::vector<std::size_t>& idx) {
    seen.push_back(idx);
    return true;
  });
  CHECK(seen.size() == 6);
  CHECK(seen.front() == std::vector<std::size_t>{0, 0});
  CHECK(seen.back() == std::vector<std::size_t>{2, 2});
}

TEST_CASE("operator text") {
  const DiffOperator op = parse_operator("3/2*d1.d2 + d1 - id", 2);
  CHECK(op.str() == "3/2*d1∘d2 + d1 - id");
  CHECK(op.order() == 2);
  CHECK(op.includes_identity());
  CHECK(parse_operator("d1∘d1", 1).apply(tp(3)) == Rational(6) * t());
  CHECK(parse_operator("0", 1).is_zero());
  CHECK(parse_operator("-d1", 1).apply(t()) == c(-1));
  CHECK_THROWS_AS(parse_operator("d3", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_operator("d1 +", 1), std::invalid_argument);
  CHECK_THROWS_AS(parse_operator("q", 1), std::invalid_argument);
}

TEST_CASE("normalization sorts commuting partial words") {
  const DiffOperator a = parse_operator("d2.d1 + d1.d2", 2).normalized();
  CHECK(a.str() == "2*d1∘d2");
  CHECK(parse_operator("d1 - d1", 1).normalized().is_zero());
}
