#include <doctest.h>

#include "feq/eqdsl.hpp"
#include "feq/spectral.hpp"
#include "support/oracles.hpp"

using namespace feq;

namespace {

QMatrix reference_m() {
  return Rational(1, 4) * QMatrix{{1, -2, 0, 0}, {0, 2, -3, 0}, {0, 0, 3, -4}, {0, 0, 0, 4}};
}

std::vector<Rational> last_column(const QMatrix& m) { return m.column(m.cols() - 1); }

AdditiveMap d_power(unsigned k) { return AdditiveMap(DiffOperator::power(BasicDerivation::partial(1, 0), k)); }

}  // namespace

TEST_CASE("transfer matrices") {
  CHECK(transfer_matrix(3) == reference_m());
  CHECK(transfer_matrix(1) == QMatrix{{Rational(1, 2), -1}, {0, 1}});
  CHECK(transfer_matrix(2) == Rational(1, 3) * QMatrix{{1, -2, 0}, {0, 2, -3}, {0, 0, 3}});
  for (unsigned n = 1; n <= 5; ++n) {
    const QMatrix m = transfer_matrix(n);
    for (unsigned r = 0; r < n; ++r) {
      Rational sum = 0;
      for (unsigned c = 0; c <= n; ++c) sum += m.at(r, c);
      CHECK(sum == Rational(-1, static_cast<long>(n + 1)));
    }
  }
}

TEST_CASE("the general transfer matrix is the one read off the translated family") {
  for (unsigned n = 1; n <= 4; ++n) CHECK(transfer_matrix_from_family(n) == transfer_matrix(n));
}

TEST_CASE("powers of the transfer matrix") {
  const QMatrix m = transfer_matrix(3);
  CHECK(matrix_power(m, 0) == QMatrix::identity(4));
  CHECK(matrix_power(m, 1) == m);
  for (long k = 1; k <= 10; ++k) {
    const QMatrix mk = matrix_power(m, static_cast<unsigned>(k));
    CHECK(mk.at(0, 0) == Rational(4).pow(-k));
    CHECK(mk.at(1, 1) == Rational(2).pow(-k));
    CHECK(mk.at(2, 2) == Rational(3).pow(k) * Rational(4).pow(-k));
    CHECK(mk.at(3, 3) == Rational(1));
    CHECK(mk.at(2, 3) == Rational(-4) + Rational(2).pow(2 - 2 * k) * Rational(3).pow(k));
  }
  CHECK_THROWS_AS(matrix_power(QMatrix(2, 3), 2), std::invalid_argument);
}

TEST_CASE("limit matrices") {
  CHECK(last_column(limit_matrix(3)) == std::vector<Rational>{-4, 6, -4, 1});
  CHECK(last_column(limit_matrix(1)) == std::vector<Rational>{-2, 1});
  for (unsigned n = 1; n <= 5; ++n) {
    const QMatrix l = limit_matrix(n);
    const QMatrix m = transfer_matrix(n);
    CHECK(l * l == l);
    CHECK(m * l == l);
    CHECK(l * m == l);
    for (unsigned c = 0; c < n; ++c)
      for (unsigned r = 0; r <= n; ++r) CHECK(l.at(r, c).is_zero());
    std::vector<Rational> alternating;
    for (unsigned j = 1; j <= n + 1; ++j)
      alternating.push_back(((n + 1 - j) % 2 ? Rational(-1) : Rational(1)) * binom(n + 1, j));
    // indexed by f_1..f_{n+1}
    CHECK(last_column(l) == alternating);
  }
}

TEST_CASE("the limit column applied to the full equation gives the binomial identity") {
  for (unsigned n = 1; n <= 4; ++n) {
    const std::vector<Rational> v = last_column(limit_matrix(n));
    // top unknown in place of every f_j with weight v_j
    std::vector<EquationTerm> terms;
    for (unsigned j = 1; j <= n + 1; ++j) terms.push_back({v[j - 1], n + 1 - j, j, "A"});
    const EquationSpec derived(terms);
    CHECK(testing::monic(derived) == testing::monic(single_equation(testing::alternating_binomial(n), "A")));
  }
}

TEST_CASE("powers converge to the limit") {
  for (unsigned n = 1; n <= 4; ++n) {
    const QMatrix m = transfer_matrix(n);
    const QMatrix l = limit_matrix(n);
    const Rational rate(static_cast<long>(n), static_cast<long>(n + 1));
    const Rational constant = n == 3 ? Rational(28) : Rational(64);
    QMatrix mk = QMatrix::identity(n + 1);
    for (long k = 0; k <= 30; ++k) {
      const Rational bound = constant * Rational(k + 1) * rate.pow(k);
      const QMatrix diff = mk - l;
      for (unsigned r = 0; r <= n; ++r)
        for (unsigned c = 0; c <= n; ++c) CHECK(diff.at(r, c).abs() <= bound);
      mk = mk * m;
    }
  }
}

TEST_CASE("translated families") {
  SUBCASE("a derivation solves the first binomial family") {
    const TranslatedFamily fam = translate_family(single_equation(testing::alternating_binomial(1), "A"));
    const Assignment fns{{"A", d_power(1)}};
    CHECK_FALSE(family_violation(fam, fns, 1, 4).has_value());
    const Assignment wrong{{"A", d_power(2)}};
    CHECK(family_violation(fam, wrong, 1, 4).has_value());
  }
  SUBCASE("the second binomial family is displayed with alternating binomials") {
    const TranslatedFamily fam = translate_family(single_equation(testing::alternating_binomial(2), "A"));
    const TranslatedFamily scaled{fam.degree, [&] {
                                    auto terms = fam.terms;
                                    const Rational lead = terms.front().coeff;
                                    for (auto& t : terms) t.coeff /= lead;
                                    return terms;
                                  }()};
    CHECK(scaled.str() == "A(c*x^3) - 3*x*A(c*x^2) + 3*x^2*A(c*x) - x^3*A(c)");
  }
  SUBCASE("c = 1 gives the binomial equation back") {
    for (unsigned n = 1; n <= 4; ++n) {
      const EquationSpec base = single_equation(testing::alternating_binomial(n), "A");
      std::vector<EquationTerm> with_constant = base.terms();
      with_constant.push_back({n % 2 ? Rational(1) : Rational(-1), n + 1, 0, "A"});
      CHECK(testing::monic(translate_family(base).at_one()) == testing::monic(EquationSpec(with_constant)));
    }
  }
  SUBCASE("c = 1 member of a general family") {
    // base minus x times the base with one argument set to 1
    const TranslatedFamily fam = translate_family(parse("f(x^3) + x*f(x^2) - 2*x^2*f(x) = 0"));
    CHECK(render_spec(fam.at_one()) == "f(x^3) - 1/3*x*f(x^2) - 4/3*x^2*f(x) + 2/3*x^3*f(1) = 0");
    CHECK(fam.str() == "f(c*x^3) - 1/3*x*f(c*x^2) - 4/3*x^2*f(c*x) + 2/3*x^3*f(c)");
  }
  SUBCASE("families of solved equations vanish") {
    const EquationSpec base = parse("f(x^3) + x^2*g(x) = 0");
    const Assignment fns{{"f", d_power(1) * Rational(1, 3)}, {"g", d_power(1) * Rational(-1)}};
    CHECK_FALSE(family_violation(translate_family(base), fns, 1, 4).has_value());
  }
}

TEST_CASE("exponential residual") {
  SUBCASE("alternating binomial of degree three") {
    const Residual r = exponential_residual(testing::alternating_binomial(2));
    const Poly t = Poly::variable(1, 0);
    const Poly one = Poly::constant(1, 1);
    CHECK(r.poly == Rational(3) * (t - one) * (t - one));
    CHECK(r.roots == std::vector<Rational>{1});
  }
  SUBCASE("weighted sum three") {
    const Residual r = exponential_residual({-2, 1, 1});
    CHECK(r.poly.str() == "3*t^2 + 2*t - 2");
    CHECK(r.roots.empty());
  }
  SUBCASE("value at one is the weighted sum") {
    const std::vector<std::vector<Rational>> vectors{{-2, 1, 1}, {1, 1, -1}, {Rational(1, 2), 3, -2, 7}, {0, 0, 1}};
    for (const auto& a : vectors) {
      Rational weighted = 0, at_one = 0;
      for (std::size_t j = 0; j < a.size(); ++j) weighted += Rational(static_cast<long>(j + 1)) * a[j];
      const Residual r = exponential_residual(a);
      for (const auto& [mono, coeff] : r.poly.terms()) at_one += coeff;
      CHECK(weighted == at_one);
      const auto& roots = r.roots;
      CHECK((std::find(roots.begin(), roots.end(), Rational(1)) != roots.end()) == weighted.is_zero());
    }
  }
  SUBCASE("alternating binomials have only the root one") {
    for (unsigned n = 1; n <= 5; ++n) {
      const Residual r = exponential_residual(testing::alternating_binomial(n));
      CHECK(r.roots == std::vector<Rational>{1});
      const Poly t = Poly::variable(1, 0);
      const Poly expected = Rational(static_cast<long>(n + 1)) * (t - Poly::constant(1, 1)).pow(n);
      CHECK((r.poly == expected || r.poly == -expected));
    }
  }
  SUBCASE("rational roots other than one") {
    const Residual r = exponential_residual({1, Rational(-5, 4), Rational(1, 3)});
    // P = 1 - 5/2 t + t^2 = (t - 2)(t - 1/2)
    CHECK(r.roots == std::vector<Rational>{Rational(1, 2), 2});
  }
}

TEST_CASE("descending process") {
  const DescendResult r = descending_solve(3);
  REQUIRE(r.steps.size() == 3);
  const DescendStep& first = r.steps.front();
  CHECK(first.level == 3);
  CHECK(first.limit_column == std::vector<Rational>{-4, 6, -4, 1});
  CHECK(first.top == Combination{{"f4", 1}});
  REQUIRE(first.reduced.size() == 3);
  CHECK(first.reduced[2] == Combination{{"f3", 1}, {"f4", 4}});
  CHECK(first.reduced[1] == Combination{{"f2", 1}, {"f4", -6}});
  CHECK(first.reduced[0] == Combination{{"f1", 1}, {"f4", 4}});

  const SolutionStructure one = descending_structure(descending_solve(1));
  CHECK(render_functions(one) == std::vector<std::string>{"f2 = D1", "f1 = -2*D1"});
}

TEST_CASE("descending process agrees with the closed form") {
  for (unsigned n = 1; n <= 4; ++n) CHECK(descending_structure(descending_solve(n)) == closed_form_structure(n));
}

TEST_CASE("descending process on a named equation") {
  const SolutionStructure s = descending_solve(parse("f(x^4) + x*g(x^3) + x^2*h(x^2) + x^3*k(x) = 0"));
  CHECK(render_functions(s) ==
        std::vector<std::string>{"f = D3", "g = -D2 - 4*D3", "h = D1 + 3*D2 + 6*D3", "k = -2*D1 - 3*D2 - 4*D3"});
  CHECK_THROWS_AS(descending_solve(parse("f(x^3) + x^2*g(x) = 0")), std::invalid_argument);
  CHECK_THROWS_AS(descending_solve(parse("f(x^2) + x*f(x) = 0")), std::invalid_argument);
}

TEST_CASE("matrix rendering") {
  CHECK(render_matrix(transfer_matrix(3)) ==
        "(1/4) *\n[  1  -2   0   0 ]\n[  0   2  -3   0 ]\n[  0   0   3  -4 ]\n[  0   0   0   4 ]\n");
}
