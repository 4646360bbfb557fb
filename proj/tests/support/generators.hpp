#pragma once

#include <random>
#include <string>
#include <vector>

#include "feq/equation.hpp"
#include "feq/poly.hpp"

namespace feq::testing {

inline Rational random_rational(std::mt19937& rng, long max_num = 99, long max_den = 99) {
  std::uniform_int_distribution<long> num(-max_num, max_num);
  std::uniform_int_distribution<long> den(1, max_den);
  long a = 0;
  while (a == 0) a = num(rng);
  return Rational(a, den(rng));
}

inline Poly random_poly(std::mt19937& rng, std::size_t arity, unsigned max_degree, std::size_t max_terms) {
  const auto monos = monomials_up_to(arity, max_degree);
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
  std::uniform_int_distribution<std::size_t> count(1, max_terms);
  Poly p(arity);
  for (std::size_t i = count(rng); i > 0; --i) p.add_term(monos[pick(rng)], random_rational(rng, 9, 4));
  return p;
}

/// Arbitrary spec in the DSL's range: up to `max_terms` terms, exponents up
/// to `max_exponent`, q = 0 allowed.
inline EquationSpec random_spec(std::mt19937& rng, std::size_t max_terms = 6, unsigned max_exponent = 9) {
  static const std::vector<std::string> names{"f", "g", "h", "f2", "u_1"};
  std::uniform_int_distribution<std::size_t> count(1, max_terms);
  std::uniform_int_distribution<unsigned> exponent(0, max_exponent);
  std::uniform_int_distribution<std::size_t> name(0, names.size() - 1);
  std::vector<EquationTerm> terms;
  for (std::size_t i = count(rng); i > 0; --i)
    terms.push_back({random_rational(rng), exponent(rng), exponent(rng), names[name(rng)]});
  return EquationSpec(std::move(terms));
}

/// Homogeneous spec of degree `degree` whose terms all have q >= 1.
inline EquationSpec random_homogeneous(std::mt19937& rng, unsigned degree, std::size_t max_terms,
                                       std::size_t fn_count = 3, long max_coeff = 9) {
  static const std::vector<std::string> names{"f", "g", "h", "k"};
  std::uniform_int_distribution<std::size_t> count(1, max_terms);
  std::uniform_int_distribution<unsigned> outside(0, degree - 1);
  std::uniform_int_distribution<std::size_t> name(0, fn_count - 1);
  while (true) {
    std::vector<EquationTerm> terms;
    for (std::size_t i = count(rng); i > 0; --i) {
      const unsigned p = outside(rng);
      terms.push_back({random_rational(rng, max_coeff, 3), p, degree - p, names[name(rng)]});
    }
    EquationSpec spec(std::move(terms));
    if (!spec.empty()) return spec;
  }
}

}  // namespace feq::testing
