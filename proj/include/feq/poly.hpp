#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "feq/rational.hpp"

namespace feq {

/// Exponent vector of a monomial in t1..tm.
struct Monomial {
  std::vector<std::uint32_t> exponents;

  Monomial() = default;
  explicit Monomial(std::vector<std::uint32_t> e) : exponents(std::move(e)) {}
  static Monomial one(std::size_t arity) { return Monomial(std::vector<std::uint32_t>(arity, 0)); }

  std::size_t arity() const { return exponents.size(); }
  std::uint64_t degree() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

Monomial operator*(const Monomial& a, const Monomial& b);

/// Graded lexicographic order, highest term first. Used as the map order so
/// iteration and printing are deterministic.
struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial over Q in variables t1..tm.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexDescending>;

  explicit Poly(std::size_t arity = 1);

  static Poly constant(std::size_t arity, const Rational& c);
  static Poly variable(std::size_t arity, std::size_t index);
  static Poly monomial(const Monomial& m, const Rational& c = Rational(1));
  static Poly variable_power(std::size_t arity, std::size_t index, std::uint32_t exponent);

  std::size_t arity() const { return arity_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Coefficient of `m`, zero when absent.
  Rational coefficient(const Monomial& m) const;
  /// Total degree; -1 for the zero polynomial.
  long degree() const;

  /// Formal partial derivative with respect to t_{index+1}.
  Poly partial(std::size_t index) const;
  Poly pow(unsigned exponent) const;

  void add_term(const Monomial& m, const Rational& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  Poly operator-() const;

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

  /// Canonical text, e.g. "2*t1^2*t2 - 1/3". The single variable of an
  /// arity-1 ring is printed as "t".
  std::string str() const;

 private:
  void check_arity(const Poly& o) const;

  std::size_t arity_;
  TermMap terms_;
};

enum class PolyOp { add, sub, mul };

/// Exact ring operation; throws std::invalid_argument on arity mismatch.
Poly poly_arith(PolyOp kind, const Poly& a, const Poly& b);

/// Every monomial of total degree <= max_degree, ascending in graded order.
std::vector<Monomial> monomials_up_to(std::size_t arity, unsigned max_degree);

/// Name of variable `index` in the canonical rendering.
std::string variable_name(std::size_t arity, std::size_t index);

}  // namespace feq
