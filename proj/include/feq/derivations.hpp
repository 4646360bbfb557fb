#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "feq/poly.hpp"

namespace feq {

/// The derivation p -> sum_i c_i * dp/dt_i of Q[t1..tm].
class BasicDerivation {
 public:
  explicit BasicDerivation(std::vector<Poly> coefficients);

  /// d/dt_{index+1}.
  static BasicDerivation partial(std::size_t arity, std::size_t index);

  std::size_t arity() const { return coefficients_.size(); }
  const std::vector<Poly>& coefficients() const { return coefficients_; }
  /// Index of the variable when this is a pure partial derivative.
  std::optional<std::size_t> partial_index() const;

  Poly operator()(const Poly& p) const;

  std::string str() const;

  friend bool operator==(const BasicDerivation&, const BasicDerivation&) = default;

 private:
  std::vector<Poly> coefficients_;
};

/// Finite Q-linear combination of composition words of basic derivations.
/// A word d_1 o d_2 o ... o d_k is applied right to left; the empty word is
/// the identity map.
class DiffOperator {
 public:
  struct Term {
    Rational scalar;
    std::vector<BasicDerivation> word;
  };

  explicit DiffOperator(std::size_t arity) : arity_(arity) {}

  static DiffOperator zero(std::size_t arity) { return DiffOperator(arity); }
  static DiffOperator identity(std::size_t arity);
  static DiffOperator of(const BasicDerivation& d);
  /// d o d o ... o d (k factors); k = 0 gives the identity.
  static DiffOperator power(const BasicDerivation& d, unsigned k);

  std::size_t arity() const { return arity_; }
  const std::vector<Term>& terms() const { return terms_; }

  void add_term(const Rational& scalar, std::vector<BasicDerivation> word);

  /// Longest word length among terms with nonzero scalar.
  std::size_t order() const;
  bool includes_identity() const;
  bool is_zero() const { return terms_.empty(); }

  Poly apply(const Poly& p) const;
  Poly operator()(const Poly& p) const { return apply(p); }

  DiffOperator operator+(const DiffOperator& o) const;
  DiffOperator operator*(const Rational& s) const;
  /// this o o
  DiffOperator compose(const DiffOperator& o) const;

  /// Sorts words made only of pure partials (they commute) and merges equal
  /// words. Words containing other derivations keep their order.
  DiffOperator normalized() const;

  /// "3/2*d1∘d2 + d1"; the identity word prints as "id".
  std::string str() const;

 private:
  std::size_t arity_;
  std::vector<Term> terms_;
};

/// Additive map on Q[t1..tm] given by an evaluation function.
class AdditiveMap {
 public:
  using Fn = std::function<Poly(const Poly&)>;

  AdditiveMap(std::size_t arity, Fn fn, std::string name = "A")
      : arity_(arity), fn_(std::move(fn)), name_(std::move(name)) {}
  AdditiveMap(const DiffOperator& op);  // NOLINT(google-explicit-constructor)

  static AdditiveMap zero(std::size_t arity);
  static AdditiveMap identity(std::size_t arity);

  std::size_t arity() const { return arity_; }
  const std::string& name() const { return name_; }
  Poly operator()(const Poly& p) const;

  AdditiveMap operator+(const AdditiveMap& o) const;
  AdditiveMap operator*(const Rational& s) const;

 private:
  std::size_t arity_;
  Fn fn_;
  std::string name_;
};

/// A(xy) - x A(y) - A(x) y.
Poly defect(const AdditiveMap& a, const Poly& x, const Poly& y);

/// sum_{i=0..k} C(k,i) d^i(x) d^{k-i}(y), which equals d^k(xy).
Poly leibniz_expand(const BasicDerivation& d, unsigned k, const Poly& x, const Poly& y);

/// Value of the order-n identity
///   sum_{i=0..n} (-1)^i sum_{|I|=i} (prod_{j in I} x_j) A(prod_{k not in I} x_k)
/// at the (n+1)-tuple xs.
Poly order_identity(const AdditiveMap& a, const std::vector<Poly>& xs);

/// First monomial (n+1)-tuple with all entries of total degree <= degree_bound
/// at which the order-n identity fails, if any. Tuples are visited in
/// non-decreasing index order; the identity is symmetric so this is complete.
std::optional<std::vector<Poly>> order_violation(const AdditiveMap& a, unsigned n,
                                                 unsigned degree_bound);

/// True iff A passes the order-n identity on every monomial tuple within the
/// bound, i.e. A is certified to lie in D_n(R) up to that bound.
bool order_check(const AdditiveMap& a, unsigned n, unsigned degree_bound);

/// Parses operator text such as "d1", "d1.d1", "d1∘d2", "3/2*d1.d2 + d1 - id",
/// "0". "di" is d/dt_i. Throws std::invalid_argument with the offending offset.
DiffOperator parse_operator(std::string_view text, std::size_t arity);

/// Visits every non-decreasing index tuple of length `len` over `count` items.
void for_each_multiset(std::size_t count, std::size_t len,
                       const std::function<bool(const std::vector<std::size_t>&)>& visit);

}  // namespace feq
