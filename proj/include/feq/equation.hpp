#pragma once

#include <optional>
#include <string>
#include <vector>

#include "feq/rational.hpp"

namespace feq {

using FnSymbol = std::string;

/// coeff * x^p * fn(x^q); q = 0 denotes the constant fn(1).
struct EquationTerm {
  Rational coeff;
  unsigned p = 0;
  unsigned q = 1;
  FnSymbol fn;

  unsigned degree() const { return p + q; }
  friend bool operator==(const EquationTerm&, const EquationTerm&) = default;
};

/// Univariate equation sum_k coeff_k x^{p_k} f_k(x^{q_k}) = 0.
/// Terms with equal (p, q, fn) are merged, zero terms dropped, and the rest
/// sorted by (p, q, fn).
class EquationSpec {
 public:
  EquationSpec() = default;
  explicit EquationSpec(std::vector<EquationTerm> terms);

  const std::vector<EquationTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Unknowns in order of first appearance in the input term list.
  const std::vector<FnSymbol>& functions() const { return functions_; }

  bool is_homogeneous() const;
  /// Common p + q of a homogeneous nonempty spec.
  std::optional<unsigned> degree() const;

  friend bool operator==(const EquationSpec& a, const EquationSpec& b) { return a.terms_ == b.terms_; }

 private:
  std::vector<EquationTerm> terms_;
  std::vector<FnSymbol> functions_;
};

}  // namespace feq
