#pragma once

#include <string>
#include <vector>

#include "feq/equation.hpp"
#include "feq/multiadditive.hpp"
#include "feq/qmatrix.hpp"
#include "feq/solver.hpp"

namespace feq {

/// (n+1)x(n+1) upper bidiagonal matrix, 1-based: (j,j) = j/(n+1),
/// (j,j+1) = -(j+1)/(n+1), last row e_{n+1}.
QMatrix transfer_matrix(unsigned n);

QMatrix matrix_power(const QMatrix& m, unsigned k);

/// Projection onto the eigenvalue-1 eigenspace of transfer_matrix(n) along
/// the other eigenspaces, from the right and left fixed vectors.
QMatrix limit_matrix(unsigned n);

/// coeff * x^p * fn(c * x^q)
struct FamilyTerm {
  Rational coeff;
  unsigned p = 0;
  unsigned q = 0;
  FnSymbol fn;

  friend bool operator==(const FamilyTerm&, const FamilyTerm&) = default;
};

/// Phi(x,...,x,cx) - x Phi(x,...,x,c) as a two-variable identity in (x, c).
struct TranslatedFamily {
  unsigned degree = 0;
  std::vector<FamilyTerm> terms;  // sorted by (p, fn), merged

  Poly evaluate(const Assignment& fns, const Poly& x, const Poly& c) const;
  /// The member c = 1 as a univariate equation; q = 0 terms become f(1).
  EquationSpec at_one() const;
  std::string str() const;
};

TranslatedFamily translate_family(const SymEquation& sym);
TranslatedFamily translate_family(const EquationSpec& homogeneous);

/// First monomial pair (x, c) with degrees <= bound where the family does not vanish.
std::optional<std::pair<Poly, Poly>> family_violation(const TranslatedFamily& fam, const Assignment& fns,
                                                      std::size_t ring_arity, unsigned bound);

/// Row j-1 is g_j = sum_k M_{jk} f_k, read off the family of
/// sum_i x^i f_{n+1-i}(x^{n+1-i}) = 0 with unknowns f1..f{n+1}.
QMatrix transfer_matrix_from_family(unsigned n);

struct Residual {
  Poly poly;                  // P(t) = sum_j j a_j t^{j-1}
  std::vector<Rational> roots;  // distinct rational roots, ascending
};

Residual exponential_residual(const std::vector<Rational>& coeffs);

struct DescendStep {
  unsigned level = 0;
  std::vector<Rational> limit_column;      // last column of limit_matrix(level)
  Combination top;                         // the unknown found in D_level, over f1..f{n+1}
  std::vector<Combination> reduced;        // the next unknowns h~_1..h~_level
};

struct DescendResult {
  unsigned n = 0;
  QMatrix coefficients;  // row i: f_{n+1-i}; column j-1: D_j
  std::vector<DescendStep> steps;
};

/// Descending process on sum_i x^i f_{n+1-i}(x^{n+1-i}) = 0 with f(1) = 0.
DescendResult descending_solve(unsigned n);

/// Unknowns named f{n+1}..f1 (row order), parameters D1..Dn.
SolutionStructure closed_form_structure(unsigned n);
SolutionStructure descending_structure(const DescendResult& r);

/// Full-form equation with one distinct unknown per exponent, f(1) = 0
/// assumed. Throws std::invalid_argument for a missing exponent or a slot
/// holding several unknowns.
SolutionStructure descending_solve(const EquationSpec& spec);

/// Rows with a common denominator factored out, e.g. "(1/4) *" then rows.
std::string render_matrix(const QMatrix& m);

}  // namespace feq
