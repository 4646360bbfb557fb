#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "feq/derivations.hpp"
#include "feq/equation.hpp"

namespace feq {

/// One orbit of the symmetric form in l variables:
///   coeff * sum_{|I| = l - p} (prod_{j not in I} x_j) * fn(prod_{i in I} x_i).
/// `p` counts the factors outside fn; coeff already carries the 1/C(l,p)
/// weight, so the trace of the term is coeff * C(l,p) * x^p fn(x^{l-p}).
struct SymTerm {
  Rational coeff;
  unsigned p = 0;
  FnSymbol fn;

  friend bool operator==(const SymTerm&, const SymTerm&) = default;
};

struct SymEquation {
  unsigned arity = 0;
  std::vector<SymTerm> terms;  // sorted by (p, fn), merged, nonzero

  unsigned inner(const SymTerm& t) const { return arity - t.p; }
  friend bool operator==(const SymEquation&, const SymEquation&) = default;
};

using Assignment = std::map<FnSymbol, AdditiveMap>;

/// Symmetric l-additive form of a homogeneous degree-l spec.
/// Throws std::invalid_argument for empty or non-homogeneous input.
SymEquation symmetrize(const EquationSpec& spec);

/// All variables set equal: the univariate equation it came from.
EquationSpec diagonalize(const SymEquation& sym);

/// Sets s of the l variables to 1 (positions are irrelevant by symmetry).
/// Inner arguments that collapse to the empty product are dropped, which is
/// valid only under fn(1) = 0. Throws std::invalid_argument when s >= l.
SymEquation substitute_ones(const SymEquation& sym, unsigned s);

/// Value of the form at the tuple xs (xs.size() == arity).
Poly evaluate(const SymEquation& sym, const Assignment& fns, const std::vector<Poly>& xs);

/// First non-decreasing tuple of monomials in Q[t1..t_ring_arity] with degree
/// <= bound at which the form does not vanish.
std::optional<std::vector<Poly>> find_nonvanishing(const SymEquation& sym, const Assignment& fns,
                                                   std::size_t ring_arity, unsigned bound);

/// Delta_{y_1} ... Delta_{y_r} trace evaluated at x.
Poly difference_iterate(const std::function<Poly(const Poly&)>& trace, const std::vector<Poly>& increments,
                        const Poly& x);

struct PolarizationReport {
  unsigned n = 0;
  unsigned bound = 0;
  std::size_t mixed_checked = 0;      // Delta_{y_1..y_n} A*(x) = n! A(y_1..y_n)
  std::size_t mixed_failed = 0;
  std::size_t pure_checked = 0;       // Delta_y^n A*(x) = n! A*(y)
  std::size_t pure_failed = 0;
  std::size_t vanishing_checked = 0;  // n+1 differences give 0
  std::size_t vanishing_failed = 0;

  bool passed() const { return mixed_failed == 0 && pure_failed == 0 && vanishing_failed == 0; }
};

/// Builds A(x_1..x_n) = prod a(x_i) and checks the polarization identities on
/// monomials up to the bound.
PolarizationReport polarization_report(const AdditiveMap& a, unsigned n, unsigned bound);
bool polarization_check(const AdditiveMap& a, unsigned n, unsigned bound);

/// Expanded display in x1..xl with denominators cleared, e.g.
/// "3*f(x1*x2*x3) + x1*x2*g(x3) + x1*x3*g(x2) + x2*x3*g(x1)".
std::string render_sym(const SymEquation& sym);

}  // namespace feq
