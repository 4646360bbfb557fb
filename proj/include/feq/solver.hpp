#pragma once

#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "feq/derivations.hpp"
#include "feq/equation.hpp"
#include "feq/multiadditive.hpp"
#include "feq/qmatrix.hpp"

namespace feq {

/// A homogeneous block with no term left that involves x inside a function.
class DegenerateEquation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// sum_k c_k f_k, keyed by function name; zero coefficients are never stored.
using Combination = std::map<FnSymbol, Rational>;

/// x^p * combo(x^{degree - p}).
struct Slot {
  unsigned p = 0;
  Combination combo;

  friend bool operator==(const Slot&, const Slot&) = default;
};

struct CanonicalEquation {
  unsigned degree = 0;         // after any multiplication by x
  unsigned source_degree = 0;  // degree of the input block
  std::vector<Slot> slots;     // strictly ascending p, every q = degree - p >= 1

  std::size_t merged_terms = 0;         // terms folded into a slot already holding another term
  std::vector<EquationTerm> absorbed;   // q = 0 terms; they only constrain the values f(1)
  std::vector<FnSymbol> shifted;        // functions replaced by f - f(1) x
  unsigned degree_multiplications = 0;  // 1 when the block was multiplied by x

  /// The slot form as an equation in the slot symbols F<q>.
  EquationSpec spec() const;
  /// Slots at degree source_degree, i.e. before any multiplication by x.
  std::vector<Slot> source_slots() const;
};

struct Reduction {
  unsigned degree = 0;          // degree after every substitution round
  std::vector<Slot> slots;      // in the original functions, primitive integer coefficients
  std::vector<unsigned> rounds; // number of ones substituted per round

  /// True when every exponent 0..degree-1 occurs.
  bool complete() const;
  EquationSpec spec() const;
};

/// Blocks of equal p + q, ascending degree.
std::vector<EquationSpec> split_homogeneous(const EquationSpec& spec);

/// Throws std::invalid_argument for a non-homogeneous block and
/// DegenerateEquation when no slot survives.
CanonicalEquation canonicalize(const EquationSpec& block);

/// Row i is f_{n+1-i}, column j is D_j (j = 0..n).
QMatrix closed_form_basis(unsigned n);

Reduction reduce_missing(const CanonicalEquation& ce);

enum class ParameterKind { derivation, additive };

struct Parameter {
  std::string name;
  ParameterKind kind = ParameterKind::derivation;
  unsigned level = 0;  // order of the derivation space; 0 for additive parameters

  friend bool operator==(const Parameter&, const Parameter&) = default;
};

struct FunctionSolution {
  FnSymbol name;
  Rational x_coeff;             // coefficient of x -> f(1) x
  std::vector<Rational> coeffs; // aligned with SolutionStructure::parameters

  friend bool operator==(const FunctionSolution&, const FunctionSolution&) = default;
};

enum class SolutionStatus { unique, parametrized, trivial_only };

std::string status_name(SolutionStatus s);

struct SolutionStructure {
  std::vector<Parameter> parameters;
  std::vector<FunctionSolution> functions;
  /// Rows over `functions`: sum_k r_k f_k(1) = 0, in reduced echelon form.
  std::vector<std::vector<Rational>> relations;
  SolutionStatus status = SolutionStatus::trivial_only;

  const FunctionSolution* find(const FnSymbol& name) const;
  /// Basis of the admissible vectors (f_1(1), ..., f_K(1)).
  std::vector<std::vector<Rational>> value_freedom() const;

  friend bool operator==(const SolutionStructure&, const SolutionStructure&) = default;
};

struct SolveOptions {
  bool normalized = false;  // impose f(1) = 0 on every unknown
  bool verify = true;
  unsigned bound = 4;
  std::size_t ring_arity = 1;
};

SolutionStructure solve(const EquationSpec& spec, const SolveOptions& options = {});

struct SingleReport {
  Rational sum_weighted;
  unsigned max_order = 0;
  bool binomial_proportional = false;
  bool trivial_only = false;
  std::vector<std::vector<Rational>> chain;  // coefficient vectors visited, a_1 first
};

/// Coefficients a_1..a_{n+1} of sum_j a_j x^{n+1-j} A(x^j) = 0 with A(1) = 0.
SingleReport analyze_single(const std::vector<Rational>& coeffs);

/// The single-function equation of a coefficient vector.
EquationSpec single_equation(const std::vector<Rational>& coeffs, const FnSymbol& fn = "f");

struct VerificationFailure {
  unsigned degree = 0;
  std::vector<Poly> tuple;
  Poly value;
};

/// Checks every homogeneous block's symmetric form on monomial tuples.
std::optional<VerificationFailure> verify_assignment(const EquationSpec& spec, const Assignment& fns,
                                                     std::size_t ring_arity, unsigned bound);

/// Concrete values for the parameters and the values f(1).
struct Instance {
  std::map<std::string, DiffOperator> derivations;
  std::map<std::string, AdditiveMap> additive;
  std::map<FnSymbol, Rational> values_at_one;
};

/// D params := (c d1)^level with c = t1^{k-1} for the k-th parameter of that
/// level; additive params := monomial shifts; f(1) from the relation kernel.
Instance power_instance(const SolutionStructure& s, std::size_t ring_arity);
/// Every parameter zero; f(1) as in power_instance.
Instance zero_instance(const SolutionStructure& s, std::size_t ring_arity);

/// A(1) = 0, m -> m * t1^shift on nonconstant monomials.
AdditiveMap shift_map(std::size_t ring_arity, unsigned shift);

/// Throws std::invalid_argument when a derivation parameter is missing or
/// fails order_check at its level.
Assignment instantiate(const SolutionStructure& s, const Instance& inst, std::size_t ring_arity,
                       unsigned bound);

std::optional<VerificationFailure> verify_solution(const EquationSpec& spec, const SolutionStructure& s,
                                                   const Instance& inst, std::size_t ring_arity,
                                                   unsigned bound);

}  // namespace feq
