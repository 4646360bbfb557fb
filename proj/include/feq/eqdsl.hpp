#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "feq/equation.hpp"
#include "feq/solver.hpp"

namespace feq {

struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceSpan span, std::string message, std::set<std::string> expected);

  const SourceSpan& span() const { return span_; }
  const std::string& message() const { return message_; }
  const std::set<std::string>& expected() const { return expected_; }

  /// Message followed by the input with a caret line under the span.
  std::string annotate(std::string_view input) const;

 private:
  SourceSpan span_;
  std::string message_;
  std::set<std::string> expected_;
};

/// Parses "f(x^5) + x*g(x^4) + x^4*h(x) = 0", "3/2*x*f(1) - g(x) = 0" or "0 = 0".
EquationSpec parse(std::string_view text);

/// Canonical text: terms by ascending (p, q, fn), coefficient 1 elided,
/// "- 2*x^2*f(x)" for a negative leading term, "0 = 0" when empty.
std::string render_spec(const EquationSpec& spec);

/// Coefficient vector "a1, a2, ..." or "a1 a2 ..." with optional parentheses.
std::vector<Rational> parse_coefficients(std::string_view text);

/// One line per function with the denominators cleared, e.g.
/// "15*f = 2*D1 + 9*D2" or "f = f(1)*x".
std::vector<std::string> render_functions(const SolutionStructure& s);
/// Relations among the values f(1) that involve at least two functions.
std::vector<std::string> render_constraints(const SolutionStructure& s);
/// render_functions followed by render_constraints, newline separated.
std::string render_solution(const SolutionStructure& s);

/// The closed-form table, one line per function, D_n first:
/// "f2 = D1", "f1 = -2*D1 - D0".
std::vector<std::string> render_basis(unsigned n);

/// "sum_i c_i * name_i" with integer or rational coefficients, "0" if empty.
std::string render_linear(const std::vector<std::pair<std::string, Rational>>& terms);

}  // namespace feq
