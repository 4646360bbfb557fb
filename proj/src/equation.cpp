#include "feq/equation.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace feq {

EquationSpec::EquationSpec(std::vector<EquationTerm> terms) {
  std::map<std::tuple<unsigned, unsigned, FnSymbol>, Rational> merged;
  for (auto& t : terms) {
    if (std::find(functions_.begin(), functions_.end(), t.fn) == functions_.end()) functions_.push_back(t.fn);
    merged[{t.p, t.q, t.fn}] += t.coeff;
  }
  for (auto& [key, coeff] : merged) {
    if (coeff.is_zero()) continue;
    const auto& [p, q, fn] = key;
    terms_.push_back(EquationTerm{coeff, p, q, fn});
  }
}

bool EquationSpec::is_homogeneous() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const EquationTerm& t) { return t.degree() == terms_.front().degree(); });
}

std::optional<unsigned> EquationSpec::degree() const {
  if (terms_.empty() || !is_homogeneous()) return std::nullopt;
  return terms_.front().degree();
}

}  // namespace feq
