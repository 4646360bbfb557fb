#include "feq/solver.hpp"

#include <algorithm>
#include <numeric>

namespace feq {

namespace {

constexpr unsigned kUnbounded = std::numeric_limits<unsigned>::max();

void accumulate(Combination& combo, const FnSymbol& fn, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = combo.try_emplace(fn, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) combo.erase(it);
  }
}

std::vector<Slot> nonzero_slots(const std::map<unsigned, Combination>& by_p) {
  std::vector<Slot> out;
  for (const auto& [p, combo] : by_p)
    if (!combo.empty()) out.push_back(Slot{p, combo});
  return out;
}

std::size_t missing_count(const std::vector<Slot>& slots, unsigned degree) {
  return degree - slots.size();
}

std::string slot_name(unsigned q) { return "F" + std::to_string(q); }

EquationSpec slot_spec(const std::vector<Slot>& slots, unsigned degree) {
  std::vector<EquationTerm> terms;
  for (const auto& s : slots) terms.push_back(EquationTerm{1, s.p, degree - s.p, slot_name(degree - s.p)});
  return EquationSpec(std::move(terms));
}

void make_primitive(std::vector<Slot>& slots) {
  mpz_class den = 1, num = 0;
  for (const auto& s : slots)
    for (const auto& [fn, c] : s.combo) den = lcm(den, c.denominator());
  for (const auto& s : slots)
    for (const auto& [fn, c] : s.combo) num = gcd(num, (c * Rational(den)).numerator());
  if (num == 0) return;
  Rational scale = Rational(den) / Rational(num);
  if (slots.front().combo.begin()->second.sign() < 0) scale = -scale;
  for (auto& s : slots)
    for (auto& [fn, c] : s.combo) c *= scale;
}

std::vector<std::vector<Rational>> reduced_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols) {
  if (rows.empty()) return {};
  QMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
  std::vector<std::size_t> pivots;
  QMatrix red = rref(m, &pivots);
  std::vector<std::vector<Rational>> out;
  for (std::size_t r = 0; r < pivots.size(); ++r) out.push_back(red.row(r));
  return out;
}

}  // namespace

std::string status_name(SolutionStatus s) {
  switch (s) {
    case SolutionStatus::unique: return "unique";
    case SolutionStatus::parametrized: return "parametrized";
    case SolutionStatus::trivial_only: return "trivial-only";
  }
  return "unknown";
}

EquationSpec CanonicalEquation::spec() const { return slot_spec(slots, degree); }

std::vector<Slot> CanonicalEquation::source_slots() const {
  std::vector<Slot> out = slots;
  for (auto& s : out) s.p -= degree_multiplications;
  return out;
}

bool Reduction::complete() const { return slots.size() == degree; }

EquationSpec Reduction::spec() const { return slot_spec(slots, degree); }

std::vector<EquationSpec> split_homogeneous(const EquationSpec& spec) {
  std::map<unsigned, std::vector<EquationTerm>> blocks;
  for (const auto& t : spec.terms()) blocks[t.degree()].push_back(t);
  std::vector<EquationSpec> out;
  for (auto& [l, terms] : blocks) out.emplace_back(std::move(terms));
  return out;
}

CanonicalEquation canonicalize(const EquationSpec& block) {
  auto l = block.degree();
  if (!l) throw std::invalid_argument("canonicalize needs a nonempty homogeneous block");
  CanonicalEquation ce;
  ce.degree = ce.source_degree = *l;
  std::map<unsigned, Combination> by_p;
  std::map<unsigned, std::size_t> counts;
  for (const auto& t : block.terms()) {
    if (t.q == 0) {
      ce.absorbed.push_back(t);
      continue;
    }
    accumulate(by_p[t.p], t.fn, t.coeff);
    ++counts[t.p];
    if (std::find(ce.shifted.begin(), ce.shifted.end(), t.fn) == ce.shifted.end()) ce.shifted.push_back(t.fn);
  }
  for (const auto& [p, n] : counts) ce.merged_terms += n - 1;
  ce.slots = nonzero_slots(by_p);
  if (ce.slots.empty()) throw DegenerateEquation("no term of degree " + std::to_string(*l) + " survives");
  if (ce.slots.size() == ce.degree) {
    ++ce.degree;
    for (auto& s : ce.slots) ++s.p;
    ce.degree_multiplications = 1;
  }
  return ce;
}

QMatrix closed_form_basis(unsigned n) {
  if (n == 0) throw std::invalid_argument("closed form needs n >= 1");
  QMatrix m(n + 1, n + 1);
  for (unsigned i = 0; i <= n; ++i)
    for (unsigned j = n - i; j <= n; ++j) {
      Rational v = binom(j + 1, j - n + i);
      m.at(i, j) = i % 2 ? -v : v;
    }
  return m;
}

Reduction reduce_missing(const CanonicalEquation& ce) {
  Reduction r;
  r.degree = ce.degree;
  r.slots = ce.slots;
  auto s = static_cast<unsigned>(missing_count(r.slots, r.degree));
  while (!r.slots.empty() && s > 0) {
    std::map<FnSymbol, Combination> by_name;
    for (const auto& slot : r.slots) by_name[slot_name(r.degree - slot.p)] = slot.combo;
    const EquationSpec reduced = diagonalize(substitute_ones(symmetrize(slot_spec(r.slots, r.degree)), s));
    std::map<unsigned, Combination> next;
    for (const auto& t : reduced.terms())
      for (const auto& [fn, c] : by_name.at(t.fn)) accumulate(next[t.p], fn, t.coeff * c);
    r.degree -= s;
    r.rounds.push_back(s);
    r.slots = nonzero_slots(next);
    s = missing_count(r.slots, r.degree) > 0 ? 1 : 0;
  }
  if (!r.rounds.empty() && !r.slots.empty()) make_primitive(r.slots);
  return r;
}

const FunctionSolution* SolutionStructure::find(const FnSymbol& name) const {
  for (const auto& f : functions)
    if (f.name == name) return &f;
  return nullptr;
}

std::vector<std::vector<Rational>> SolutionStructure::value_freedom() const {
  const std::size_t k = functions.size();
  if (relations.empty()) {
    std::vector<std::vector<Rational>> basis;
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<Rational> e(k, Rational(0));
      e[i] = 1;
      basis.push_back(std::move(e));
    }
    return basis;
  }
  QMatrix m(relations.size(), k);
  for (std::size_t r = 0; r < relations.size(); ++r)
    for (std::size_t c = 0; c < k; ++c) m.at(r, c) = relations[r][c];
  return kernel_basis(m);
}

SolutionStructure solve(const EquationSpec& spec, const SolveOptions& options) {
  const auto& fns = spec.functions();
  const std::size_t k = fns.size();
  std::map<FnSymbol, std::size_t> index;
  for (std::size_t i = 0; i < k; ++i) index[fns[i]] = i;

  // Columns: the normalized functions first, then derivation symbols.
  struct Column {
    unsigned level;
    int route;  // 0: closed form of the block itself, 1: reduced equation
  };
  std::vector<Column> columns(k, Column{kUnbounded, 0});
  std::vector<std::map<std::size_t, Rational>> rows;
  std::vector<std::vector<Rational>> value_rows;

  auto add_system = [&](const std::vector<Slot>& slots, unsigned degree, int route) {
    const unsigned n = degree - 1;
    std::vector<std::size_t> dcols;
    QMatrix basis;
    if (n > 0) {
      basis = closed_form_basis(n);
      for (unsigned j = 1; j <= n; ++j) {
        dcols.push_back(columns.size());
        columns.push_back(Column{j, route});
      }
    }
    for (unsigned i = 0; i <= n; ++i) {
      std::map<std::size_t, Rational> row;
      for (const auto& s : slots)
        if (s.p == i)
          for (const auto& [fn, c] : s.combo) row[index.at(fn)] += c;
      for (unsigned j = 1; j <= n; ++j)
        if (!basis.at(i, j).is_zero()) row[dcols[j - 1]] -= basis.at(i, j);
      std::erase_if(row, [](const auto& e) { return e.second.is_zero(); });
      if (!row.empty()) rows.push_back(std::move(row));
    }
  };

  if (options.normalized) {
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<Rational> e(k, Rational(0));
      e[i] = 1;
      value_rows.push_back(std::move(e));
    }
  }

  for (const auto& block : split_homogeneous(spec)) {
    if (!options.normalized) {
      std::vector<Rational> row(k, Rational(0));
      for (const auto& t : block.terms()) row[index.at(t.fn)] += t.coeff;
      if (std::any_of(row.begin(), row.end(), [](const Rational& v) { return !v.is_zero(); }))
        value_rows.push_back(std::move(row));
    }
    if (block.degree() == 0u) continue;
    CanonicalEquation ce;
    try {
      ce = canonicalize(block);
    } catch (const DegenerateEquation&) {
      continue;
    }
    add_system(ce.source_slots(), ce.source_degree, 0);
    const Reduction red = reduce_missing(ce);
    if (!red.slots.empty()) {
      if (!red.complete()) throw std::logic_error("reduction left a missing exponent");
      add_system(red.slots, red.degree, 1);
    }
  }

  // Order columns by level, highest first; within a level the reduced route last.
  std::vector<std::size_t> order(columns.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (columns[a].level != columns[b].level) return columns[a].level > columns[b].level;
    return columns[a].route < columns[b].route;
  });
  std::vector<std::size_t> position(columns.size());
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;

  QMatrix system(rows.size(), columns.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, v] : rows[r]) system.at(r, position[c]) = v;
  const auto kernel = kernel_basis(system);

  struct Found {
    std::size_t free_column;
    unsigned level;
    std::vector<Rational> on_functions;
  };
  std::vector<Found> derivs, additive;
  for (const auto& v : kernel) {
    std::size_t free = v.size();
    while (free > 0 && v[free - 1].is_zero()) --free;
    --free;
    Found f{free, columns[order[free]].level, std::vector<Rational>(v.begin(), v.begin() + static_cast<long>(k))};
    (f.level == kUnbounded ? additive : derivs).push_back(std::move(f));
  }
  std::stable_sort(derivs.begin(), derivs.end(), [](const Found& a, const Found& b) {
    return a.level != b.level ? a.level < b.level : a.free_column < b.free_column;
  });

  SolutionStructure out;
  std::vector<const Found*> all;
  std::map<unsigned, unsigned> seen;
  for (const auto& d : derivs) {
    unsigned dup = ++seen[d.level];
    std::string name = "D" + std::to_string(d.level);
    if (dup > 1) name += "_" + std::to_string(dup);
    out.parameters.push_back(Parameter{name, ParameterKind::derivation, d.level});
    all.push_back(&d);
  }
  for (std::size_t i = 0; i < additive.size(); ++i) {
    out.parameters.push_back(Parameter{"A" + std::to_string(i + 1), ParameterKind::additive, 0});
    all.push_back(&additive[i]);
  }

  out.relations = reduced_rows(value_rows, k);
  std::vector<bool> forced_zero(k, false);
  for (const auto& row : out.relations) {
    std::size_t nonzero = 0, at = 0;
    for (std::size_t c = 0; c < k; ++c)
      if (!row[c].is_zero()) {
        ++nonzero;
        at = c;
      }
    if (nonzero == 1) forced_zero[at] = true;
  }

  for (std::size_t i = 0; i < k; ++i) {
    FunctionSolution f{fns[i], forced_zero[i] ? Rational(0) : Rational(1), {}};
    for (const auto* p : all) f.coeffs.push_back(p->on_functions[i]);
    out.functions.push_back(std::move(f));
  }

  if (!additive.empty()) out.status = SolutionStatus::parametrized;
  else if (!derivs.empty()) out.status = SolutionStatus::unique;
  else out.status = SolutionStatus::trivial_only;

  if (options.verify) {
    for (const auto& inst : {power_instance(out, options.ring_arity), zero_instance(out, options.ring_arity)}) {
      if (verify_solution(spec, out, inst, options.ring_arity, options.bound))
        throw std::logic_error("solution failed its own verification");
    }
  }
  return out;
}

EquationSpec single_equation(const std::vector<Rational>& coeffs, const FnSymbol& fn) {
  const auto top = static_cast<unsigned>(coeffs.size());
  std::vector<EquationTerm> terms;
  for (unsigned j = 1; j <= top; ++j) terms.push_back(EquationTerm{coeffs[j - 1], top - j, j, fn});
  return EquationSpec(std::move(terms));
}

SingleReport analyze_single(const std::vector<Rational>& coeffs) {
  if (coeffs.empty() || std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& v) { return v.is_zero(); }))
    throw std::invalid_argument("coefficient vector is identically zero");
  auto weighted = [](const std::vector<Rational>& a) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += Rational(static_cast<long>(i + 1)) * a[i];
    return s;
  };

  SingleReport report;
  report.sum_weighted = weighted(coeffs);
  std::vector<Rational> a = coeffs;
  bool first = true;
  while (true) {
    report.chain.push_back(a);
    const auto n = static_cast<unsigned>(a.size()) - 1;  // a holds a_1..a_{n+1}
    if (!weighted(a).is_zero() || n == 0) {
      report.max_order = 0;
      report.trivial_only = true;
      return report;
    }
    // Set one variable of the symmetric form to 1: degree n+1 -> n.
    std::vector<Rational> next(n, Rational(0));
    for (unsigned i = 0; i < n; ++i) {
      Rational v = a[n - i - 1] / binom(n + 1, i + 1) + a[n - i] / binom(n + 1, i);
      next[n - i - 1] = binom(n, i) * v;
    }
    if (std::all_of(next.begin(), next.end(), [](const Rational& v) { return v.is_zero(); })) {
      report.max_order = n;
      report.binomial_proportional = first;
      return report;
    }
    first = false;
    a = std::move(next);
  }
}

std::optional<VerificationFailure> verify_assignment(const EquationSpec& spec, const Assignment& fns,
                                                     std::size_t ring_arity, unsigned bound) {
  for (const auto& block : split_homogeneous(spec)) {
    const unsigned l = *block.degree();
    if (l == 0) {
      Poly value(ring_arity);
      const Poly one = Poly::constant(ring_arity, 1);
      for (const auto& t : block.terms()) value += fns.at(t.fn)(one) * t.coeff;
      if (!value.is_zero()) return VerificationFailure{0, {}, value};
      continue;
    }
    const SymEquation sym = symmetrize(block);
    if (auto tuple = find_nonvanishing(sym, fns, ring_arity, bound)) {
      Poly value = evaluate(sym, fns, *tuple);
      return VerificationFailure{l, std::move(*tuple), std::move(value)};
    }
  }
  return std::nullopt;
}

AdditiveMap shift_map(std::size_t ring_arity, unsigned shift) {
  return AdditiveMap(
      ring_arity,
      [ring_arity, shift](const Poly& p) {
        Poly out(ring_arity);
        Monomial step = Monomial::one(ring_arity);
        step.exponents[0] = shift;
        for (const auto& [m, c] : p.terms())
          if (m.degree() > 0) out.add_term(m * step, c);
        return out;
      },
      "shift" + std::to_string(shift));
}

namespace {

std::map<FnSymbol, Rational> default_values(const SolutionStructure& s) {
  std::map<FnSymbol, Rational> values;
  const auto freedom = s.value_freedom();
  for (std::size_t i = 0; i < s.functions.size(); ++i) {
    Rational v = 0;
    for (std::size_t b = 0; b < freedom.size(); ++b) v += Rational(static_cast<long>(b + 1)) * freedom[b][i];
    values[s.functions[i].name] = v;
  }
  return values;
}

}  // namespace

Instance power_instance(const SolutionStructure& s, std::size_t ring_arity) {
  Instance inst;
  std::map<unsigned, unsigned> seen;
  unsigned shift = 0;
  for (const auto& p : s.parameters) {
    if (p.kind == ParameterKind::additive) {
      inst.additive.emplace(p.name, shift_map(ring_arity, ++shift));
      continue;
    }
    const unsigned dup = seen[p.level]++;
    std::vector<Poly> coeffs(ring_arity, Poly(ring_arity));
    coeffs[0] = Poly::variable_power(ring_arity, 0, dup);
    inst.derivations.emplace(p.name, DiffOperator::power(BasicDerivation(coeffs), p.level));
  }
  inst.values_at_one = default_values(s);
  return inst;
}

Instance zero_instance(const SolutionStructure& s, std::size_t ring_arity) {
  Instance inst;
  for (const auto& p : s.parameters) {
    if (p.kind == ParameterKind::additive) inst.additive.emplace(p.name, AdditiveMap::zero(ring_arity));
    else inst.derivations.emplace(p.name, DiffOperator::zero(ring_arity));
  }
  inst.values_at_one = default_values(s);
  return inst;
}

Assignment instantiate(const SolutionStructure& s, const Instance& inst, std::size_t ring_arity, unsigned bound) {
  std::vector<AdditiveMap> maps;
  for (const auto& p : s.parameters) {
    if (p.kind == ParameterKind::additive) {
      auto it = inst.additive.find(p.name);
      if (it == inst.additive.end()) throw std::invalid_argument("no value for parameter " + p.name);
      maps.push_back(it->second);
      continue;
    }
    auto it = inst.derivations.find(p.name);
    if (it == inst.derivations.end()) throw std::invalid_argument("no value for parameter " + p.name);
    if (it->second.arity() != ring_arity)
      throw std::invalid_argument("operator for " + p.name + " lives in a ring of different arity");
    if (auto w = order_violation(it->second, p.level, bound)) {
      std::string where;
      for (const auto& x : *w) where += (where.empty() ? "" : ", ") + x.str();
      throw std::invalid_argument("operator " + it->second.str() + " for " + p.name + " fails the order-" +
                                  std::to_string(p.level) + " identity at (" + where + ")");
    }
    maps.emplace_back(it->second);
  }
  Assignment out;
  for (const auto& f : s.functions) {
    Rational value = 0;
    if (auto it = inst.values_at_one.find(f.name); it != inst.values_at_one.end()) value = it->second * f.x_coeff;
    out.emplace(f.name, AdditiveMap(
                            ring_arity,
                            [maps, coeffs = f.coeffs, value](const Poly& x) {
                              Poly r = x * value;
                              for (std::size_t i = 0; i < maps.size(); ++i)
                                if (!coeffs[i].is_zero()) r += maps[i](x) * coeffs[i];
                              return r;
                            },
                            f.name));
  }
  return out;
}

std::optional<VerificationFailure> verify_solution(const EquationSpec& spec, const SolutionStructure& s,
                                                   const Instance& inst, std::size_t ring_arity,
                                                   unsigned bound) {
  return verify_assignment(spec, instantiate(s, inst, ring_arity, bound), ring_arity, bound);
}

}  // namespace feq
