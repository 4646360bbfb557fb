#include "feq/multiadditive.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace feq {

namespace {

SymEquation collect(unsigned arity, const std::map<std::pair<unsigned, FnSymbol>, Rational>& acc) {
  SymEquation out{arity, {}};
  for (const auto& [key, coeff] : acc)
    if (!coeff.is_zero()) out.terms.push_back(SymTerm{coeff, key.first, key.second});
  return out;
}

Poly product(const std::vector<Poly>& xs, std::size_t mask, bool inside) {
  Poly r = Poly::constant(xs.front().arity(), 1);
  for (std::size_t j = 0; j < xs.size(); ++j)
    if (static_cast<bool>(mask & (std::size_t{1} << j)) == inside) r = r * xs[j];
  return r;
}

std::vector<Poly> monomial_basis(std::size_t ring_arity, unsigned bound) {
  std::vector<Poly> out;
  for (const auto& m : monomials_up_to(ring_arity, bound)) out.push_back(Poly::monomial(m));
  return out;
}

Rational factorial(unsigned n) {
  Rational r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= Rational(static_cast<long>(i));
  return r;
}

}  // namespace

SymEquation symmetrize(const EquationSpec& spec) {
  auto l = spec.degree();
  if (!l) throw std::invalid_argument("symmetrize needs a nonempty homogeneous equation");
  std::map<std::pair<unsigned, FnSymbol>, Rational> acc;
  for (const auto& t : spec.terms()) acc[{t.p, t.fn}] += t.coeff / binom(*l, t.p);
  return collect(*l, acc);
}

EquationSpec diagonalize(const SymEquation& sym) {
  std::vector<EquationTerm> terms;
  for (const auto& t : sym.terms)
    terms.push_back(EquationTerm{t.coeff * binom(sym.arity, t.p), t.p, sym.inner(t), t.fn});
  return EquationSpec(std::move(terms));
}

SymEquation substitute_ones(const SymEquation& sym, unsigned s) {
  if (s >= sym.arity) throw std::invalid_argument("cannot substitute 1 for every variable");
  if (s == 0) return sym;
  const unsigned rest = sym.arity - s;
  std::map<std::pair<unsigned, FnSymbol>, Rational> acc;
  for (const auto& t : sym.terms) {
    const unsigned q = sym.inner(t);
    // j of the ones land inside the argument of fn
    for (unsigned j = 0; j <= std::min(s, q); ++j) {
      if (q - j == 0) continue;
      if (t.p + j < s) continue;
      const unsigned p_new = t.p + j - s;
      if (p_new > rest) continue;
      acc[{p_new, t.fn}] += t.coeff * binom(s, j);
    }
  }
  return collect(rest, acc);
}

Poly evaluate(const SymEquation& sym, const Assignment& fns, const std::vector<Poly>& xs) {
  if (xs.size() != sym.arity) throw std::invalid_argument("tuple length differs from the form's arity");
  if (xs.empty()) throw std::invalid_argument("form of arity zero");
  const std::size_t ring = xs.front().arity();
  Poly total(ring);
  const std::size_t masks = std::size_t{1} << sym.arity;
  for (std::size_t mask = 0; mask < masks; ++mask) {
    const auto inside_count = static_cast<unsigned>(std::popcount(mask));
    Poly inside, outside;
    bool ready = false;
    for (const auto& t : sym.terms) {
      if (sym.inner(t) != inside_count) continue;
      auto it = fns.find(t.fn);
      if (it == fns.end()) throw std::invalid_argument("no assignment for function '" + t.fn + "'");
      if (!ready) {
        inside = product(xs, mask, true);
        outside = product(xs, mask, false);
        ready = true;
      }
      total += (outside * it->second(inside)) * t.coeff;
    }
  }
  return total;
}

std::optional<std::vector<Poly>> find_nonvanishing(const SymEquation& sym, const Assignment& fns,
                                                   std::size_t ring_arity, unsigned bound) {
  if (sym.terms.empty()) return std::nullopt;
  const auto basis = monomial_basis(ring_arity, bound);
  std::optional<std::vector<Poly>> witness;
  for_each_multiset(basis.size(), sym.arity, [&](const std::vector<std::size_t>& idx) {
    std::vector<Poly> xs;
    for (auto i : idx) xs.push_back(basis[i]);
    if (!evaluate(sym, fns, xs).is_zero()) {
      witness = std::move(xs);
      return false;
    }
    return true;
  });
  return witness;
}

Poly difference_iterate(const std::function<Poly(const Poly&)>& trace, const std::vector<Poly>& increments,
                        const Poly& x) {
  const std::size_t r = increments.size();
  Poly total(x.arity());
  for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
    Poly point = x;
    for (std::size_t j = 0; j < r; ++j)
      if (mask & (std::size_t{1} << j)) point += increments[j];
    if ((r - static_cast<std::size_t>(std::popcount(mask))) % 2) total -= trace(point);
    else total += trace(point);
  }
  return total;
}

PolarizationReport polarization_report(const AdditiveMap& a, unsigned n, unsigned bound) {
  if (n == 0) throw std::invalid_argument("polarization needs n >= 1");
  PolarizationReport report;
  report.n = n;
  report.bound = bound;
  const auto basis = monomial_basis(a.arity(), bound);
  const Rational nfact = factorial(n);
  auto trace = [&](const Poly& x) { return a(x).pow(n); };

  for (const auto& x : basis) {
    for_each_multiset(basis.size(), n, [&](const std::vector<std::size_t>& idx) {
      std::vector<Poly> ys;
      Poly expected = Poly::constant(a.arity(), nfact);
      for (auto i : idx) {
        ys.push_back(basis[i]);
        expected = expected * a(basis[i]);
      }
      ++report.mixed_checked;
      if (difference_iterate(trace, ys, x) != expected) ++report.mixed_failed;
      return true;
    });
    for (const auto& y : basis) {
      ++report.pure_checked;
      if (difference_iterate(trace, std::vector<Poly>(n, y), x) != trace(y) * nfact) ++report.pure_failed;
    }
    for_each_multiset(basis.size(), n + 1, [&](const std::vector<std::size_t>& idx) {
      std::vector<Poly> ys;
      for (auto i : idx) ys.push_back(basis[i]);
      ++report.vanishing_checked;
      if (!difference_iterate(trace, ys, x).is_zero()) ++report.vanishing_failed;
      return true;
    });
  }
  return report;
}

bool polarization_check(const AdditiveMap& a, unsigned n, unsigned bound) {
  return polarization_report(a, n, bound).passed();
}

std::string render_sym(const SymEquation& sym) {
  if (sym.terms.empty()) return "0";
  mpz_class scale = 1;
  for (const auto& t : sym.terms) scale = lcm(scale, t.coeff.denominator());
  const Rational factor{scale};

  std::ostringstream os;
  bool first = true;
  auto var = [](std::size_t j) { return "x" + std::to_string(j + 1); };
  for (const auto& t : sym.terms) {
    const Rational c = t.coeff * factor;
    const unsigned q = sym.inner(t);
    for (std::size_t mask = (std::size_t{1} << sym.arity); mask-- > 0;) {
      if (static_cast<unsigned>(std::popcount(mask)) != q) continue;
      std::vector<std::string> out, in;
      for (std::size_t j = 0; j < sym.arity; ++j) (mask & (std::size_t{1} << j) ? in : out).push_back(var(j));
      if (first) {
        if (c.sign() < 0) os << "-";
      } else {
        os << (c.sign() < 0 ? " - " : " + ");
      }
      first = false;
      if (!c.abs().is_one()) os << c.abs().str() << "*";
      for (const auto& v : out) os << v << "*";
      os << t.fn << "(";
      if (in.empty()) os << "1";
      for (std::size_t k = 0; k < in.size(); ++k) os << (k ? "*" : "") << in[k];
      os << ")";
    }
  }
  return os.str();
}

}  // namespace feq
