#include "feq/spectral.hpp"

#include <algorithm>
#include <sstream>

namespace feq {

QMatrix transfer_matrix(unsigned n) {
  if (n == 0) throw std::invalid_argument("transfer matrix needs n >= 1");
  const Rational scale = Rational(1, static_cast<long>(n + 1));
  QMatrix m(n + 1, n + 1);
  for (unsigned j = 1; j <= n; ++j) {
    m.at(j - 1, j - 1) = Rational(static_cast<long>(j)) * scale;
    m.at(j - 1, j) = Rational(-static_cast<long>(j + 1)) * scale;
  }
  m.at(n, n) = 1;
  return m;
}

QMatrix matrix_power(const QMatrix& m, unsigned k) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix power needs a square matrix");
  QMatrix result = QMatrix::identity(m.rows());
  QMatrix base = m;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k) base = base * base;
  }
  return result;
}

namespace {

/// v with (a - I) v = 0 and v[pin] = 1.
std::vector<Rational> fixed_vector(const QMatrix& a, std::size_t pin) {
  const std::size_t n = a.rows();
  QMatrix sys(n + 1, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) sys.at(r, c) = a.at(r, c) - (r == c ? Rational(1) : Rational(0));
  sys.at(n, pin) = 1;
  std::vector<Rational> rhs(n + 1, Rational(0));
  rhs[n] = 1;
  auto result = qmat_solve(sys, rhs);
  if (auto* u = std::get_if<UniqueSolution>(&result)) return u->x;
  throw std::logic_error("eigenvalue 1 is not simple");
}

}  // namespace

QMatrix limit_matrix(unsigned n) {
  const QMatrix m = transfer_matrix(n);
  const std::vector<Rational> right = fixed_vector(m, n);
  const std::vector<Rational> left = fixed_vector(m.transpose(), n);
  Rational pairing = 0;
  for (std::size_t i = 0; i <= n; ++i) pairing += left[i] * right[i];
  QMatrix l(n + 1, n + 1);
  for (std::size_t r = 0; r <= n; ++r)
    for (std::size_t c = 0; c <= n; ++c) l.at(r, c) = right[r] * left[c] / pairing;
  return l;
}

TranslatedFamily translate_family(const SymEquation& sym) {
  std::map<std::pair<unsigned, FnSymbol>, Rational> acc;
  for (const auto& t : sym.terms) {
    const unsigned q = sym.inner(t);
    if (q == 0) continue;  // c x^l f(1) cancels against x * c x^{l-1} f(1)
    const Rational w = t.coeff * binom(sym.arity - 1, q - 1);
    acc[{t.p, t.fn}] += w;
    acc[{t.p + 1, t.fn}] -= w;
  }
  TranslatedFamily fam;
  fam.degree = sym.arity;
  for (const auto& [key, coeff] : acc)
    if (!coeff.is_zero()) fam.terms.push_back(FamilyTerm{coeff, key.first, sym.arity - key.first, key.second});
  return fam;
}

TranslatedFamily translate_family(const EquationSpec& homogeneous) { return translate_family(symmetrize(homogeneous)); }

Poly TranslatedFamily::evaluate(const Assignment& fns, const Poly& x, const Poly& c) const {
  Poly total(x.arity());
  for (const auto& t : terms) total += (x.pow(t.p) * fns.at(t.fn)(c * x.pow(t.q))) * t.coeff;
  return total;
}

EquationSpec TranslatedFamily::at_one() const {
  std::vector<EquationTerm> out;
  for (const auto& t : terms) out.push_back(EquationTerm{t.coeff, t.p, t.q, t.fn});
  return EquationSpec(std::move(out));
}

std::string TranslatedFamily::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms) {
    if (first) {
      if (t.coeff.sign() < 0) os << "-";
    } else {
      os << (t.coeff.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (!t.coeff.abs().is_one()) os << t.coeff.abs().str() << "*";
    if (t.p == 1) os << "x*";
    else if (t.p > 1) os << "x^" << t.p << "*";
    os << t.fn << "(c";
    if (t.q == 1) os << "*x";
    else if (t.q > 1) os << "*x^" << t.q;
    os << ")";
  }
  return os.str();
}

std::optional<std::pair<Poly, Poly>> family_violation(const TranslatedFamily& fam, const Assignment& fns,
                                                      std::size_t ring_arity, unsigned bound) {
  std::vector<Poly> basis;
  for (const auto& m : monomials_up_to(ring_arity, bound)) basis.push_back(Poly::monomial(m));
  for (const auto& x : basis)
    for (const auto& c : basis)
      if (!fam.evaluate(fns, x, c).is_zero()) return std::make_pair(x, c);
  return std::nullopt;
}

namespace {

std::string unknown(unsigned j) { return "f" + std::to_string(j); }

EquationSpec full_form(unsigned n) {
  std::vector<EquationTerm> terms;
  for (unsigned i = 0; i <= n; ++i) terms.push_back(EquationTerm{1, i, n + 1 - i, unknown(n + 1 - i)});
  return EquationSpec(std::move(terms));
}

}  // namespace

QMatrix transfer_matrix_from_family(unsigned n) {
  const TranslatedFamily fam = translate_family(full_form(n));
  QMatrix m(n + 1, n + 1);
  for (const auto& t : fam.terms) {
    if (t.q == 0) continue;
    const auto k = static_cast<std::size_t>(std::stoul(t.fn.substr(1)));
    m.at(t.q - 1, k - 1) += t.coeff;
  }
  return m;
}

Residual exponential_residual(const std::vector<Rational>& coeffs) {
  if (std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& v) { return v.is_zero(); }))
    throw std::invalid_argument("coefficient vector is identically zero");
  Residual out;
  out.poly = Poly(1);
  std::vector<Rational> c(coeffs.size(), Rational(0));  // c[e] is the coefficient of t^e
  for (std::size_t j = 1; j <= coeffs.size(); ++j) {
    c[j - 1] = Rational(static_cast<long>(j)) * coeffs[j - 1];
    out.poly += Poly::variable_power(1, 0, static_cast<std::uint32_t>(j - 1)) * c[j - 1];
  }
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  if (c.size() <= 1) return out;

  mpz_class den = 1;
  for (const auto& v : c) den = lcm(den, v.denominator());
  std::vector<mpz_class> ints;
  for (const auto& v : c) ints.push_back((v * Rational(den)).numerator());
  std::size_t low = 0;
  while (ints[low] == 0) ++low;

  auto divisors = [](mpz_class v) {
    v = abs(v);
    std::vector<mpz_class> d;
    for (mpz_class i = 1; i * i <= v; ++i)
      if (v % i == 0) {
        d.push_back(i);
        if (i * i != v) d.push_back(v / i);
      }
    return d;
  };
  auto value_at = [&](const Rational& t) {
    Rational acc = 0;
    for (std::size_t e = c.size(); e-- > 0;) acc = acc * t + c[e];
    return acc;
  };

  std::vector<Rational> roots;
  if (low > 0) roots.push_back(0);
  for (const auto& num : divisors(ints[low]))
    for (const auto& dd : divisors(ints.back()))
      for (int sign : {1, -1}) {
        Rational r(mpz_class(num * sign), dd);
        if (value_at(r).is_zero() && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
      }
  std::sort(roots.begin(), roots.end());
  out.roots = std::move(roots);
  return out;
}

DescendResult descending_solve(unsigned n) {
  if (n == 0) throw std::invalid_argument("descending process needs n >= 1");
  DescendResult out;
  out.n = n;
  std::vector<Combination> h(n + 2);  // h[j] for j = 1..n+1
  for (unsigned j = 1; j <= n + 1; ++j) h[j][unknown(j)] = 1;

  std::vector<Combination> tops(n + 1);  // tops[m] lies in D_m
  for (unsigned m = n; m >= 1; --m) {
    DescendStep step;
    step.level = m;
    step.limit_column = limit_matrix(m).column(m);
    step.top = h[m + 1];
    for (unsigned j = 1; j <= m; ++j) {
      for (const auto& [fn, c] : step.top) {
        Rational& slot = h[j][fn];
        slot -= step.limit_column[j - 1] * c;
        if (slot.is_zero()) h[j].erase(fn);
      }
      step.reduced.push_back(h[j]);
    }
    tops[m] = step.top;
    out.steps.push_back(std::move(step));
  }
  tops[0] = h[1];  // lies in D_0 = {0}

  // Rows: T_m as a combination of f_1..f_{n+1}; invert to get f in terms of T.
  QMatrix relation(n + 1, n + 1);
  for (unsigned m = 0; m <= n; ++m)
    for (const auto& [fn, c] : tops[m]) relation.at(m, std::stoul(fn.substr(1)) - 1) = c;
  out.coefficients = QMatrix(n + 1, n);
  for (unsigned m = 1; m <= n; ++m) {
    std::vector<Rational> e(n + 1, Rational(0));
    e[m] = 1;
    auto solved = qmat_solve(relation, e);
    const auto* u = std::get_if<UniqueSolution>(&solved);
    if (!u) throw std::logic_error("descending relations are singular");
    const Rational sign = (n - m) % 2 ? Rational(-1) : Rational(1);
    for (unsigned i = 0; i <= n; ++i) out.coefficients.at(i, m - 1) = u->x[n - i] * sign;
  }
  return out;
}

namespace {

SolutionStructure structure_from_rows(const QMatrix& rows, const std::vector<FnSymbol>& names,
                                      const std::vector<Rational>& divisors) {
  SolutionStructure s;
  const std::size_t n = rows.cols();
  for (unsigned j = 1; j <= n; ++j)
    s.parameters.push_back(Parameter{"D" + std::to_string(j), ParameterKind::derivation, j});
  for (std::size_t i = 0; i < names.size(); ++i) {
    FunctionSolution f{names[i], 0, {}};
    for (std::size_t j = 0; j < n; ++j) f.coeffs.push_back(rows.at(i, j) / divisors[i]);
    s.functions.push_back(std::move(f));
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::vector<Rational> e(names.size(), Rational(0));
    e[i] = 1;
    s.relations.push_back(std::move(e));
  }
  s.status = SolutionStatus::unique;
  return s;
}

std::vector<FnSymbol> row_names(unsigned n) {
  std::vector<FnSymbol> names;
  for (unsigned i = 0; i <= n; ++i) names.push_back(unknown(n + 1 - i));
  return names;
}

}  // namespace

SolutionStructure closed_form_structure(unsigned n) {
  const QMatrix basis = closed_form_basis(n);
  QMatrix rows(n + 1, n);
  for (unsigned i = 0; i <= n; ++i)
    for (unsigned j = 1; j <= n; ++j) rows.at(i, j - 1) = basis.at(i, j);
  return structure_from_rows(rows, row_names(n), std::vector<Rational>(n + 1, Rational(1)));
}

SolutionStructure descending_structure(const DescendResult& r) {
  return structure_from_rows(r.coefficients, row_names(r.n), std::vector<Rational>(r.n + 1, Rational(1)));
}

SolutionStructure descending_solve(const EquationSpec& spec) {
  auto l = spec.degree();
  if (!l || *l < 2) throw std::invalid_argument("descending process needs a homogeneous equation of degree >= 2");
  const unsigned n = *l - 1;
  std::vector<const EquationTerm*> by_p(n + 1, nullptr);
  for (const auto& t : spec.terms()) {
    if (t.q == 0) throw std::invalid_argument("descending process needs every q >= 1");
    if (by_p[t.p]) throw std::invalid_argument("exponent " + std::to_string(t.p) + " holds several unknowns");
    by_p[t.p] = &t;
  }
  std::vector<FnSymbol> names;
  std::vector<Rational> divisors;
  for (unsigned p = 0; p <= n; ++p) {
    if (!by_p[p]) throw std::invalid_argument("missing exponent x^" + std::to_string(p));
    if (std::find(names.begin(), names.end(), by_p[p]->fn) != names.end())
      throw std::invalid_argument("unknown " + by_p[p]->fn + " occupies several exponents");
    names.push_back(by_p[p]->fn);
    divisors.push_back(by_p[p]->coeff);
  }
  SolutionStructure s = structure_from_rows(descending_solve(n).coefficients, names, divisors);
  std::vector<FunctionSolution> ordered;
  for (const auto& fn : spec.functions()) ordered.push_back(*s.find(fn));
  s.functions = std::move(ordered);
  return s;
}

std::string render_matrix(const QMatrix& m) {
  mpz_class den = 1;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) den = lcm(den, m.at(r, c).denominator());
  if (den == 1) return m.str();
  return "(1/" + den.get_str() + ") *\n" + (Rational(den) * m).str();
}

}  // namespace feq
