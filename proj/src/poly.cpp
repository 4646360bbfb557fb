#include "feq/poly.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace feq {

std::uint64_t Monomial::degree() const {
  std::uint64_t d = 0;
  for (auto e : exponents) d += e;
  return d;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  if (a.arity() != b.arity()) throw std::invalid_argument("monomial arity mismatch");
  Monomial r = a;
  for (std::size_t i = 0; i < r.exponents.size(); ++i) r.exponents[i] += b.exponents[i];
  return r;
}

bool GrlexDescending::operator()(const Monomial& a, const Monomial& b) const {
  auto da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  return a.exponents > b.exponents;
}

Poly::Poly(std::size_t arity) : arity_(arity) {
  if (arity == 0) throw std::invalid_argument("polynomial ring needs at least one variable");
}

Poly Poly::constant(std::size_t arity, const Rational& c) {
  Poly p(arity);
  p.add_term(Monomial::one(arity), c);
  return p;
}

Poly Poly::variable(std::size_t arity, std::size_t index) { return variable_power(arity, index, 1); }

Poly Poly::variable_power(std::size_t arity, std::size_t index, std::uint32_t exponent) {
  if (index >= arity) throw std::out_of_range("variable index out of range");
  Monomial m = Monomial::one(arity);
  m.exponents[index] = exponent;
  return monomial(m);
}

Poly Poly::monomial(const Monomial& m, const Rational& c) {
  Poly p(m.arity());
  p.add_term(m, c);
  return p;
}

Rational Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

long Poly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<long>(terms_.begin()->first.degree());
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (m.arity() != arity_) throw std::invalid_argument("monomial arity mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Poly::check_arity(const Poly& o) const {
  if (arity_ != o.arity_) {
    throw std::invalid_argument("polynomial arity mismatch: " + std::to_string(arity_) + " vs " +
                                std::to_string(o.arity_));
  }
}

Poly& Poly::operator+=(const Poly& o) {
  check_arity(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_arity(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_arity(b);
  Poly r(a.arity_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

Poly Poly::partial(std::size_t index) const {
  if (index >= arity_) throw std::out_of_range("partial derivative index out of range");
  Poly r(arity_);
  for (const auto& [m, c] : terms_) {
    auto e = m.exponents[index];
    if (e == 0) continue;
    Monomial dm = m;
    dm.exponents[index] = e - 1;
    r.add_term(dm, c * Rational(static_cast<long>(e)));
  }
  return r;
}

Poly Poly::pow(unsigned exponent) const {
  Poly result = constant(arity_, 1);
  Poly base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent) base = base * base;
  }
  return result;
}

std::string variable_name(std::size_t arity, std::size_t index) {
  return arity == 1 ? std::string("t") : "t" + std::to_string(index + 1);
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> factors;
    for (std::size_t i = 0; i < m.exponents.size(); ++i) {
      if (m.exponents[i] == 0) continue;
      std::string f = variable_name(arity_, i);
      if (m.exponents[i] > 1) f += "^" + std::to_string(m.exponents[i]);
      factors.push_back(std::move(f));
    }
    if (factors.empty()) {
      os << mag.str();
      continue;
    }
    if (!mag.is_one()) os << mag.str() << "*";
    for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
  }
  return os.str();
}

Poly poly_arith(PolyOp kind, const Poly& a, const Poly& b) {
  switch (kind) {
    case PolyOp::add: return a + b;
    case PolyOp::sub: return a - b;
    case PolyOp::mul: return a * b;
  }
  throw std::invalid_argument("unknown polynomial operation");
}

std::vector<Monomial> monomials_up_to(std::size_t arity, unsigned max_degree) {
  std::vector<Monomial> out;
  std::vector<std::uint32_t> e(arity, 0);
  // Enumerate by total degree, then lexicographically within a degree.
  std::function<void(std::size_t, unsigned)> fill = [&](std::size_t pos, unsigned remaining) {
    if (pos + 1 == arity) {
      e[pos] = remaining;
      out.emplace_back(e);
      return;
    }
    for (unsigned v = 0; v <= remaining; ++v) {
      e[pos] = v;
      fill(pos + 1, remaining - v);
    }
  };
  for (unsigned d = 0; d <= max_degree; ++d) fill(0, d);
  return out;
}

}  // namespace feq
