#include "feq/derivations.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace feq {

BasicDerivation::BasicDerivation(std::vector<Poly> coefficients) : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) throw std::invalid_argument("derivation needs at least one coefficient");
  for (const auto& c : coefficients_)
    if (c.arity() != coefficients_.size())
      throw std::invalid_argument("derivation coefficient arity must equal the ring arity");
}

BasicDerivation BasicDerivation::partial(std::size_t arity, std::size_t index) {
  std::vector<Poly> cs(arity, Poly(arity));
  cs.at(index) = Poly::constant(arity, 1);
  return BasicDerivation(std::move(cs));
}

std::optional<std::size_t> BasicDerivation::partial_index() const {
  std::optional<std::size_t> found;
  const Poly one = Poly::constant(arity(), 1);
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (coefficients_[i].is_zero()) continue;
    if (found || coefficients_[i] != one) return std::nullopt;
    found = i;
  }
  return found;
}

Poly BasicDerivation::operator()(const Poly& p) const {
  if (p.arity() != arity()) throw std::invalid_argument("derivation applied to polynomial of different arity");
  Poly r(arity());
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (coefficients_[i].is_zero()) continue;
    r += coefficients_[i] * p.partial(i);
  }
  return r;
}

std::string BasicDerivation::str() const {
  if (auto idx = partial_index()) return "d" + std::to_string(*idx + 1);
  std::ostringstream os;
  os << "D[";
  for (std::size_t i = 0; i < coefficients_.size(); ++i) os << (i ? "; " : "") << coefficients_[i].str();
  os << "]";
  return os.str();
}

DiffOperator DiffOperator::identity(std::size_t arity) {
  DiffOperator op(arity);
  op.add_term(1, {});
  return op;
}

DiffOperator DiffOperator::of(const BasicDerivation& d) {
  DiffOperator op(d.arity());
  op.add_term(1, {d});
  return op;
}

DiffOperator DiffOperator::power(const BasicDerivation& d, unsigned k) {
  DiffOperator op(d.arity());
  op.add_term(1, std::vector<BasicDerivation>(k, d));
  return op;
}

void DiffOperator::add_term(const Rational& scalar, std::vector<BasicDerivation> word) {
  if (scalar.is_zero()) return;
  for (const auto& d : word)
    if (d.arity() != arity_) throw std::invalid_argument("operator word arity mismatch");
  terms_.push_back(Term{scalar, std::move(word)});
}

std::size_t DiffOperator::order() const {
  std::size_t o = 0;
  for (const auto& t : terms_) o = std::max(o, t.word.size());
  return o;
}

bool DiffOperator::includes_identity() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.word.empty(); });
}

Poly DiffOperator::apply(const Poly& p) const {
  if (p.arity() != arity_) throw std::invalid_argument("operator applied to polynomial of different arity");
  Poly result(arity_);
  for (const auto& t : terms_) {
    Poly v = p;
    for (auto it = t.word.rbegin(); it != t.word.rend() && !v.is_zero(); ++it) v = (*it)(v);
    result += v * t.scalar;
  }
  return result;
}

DiffOperator DiffOperator::operator+(const DiffOperator& o) const {
  if (o.arity_ != arity_) throw std::invalid_argument("operator arity mismatch");
  DiffOperator r = *this;
  for (const auto& t : o.terms_) r.terms_.push_back(t);
  return r;
}

DiffOperator DiffOperator::operator*(const Rational& s) const {
  DiffOperator r(arity_);
  for (const auto& t : terms_) r.add_term(t.scalar * s, t.word);
  return r;
}

DiffOperator DiffOperator::compose(const DiffOperator& o) const {
  if (o.arity_ != arity_) throw std::invalid_argument("operator arity mismatch");
  DiffOperator r(arity_);
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      auto word = a.word;
      word.insert(word.end(), b.word.begin(), b.word.end());
      r.add_term(a.scalar * b.scalar, std::move(word));
    }
  return r;
}

DiffOperator DiffOperator::normalized() const {
  std::vector<Term> sorted;
  for (auto t : terms_) {
    bool pure = std::all_of(t.word.begin(), t.word.end(),
                            [](const BasicDerivation& d) { return d.partial_index().has_value(); });
    if (pure) {
      std::stable_sort(t.word.begin(), t.word.end(), [](const BasicDerivation& a, const BasicDerivation& b) {
        return *a.partial_index() < *b.partial_index();
      });
    }
    auto same = std::find_if(sorted.begin(), sorted.end(), [&](const Term& s) { return s.word == t.word; });
    if (same != sorted.end()) {
      same->scalar += t.scalar;
    } else {
      sorted.push_back(std::move(t));
    }
  }
  DiffOperator r(arity_);
  for (auto& t : sorted) r.add_term(t.scalar, std::move(t.word));
  return r;
}

std::string DiffOperator::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational mag = t.scalar.abs();
    if (first) {
      if (t.scalar.sign() < 0) os << "-";
    } else {
      os << (t.scalar.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (!mag.is_one()) os << mag.str() << "*";
    if (t.word.empty()) {
      os << "id";
      continue;
    }
    for (std::size_t i = 0; i < t.word.size(); ++i) os << (i ? "∘" : "") << t.word[i].str();
  }
  return os.str();
}

AdditiveMap::AdditiveMap(const DiffOperator& op)
    : arity_(op.arity()), fn_([op](const Poly& p) { return op.apply(p); }), name_(op.str()) {}

AdditiveMap AdditiveMap::zero(std::size_t arity) {
  return AdditiveMap(arity, [arity](const Poly&) { return Poly(arity); }, "0");
}

AdditiveMap AdditiveMap::identity(std::size_t arity) {
  return AdditiveMap(arity, [](const Poly& p) { return p; }, "id");
}

Poly AdditiveMap::operator()(const Poly& p) const {
  if (p.arity() != arity_) throw std::invalid_argument("additive map applied to polynomial of different arity");
  return fn_(p);
}

AdditiveMap AdditiveMap::operator+(const AdditiveMap& o) const {
  if (o.arity_ != arity_) throw std::invalid_argument("additive map arity mismatch");
  return AdditiveMap(arity_, [a = fn_, b = o.fn_](const Poly& p) { return a(p) + b(p); },
                     name_ + " + " + o.name_);
}

AdditiveMap AdditiveMap::operator*(const Rational& s) const {
  return AdditiveMap(arity_, [a = fn_, s](const Poly& p) { return a(p) * s; }, s.str() + "*(" + name_ + ")");
}

Poly defect(const AdditiveMap& a, const Poly& x, const Poly& y) {
  return a(x * y) - x * a(y) - a(x) * y;
}

Poly leibniz_expand(const BasicDerivation& d, unsigned k, const Poly& x, const Poly& y) {
  std::vector<Poly> dx{x}, dy{y};
  for (unsigned i = 1; i <= k; ++i) {
    dx.push_back(d(dx.back()));
    dy.push_back(d(dy.back()));
  }
  Poly sum(x.arity());
  for (unsigned i = 0; i <= k; ++i) sum += binom(k, i) * (dx[i] * dy[k - i]);
  return sum;
}

Poly order_identity(const AdditiveMap& a, const std::vector<Poly>& xs) {
  const std::size_t len = xs.size();
  if (len == 0) throw std::invalid_argument("order identity needs at least one argument");
  const std::size_t arity = xs.front().arity();
  Poly total(arity);
  // Subsets I with |I| <= n = len - 1; the full set is excluded.
  const std::size_t full = (std::size_t{1} << len) - 1;
  for (std::size_t mask = 0; mask < full; ++mask) {
    Poly outside = Poly::constant(arity, 1);
    Poly inside = Poly::constant(arity, 1);
    int size = 0;
    for (std::size_t j = 0; j < len; ++j) {
      if (mask & (std::size_t{1} << j)) {
        outside = outside * xs[j];
        ++size;
      } else {
        inside = inside * xs[j];
      }
    }
    Poly term = outside * a(inside);
    if (size % 2) total -= term;
    else total += term;
  }
  return total;
}

void for_each_multiset(std::size_t count, std::size_t len,
                       const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  if (count == 0) return;
  std::vector<std::size_t> idx(len, 0);
  while (true) {
    if (!visit(idx)) return;
    std::size_t pos = len;
    while (pos > 0 && idx[pos - 1] == count - 1) --pos;
    if (pos == 0) return;
    std::size_t v = idx[pos - 1] + 1;
    for (std::size_t j = pos - 1; j < len; ++j) idx[j] = v;
  }
}

std::optional<std::vector<Poly>> order_violation(const AdditiveMap& a, unsigned n, unsigned degree_bound) {
  std::vector<Poly> basis;
  for (const auto& m : monomials_up_to(a.arity(), degree_bound)) basis.push_back(Poly::monomial(m));
  std::optional<std::vector<Poly>> witness;
  for_each_multiset(basis.size(), n + 1, [&](const std::vector<std::size_t>& idx) {
    std::vector<Poly> xs;
    xs.reserve(idx.size());
    for (auto i : idx) xs.push_back(basis[i]);
    if (!order_identity(a, xs).is_zero()) {
      witness = std::move(xs);
      return false;
    }
    return true;
  });
  return witness;
}

bool order_check(const AdditiveMap& a, unsigned n, unsigned degree_bound) {
  return !order_violation(a, n, degree_bound).has_value();
}

namespace {

class OperatorParser {
 public:
  OperatorParser(std::string_view text, std::size_t arity) : text_(text), arity_(arity) {}

  DiffOperator parse() {
    DiffOperator op(arity_);
    skip();
    if (at_end()) fail("empty operator");
    bool first = true;
    while (!at_end()) {
      Rational sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      parse_term(op, sign);
      skip();
    }
    return op;
  }

 private:
  void parse_term(DiffOperator& op, const Rational& sign) {
    Rational scalar = 1;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::size_t start = pos_;
      while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/')) ++pos_;
      scalar = Rational::parse(text_.substr(start, pos_ - start));
      skip();
      if (at_end() || peek() != '*') {
        // bare scalar: only "0" is meaningful as an operator
        if (!scalar.is_zero()) fail("a bare scalar must be followed by '*'");
        return;
      }
      ++pos_;
      skip();
    }
    std::vector<BasicDerivation> word;
    bool identity = false;
    while (true) {
      if (text_.substr(pos_, 2) == "id") {
        pos_ += 2;
        identity = true;
      } else if (!at_end() && peek() == 'd') {
        ++pos_;
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected variable index after 'd'");
        std::size_t index = std::stoul(std::string(text_.substr(start, pos_ - start)));
        if (index == 0 || index > arity_) fail("derivation index out of range");
        word.push_back(BasicDerivation::partial(arity_, index - 1));
      } else {
        fail("expected 'd<i>' or 'id'");
      }
      skip();
      if (!at_end() && peek() == '.') {
        ++pos_;
      } else if (text_.substr(pos_, 3) == "\xE2\x88\x98") {  // U+2218 ring operator
        pos_ += 3;
      } else {
        break;
      }
      skip();
    }
    if (identity && !word.empty()) {
      // id inside a word is neutral
    }
    op.add_term(sign * scalar, std::move(word));
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("operator syntax error at offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t arity_;
  std::size_t pos_ = 0;
};

}  // namespace

DiffOperator parse_operator(std::string_view text, std::size_t arity) {
  return OperatorParser(text, arity).parse();
}

}  // namespace feq
