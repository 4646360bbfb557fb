#include "feq/eqdsl.hpp"

#include <cctype>
#include <sstream>

namespace feq {

ParseError::ParseError(SourceSpan span, std::string message, std::set<std::string> expected)
    : std::runtime_error(message), span_(span), message_(std::move(message)), expected_(std::move(expected)) {}

std::string ParseError::annotate(std::string_view input) const {
  std::ostringstream os;
  os << "parse error at offset " << span_.start << ": " << message_ << "\n  " << input << "\n  "
     << std::string(span_.start, ' ') << std::string(std::max<std::size_t>(1, span_.end - span_.start), '^');
  return os.str();
}

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, equals, end, invalid };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (true) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) {
      out.push_back(Token{Tok::end, "", {s.size(), s.size()}});
      return out;
    }
    const std::size_t start = i;
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back(Token{Tok::number, std::string(s.substr(start, i - start)), {start, i}});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back(Token{Tok::ident, std::string(s.substr(start, i - start)), {start, i}});
      continue;
    }
    Tok kind = Tok::invalid;
    switch (c) {
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '*': kind = Tok::star; break;
      case '/': kind = Tok::slash; break;
      case '^': kind = Tok::caret; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case '=': kind = Tok::equals; break;
      default: break;
    }
    ++i;
    // keep a multi-byte character together in the error span
    while (kind == Tok::invalid && i < s.size() && (static_cast<unsigned char>(s[i]) & 0xC0) == 0x80) ++i;
    out.push_back(Token{kind, std::string(s.substr(start, i - start)), {start, i}});
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  EquationSpec equation() {
    if (peek().kind == Tok::number && peek().text == "0" && peek(1).kind == Tok::equals) {
      advance();
      advance();
      expect_zero();
      expect(Tok::end, "end of input");
      return EquationSpec{};
    }
    std::vector<EquationTerm> terms;
    Rational sign = 1;
    if (peek().kind == Tok::plus || peek().kind == Tok::minus) sign = advance().kind == Tok::minus ? -1 : 1;
    terms.push_back(term(sign));
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      sign = advance().kind == Tok::minus ? -1 : 1;
      terms.push_back(term(sign));
    }
    expect(Tok::equals, "'='", {"'+'", "'-'"});
    expect_zero();
    expect(Tok::end, "end of input");
    return EquationSpec(std::move(terms));
  }

 private:
  EquationTerm term(const Rational& sign) {
    EquationTerm t{sign, 0, 1, {}};
    if (peek().kind == Tok::number) {
      t.coeff *= rational();
      expect(Tok::star, "'*'", {"'/'"});
    }
    if (peek().kind == Tok::ident && peek().text == "x") {
      advance();
      t.p = 1;
      if (peek().kind == Tok::caret) {
        advance();
        t.p = exponent();
      }
      expect(Tok::star, "'*'", {"'^'"});
    }
    if (peek().kind != Tok::ident || peek().text == "x")
      fail(peek(), {"function name"});
    t.fn = advance().text;
    expect(Tok::lparen, "'('");
    if (peek().kind == Tok::ident && peek().text == "x") {
      advance();
      if (peek().kind == Tok::caret) {
        advance();
        t.q = exponent();
      }
    } else if (peek().kind == Tok::number && peek().text == "1") {
      advance();
      t.q = 0;
    } else {
      fail(peek(), {"'x'", "'1'"});
    }
    expect(Tok::rparen, "')'", t.q == 0 ? std::set<std::string>{} : std::set<std::string>{"'^'"});
    return t;
  }

  Rational rational() {
    const Token num = advance();
    Rational value = Rational::parse(num.text);
    if (peek().kind == Tok::slash) {
      advance();
      const Token& den = peek();
      if (den.kind != Tok::number) fail(den, {"integer"});
      if (Rational::parse(den.text).is_zero()) throw ParseError(den.span, "zero denominator", {"positive integer"});
      value /= Rational::parse(advance().text);
    }
    return value;
  }

  unsigned exponent() {
    const Token& tok = peek();
    if (tok.kind != Tok::number) fail(tok, {"integer"});
    if (tok.text.size() > 6) throw ParseError(tok.span, "exponent '" + tok.text + "' is too large", {"integer"});
    return static_cast<unsigned>(std::stoul(advance().text));
  }

  void expect_zero() {
    const Token& tok = peek();
    if (tok.kind != Tok::number || tok.text != "0") fail(tok, {"'0'"});
    advance();
  }

  void expect(Tok kind, const std::string& what, std::set<std::string> also = {}) {
    if (peek().kind == kind) {
      advance();
      return;
    }
    also.insert(what);
    fail(peek(), std::move(also));
  }

  [[noreturn]] void fail(const Token& tok, std::set<std::string> expected) {
    expected.erase("");
    std::string msg = tok.kind == Tok::end ? "unexpected end of input" : "unexpected '" + tok.text + "'";
    msg += "; expected ";
    bool first = true;
    for (const auto& e : expected) {
      msg += (first ? "" : " or ") + e;
      first = false;
    }
    throw ParseError(tok.span, msg, std::move(expected));
  }

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& advance() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string power(const char* var, unsigned e) {
  return e == 1 ? std::string(var) : std::string(var) + "^" + std::to_string(e);
}

Rational lcm_of_denominators(const std::vector<std::pair<std::string, Rational>>& items) {
  mpz_class l = 1;
  for (const auto& [name, c] : items) l = lcm(l, c.denominator());
  return Rational(l);
}

}  // namespace

EquationSpec parse(std::string_view text) { return Parser(text).equation(); }

std::string render_spec(const EquationSpec& spec) {
  if (spec.empty()) return "0 = 0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : spec.terms()) {
    if (first) {
      if (t.coeff.sign() < 0) os << "- ";
    } else {
      os << (t.coeff.sign() < 0 ? " - " : " + ");
    }
    first = false;
    const Rational mag = t.coeff.abs();
    if (!mag.is_one()) os << mag.str() << "*";
    if (t.p > 0) os << power("x", t.p) << "*";
    os << t.fn << "(" << (t.q == 0 ? std::string("1") : power("x", t.q)) << ")";
  }
  os << " = 0";
  return os.str();
}

std::vector<Rational> parse_coefficients(std::string_view text) {
  std::string cleaned;
  for (char c : text) cleaned += (c == '(' || c == ')' || c == '[' || c == ']' || c == ',') ? ' ' : c;
  std::istringstream is(cleaned);
  std::vector<Rational> out;
  std::string item;
  while (is >> item) out.push_back(Rational::parse(item));
  if (out.empty()) throw std::invalid_argument("empty coefficient list");
  return out;
}

std::string render_linear(const std::vector<std::pair<std::string, Rational>>& terms) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, c] : terms) {
    if (c.is_zero()) continue;
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (!c.abs().is_one()) os << c.abs().str() << "*";
    os << name;
  }
  return first ? "0" : os.str();
}

std::vector<std::string> render_functions(const SolutionStructure& s) {
  std::vector<std::string> lines;
  for (const auto& f : s.functions) {
    std::vector<std::pair<std::string, Rational>> items;
    for (std::size_t i = 0; i < s.parameters.size(); ++i)
      if (!f.coeffs[i].is_zero()) items.emplace_back(s.parameters[i].name, f.coeffs[i]);
    if (!f.x_coeff.is_zero()) items.emplace_back(f.name + "(1)*x", f.x_coeff);
    const Rational scale = lcm_of_denominators(items);
    for (auto& item : items) item.second *= scale;
    lines.push_back((scale.is_one() ? "" : scale.str() + "*") + f.name + " = " + render_linear(items));
  }
  return lines;
}

std::vector<std::string> render_constraints(const SolutionStructure& s) {
  std::vector<std::string> lines;
  for (const auto& row : s.relations) {
    std::vector<std::pair<std::string, Rational>> items;
    for (std::size_t i = 0; i < row.size(); ++i)
      if (!row[i].is_zero()) items.emplace_back(s.functions[i].name + "(1)", row[i]);
    if (items.size() < 2) continue;
    const Rational scale = lcm_of_denominators(items);
    for (auto& item : items) item.second *= scale;
    lines.push_back(render_linear(items) + " = 0");
  }
  return lines;
}

std::string render_solution(const SolutionStructure& s) {
  std::string out;
  for (const auto& line : render_functions(s)) out += line + "\n";
  for (const auto& line : render_constraints(s)) out += line + "\n";
  return out;
}

std::vector<std::string> render_basis(unsigned n) {
  const QMatrix basis = closed_form_basis(n);
  std::vector<std::string> lines;
  for (unsigned i = 0; i <= n; ++i) {
    std::vector<std::pair<std::string, Rational>> items;
    for (unsigned j = n + 1; j-- > 0;) items.emplace_back("D" + std::to_string(j), basis.at(i, j));
    lines.push_back("f" + std::to_string(n + 1 - i) + " = " + render_linear(items));
  }
  return lines;
}

}  // namespace feq
