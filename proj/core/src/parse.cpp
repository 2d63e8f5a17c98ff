#include "merocurve/parse.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "merocurve/errors.hpp"

namespace merocurve {

namespace {

// Recursive-descent parser; pos_ always points at the next unread byte.
class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  MPoly run() {
    MPoly p = expr();
    skip_ws();
    if (pos_ < s_.size()) fail("unexpected character");
    return p;
  }

 private:
  // A base remembers whether it was the bare variable X or Y: only those
  // two interact specially with negative exponents.
  enum class Kind { kX, kY, kOther };
  struct Base {
    Kind kind;
    MPoly poly;
  };

  void skip_ws() {
    while (pos_ < s_.size() &&
           std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  // Next significant character, '\0' at end of input.
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  [[noreturn]] void fail(const std::string& msg) {
    const std::string where =
        pos_ >= s_.size() ? "end of input" : "position " + std::to_string(pos_);
    throw SyntaxError(msg + " at " + where, pos_);
  }

  static bool starts_factor(char c) {
    return c == 'X' || c == 'Y' || c == '(' ||
           std::isdigit(static_cast<unsigned char>(c));
  }

  MPoly expr() {
    bool neg = false;
    if (peek() == '-') {  // leading unary minus
      ++pos_;
      neg = true;
    }
    MPoly acc = term();
    if (neg) acc = -acc;
    for (;;) {
      const char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      const MPoly t = term();
      acc = c == '+' ? acc + t : acc - t;
    }
    return acc;
  }

  MPoly term() {
    MPoly acc = factor();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * factor();
      } else if (starts_factor(c)) {  // juxtaposition
        acc = acc * factor();
      } else {
        break;
      }
    }
    return acc;
  }

  MPoly factor() {
    const Base b = base();
    if (peek() != '^') return b.poly;
    ++pos_;
    skip_ws();
    const std::size_t at = pos_;
    const long e = exponent();
    if (e >= 0) return pow(b.poly, e);
    if (b.kind == Kind::kX)
      return MPoly::constant(Series::monomial(Num(1), Rat(e)));
    if (b.kind == Kind::kY)
      throw NegativeYExponent("negative exponent on Y at position " +
                              std::to_string(at));
    pos_ = at;
    fail("negative exponent allowed only on X");
  }

  Base base() {
    const char c = peek();
    if (c == 'X') {
      ++pos_;
      return {Kind::kX, MPoly::constant(Series::monomial(Num(1), Rat(1)))};
    }
    if (c == 'Y') {
      ++pos_;
      return {Kind::kY, MPoly::y()};
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      return {Kind::kOther, MPoly::constant(Series::constant(Num(rational())))};
    if (c == '(') {
      ++pos_;
      MPoly inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return {Kind::kOther, std::move(inner)};
    }
    fail("expected 'X', 'Y', a number, or '('");
  }

  // Optionally parenthesized, optionally signed integer after '^'.
  long exponent() {
    bool paren = false;
    if (peek() == '(') {
      paren = true;
      ++pos_;
    }
    bool neg = false;
    if (peek() == '-') {
      ++pos_;
      neg = true;
    }
    const long v = integer("expected integer exponent");
    if (paren) {
      if (peek() != ')') fail("expected ')'");
      ++pos_;
    }
    return neg ? -v : v;
  }

  Rat rational() {
    const mpz_class num = digits("expected integer");
    if (peek() != '/') return Rat(num);
    ++pos_;
    skip_ws();
    const std::size_t at = pos_;
    const mpz_class den = digits("expected integer after '/'");
    if (den == 0) {
      pos_ = at;
      fail("zero denominator");
    }
    Rat q(num, den);
    q.canonicalize();
    return q;
  }

  mpz_class digits(const std::string& what) {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (pos_ == start) fail(what);
    return mpz_class(s_.substr(start, pos_ - start));
  }

  long integer(const std::string& what) {
    const std::size_t at = pos_;
    const mpz_class v = digits(what);
    if (!v.fits_slong_p()) {
      pos_ = at;
      fail("exponent too large");
    }
    return v.get_si();
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

// One product atom c * X^e * Y^j, rendered without its sign.
std::string atom(const Rat& mag, const Rat& e, long j) {
  std::vector<std::string> pieces;
  if (mag != 1 || (e == 0 && j == 0)) pieces.push_back(rat_str(mag));
  if (e != 0) {
    if (e == 1)
      pieces.push_back("X");
    else if (e > 0)
      pieces.push_back("X^" + rat_str(e));
    else
      pieces.push_back("X^(" + rat_str(e) + ")");
  }
  if (j != 0)
    pieces.push_back(j == 1 ? std::string("Y") : "Y^" + std::to_string(j));
  std::string out = pieces.front();
  for (std::size_t i = 1; i < pieces.size(); ++i) out += "*" + pieces[i];
  return out;
}

}  // namespace

MPoly parse_poly(const std::string& input) { return Parser(input).run(); }

std::string print_poly(const MPoly& p) {
  if (p.is_exact_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
    const long j = it->first;
    for (const auto& [e, c] : it->second.terms()) {
      if (!c.is_rat()) throw Error("print_poly: non-rational coefficient");
      if (!rat_is_int(e)) throw Error("print_poly: non-integer X-exponent");
      const Rat q = c.rat();
      const bool neg = sgn(q) < 0;
      const std::string t = atom(abs(q), e, j);
      if (first) {
        out += neg ? "-" + t : t;
        first = false;
      } else {
        out += (neg ? " - " : " + ") + t;
      }
    }
  }
  return out;
}

}  // namespace merocurve
