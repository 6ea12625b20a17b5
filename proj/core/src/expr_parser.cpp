// Recursive-descent parser for rational expressions in e.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary | factor)*      juxtaposition multiplies: "5e", "2(1-e)"
//   unary   := ('+' | '-') unary | power
//   power   := factor ('^' digits)?
//   factor  := digits ('.' digits)? | 'e' | '(' expr ')'

#include "halo/eps_rational.hpp"
#include "halo/errors.hpp"

#include <cctype>
#include <string>

namespace halo {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  EpsRational parse() {
    EpsRational v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " in '" + std::string(text_) + "'", 1, pos_ + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool starts_factor(char c) const {
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'e' || c == '(';
  }

  EpsRational expr() {
    EpsRational acc = term();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      if (c == '+') acc += term();
      else acc -= term();
    }
    return acc;
  }

  EpsRational term() {
    EpsRational acc = unary();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc *= unary();
      } else if (c == '/') {
        ++pos_;
        const EpsRational d = unary();
        if (d.is_zero()) fail("division by zero");
        acc /= d;
      } else if (starts_factor(c)) {
        acc *= power();
      } else {
        return acc;
      }
    }
  }

  EpsRational unary() {
    const char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  EpsRational power() {
    EpsRational base = factor();
    if (peek() != '^') return base;
    ++pos_;
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected exponent");
    if (pos_ - start > 4) fail("exponent too large");
    const int k = std::stoi(std::string(text_.substr(start, pos_ - start)));
    EpsRational out(1);
    for (int i = 0; i < k; ++i) out *= base;
    return out;
  }

  EpsRational factor() {
    const char c = peek();
    if (c == 'e') {
      ++pos_;
      return EpsRational::eps();
    }
    if (c == '(') {
      ++pos_;
      EpsRational v = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  EpsRational number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string digits(text_.substr(start, pos_ - start));
    Integer den(1);
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      const std::size_t frac = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      digits += std::string(text_.substr(frac, pos_ - frac));
      mpz_ui_pow_ui(den.get_mpz_t(), 10, pos_ - frac);
    }
    Rational q{Integer(digits, 10), den};
    q.canonicalize();
    return EpsRational(q);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

EpsRational parse_eps_rational(std::string_view text) { return Parser(text).parse(); }

}  // namespace halo
