#pragma once

#include "halo/eps_polynomial.hpp"
#include "halo/rational.hpp"

#include <compare>
#include <ostream>
#include <string>

namespace halo {

/// Element of Q(e): a rational function in a formal positive infinitesimal e.
///
/// Canonical form: gcd(num, den) = 1, all coefficients are integers with joint
/// content 1, and the lowest-order nonzero coefficient of den is positive.
/// Under that normalization the sign of a value is the sign of the
/// lowest-order coefficient of its numerator.
class EpsRational {
 public:
  EpsRational() : num_(), den_(Rational(1)) {}
  EpsRational(const Rational& q);  // NOLINT(google-explicit-constructor)
  EpsRational(long n) : EpsRational(Rational(n)) {}  // NOLINT(google-explicit-constructor)
  EpsRational(int n) : EpsRational(Rational(n)) {}   // NOLINT(google-explicit-constructor)
  EpsRational(EpsPolynomial num, EpsPolynomial den);

  /// The infinitesimal e itself.
  static EpsRational eps();

  const EpsPolynomial& num() const noexcept { return num_; }
  const EpsPolynomial& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  /// True when the value lies in Q (no dependence on e).
  bool is_rational() const noexcept { return num_.is_constant() && den_.is_constant(); }
  /// Requires is_rational().
  Rational to_rational() const;

  /// Order of vanishing at e = 0; positive for infinitesimals, negative for infinite elements.
  long valuation() const;
  bool is_finite() const { return is_zero() || valuation() >= 0; }
  bool is_infinitesimal() const { return is_zero() || valuation() > 0; }

  Sign sign() const;
  Rational shadow() const;
  Rational eval_at(const Rational& t) const;
  double eval_at(double t) const;

  EpsRational operator-() const;
  EpsRational& operator+=(const EpsRational& rhs);
  EpsRational& operator-=(const EpsRational& rhs);
  EpsRational& operator*=(const EpsRational& rhs);
  EpsRational& operator/=(const EpsRational& rhs);
  EpsRational inverse() const;

  friend EpsRational operator+(EpsRational a, const EpsRational& b) { return a += b; }
  friend EpsRational operator-(EpsRational a, const EpsRational& b) { return a -= b; }
  friend EpsRational operator*(EpsRational a, const EpsRational& b) { return a *= b; }
  friend EpsRational operator/(EpsRational a, const EpsRational& b) { return a /= b; }

  friend bool operator==(const EpsRational& a, const EpsRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const EpsRational& a, const EpsRational& b);

 private:
  struct Canonical {};
  EpsRational(EpsPolynomial num, EpsPolynomial den, Canonical)
      : num_(std::move(num)), den_(std::move(den)) {}
  void canonicalize();
  void set_rational(const Rational& q);

  EpsPolynomial num_;
  EpsPolynomial den_;
};

enum class ArithOp { add, sub, mul, div };

EpsRational arith(const EpsRational& a, const EpsRational& b, ArithOp op);
inline Sign sign(const EpsRational& a) { return a.sign(); }
inline Rational shadow(const EpsRational& a) { return a.shadow(); }
inline Rational eval_at(const EpsRational& a, const Rational& t) { return a.eval_at(t); }
std::strong_ordering compare(const EpsRational& a, const EpsRational& b);

/// "p(e)/q(e)" text, e.g. "(6-5e)/(48-48e)"; plain "p(e)" when q = 1.
std::string to_string(const EpsRational& a);
inline std::ostream& operator<<(std::ostream& os, const EpsRational& a) { return os << to_string(a); }

/// Parses rational expressions in e: numbers, e, + - * / ^ and parentheses.
EpsRational parse_eps_rational(std::string_view text);

}  // namespace halo
