#pragma once

#include "halo/rational.hpp"

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace halo {

/// Polynomial in the formal infinitesimal e with rational coefficients.
/// coefficient(k) multiplies e^k. The zero polynomial has no coefficients;
/// otherwise the highest stored coefficient is nonzero.
class EpsPolynomial {
 public:
  EpsPolynomial() = default;
  EpsPolynomial(std::initializer_list<Rational> coefficients);
  explicit EpsPolynomial(std::vector<Rational> coefficients);
  explicit EpsPolynomial(const Rational& constant);

  static EpsPolynomial monomial(const Rational& c, std::size_t power);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_constant() const noexcept { return coeffs_.size() <= 1; }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  /// Index of the lowest nonzero coefficient; -1 for the zero polynomial.
  long valuation() const noexcept;

  const Rational& coefficient(std::size_t k) const;
  std::span<const Rational> coefficients() const noexcept { return coeffs_; }
  const Rational& leading() const { return coeffs_.back(); }
  const Rational& lowest() const { return coeffs_[static_cast<std::size_t>(valuation())]; }

  Rational eval(const Rational& t) const;
  double eval(double t) const;

  EpsPolynomial operator-() const;
  EpsPolynomial& operator+=(const EpsPolynomial& rhs);
  EpsPolynomial& operator-=(const EpsPolynomial& rhs);
  EpsPolynomial& operator*=(const Rational& c);
  friend EpsPolynomial operator+(EpsPolynomial a, const EpsPolynomial& b) { return a += b; }
  friend EpsPolynomial operator-(EpsPolynomial a, const EpsPolynomial& b) { return a -= b; }
  friend EpsPolynomial operator*(const EpsPolynomial& a, const EpsPolynomial& b);
  friend EpsPolynomial operator*(EpsPolynomial a, const Rational& c) { return a *= c; }

  /// Euclidean division; divisor must be nonzero.
  static std::pair<EpsPolynomial, EpsPolynomial> divmod(const EpsPolynomial& a,
                                                        const EpsPolynomial& b);
  /// Monic greatest common divisor (zero when both inputs are zero).
  static EpsPolynomial gcd(EpsPolynomial a, EpsPolynomial b);

  /// Scales so the result is monic.
  EpsPolynomial monic() const;

  friend bool operator==(const EpsPolynomial&, const EpsPolynomial&) = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Real roots of p that are rational, ascending and without multiplicity.
/// `complete` is false when p may have further real roots that are irrational
/// (or when the coefficients are too large to enumerate candidates).
struct RationalRoots {
  std::vector<Rational> roots;
  bool complete = true;
};
RationalRoots rational_roots(const EpsPolynomial& p);

/// Every real root t of a nonzero p satisfies |t| < bound (Cauchy).
Rational cauchy_root_bound(const EpsPolynomial& p);

/// Text like "6-5e" or "-e^2+e^3"; "0" for the zero polynomial.
std::string to_string(const EpsPolynomial& p);

}  // namespace halo
