#pragma once

#include "halo/eps_rational.hpp"

#include <string>

namespace halo {

/// Element of Q(e) + i Q(e), the computable stand-in for the hypercomplex numbers.
class EpsComplex {
 public:
  EpsComplex() = default;
  EpsComplex(EpsRational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  EpsComplex(EpsRational re, EpsRational im) : re_(std::move(re)), im_(std::move(im)) {}
  EpsComplex(const Rational& re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  EpsComplex(long n) : re_(n) {}               // NOLINT(google-explicit-constructor)
  EpsComplex(int n) : re_(n) {}                // NOLINT(google-explicit-constructor)

  static EpsComplex i() { return {EpsRational(0), EpsRational(1)}; }

  const EpsRational& re() const noexcept { return re_; }
  const EpsRational& im() const noexcept { return im_; }

  bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const noexcept { return im_.is_zero(); }
  bool is_rational() const noexcept { return re_.is_rational() && im_.is_rational(); }

  EpsComplex conj() const { return {re_, -im_}; }
  /// |z|^2 = re^2 + im^2, an element of the ordered field.
  EpsRational norm2() const { return re_ * re_ + im_ * im_; }

  EpsComplex operator-() const { return {-re_, -im_}; }
  EpsComplex& operator+=(const EpsComplex& rhs);
  EpsComplex& operator-=(const EpsComplex& rhs);
  EpsComplex& operator*=(const EpsComplex& rhs);
  EpsComplex& operator/=(const EpsComplex& rhs);
  EpsComplex inverse() const;

  friend EpsComplex operator+(EpsComplex a, const EpsComplex& b) { return a += b; }
  friend EpsComplex operator-(EpsComplex a, const EpsComplex& b) { return a -= b; }
  friend EpsComplex operator*(EpsComplex a, const EpsComplex& b) { return a *= b; }
  friend EpsComplex operator/(EpsComplex a, const EpsComplex& b) { return a /= b; }
  friend bool operator==(const EpsComplex&, const EpsComplex&) = default;

 private:
  EpsRational re_;
  EpsRational im_;
};

inline EpsComplex conj(const EpsComplex& z) { return z.conj(); }
inline bool is_zero(const EpsComplex& z) { return z.is_zero(); }

/// Entrywise standard part; throws InfiniteElement.
struct RationalComplex {
  Rational re;
  Rational im;
};
RationalComplex shadow(const EpsComplex& z);
EpsComplex eval_at(const EpsComplex& z, const Rational& t);

std::string to_string(const EpsComplex& z);
inline std::ostream& operator<<(std::ostream& os, const EpsComplex& z) { return os << to_string(z); }

}  // namespace halo
