#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace halo {

/// Arbitrary-precision rational, always kept in lowest terms with positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

enum class Sign { negative = -1, zero = 0, positive = 1 };

inline Sign sign_of(const Rational& q) {
  const int s = sgn(q);
  return s < 0 ? Sign::negative : (s > 0 ? Sign::positive : Sign::zero);
}

inline int to_int(Sign s) { return static_cast<int>(s); }

/// Parses "p" or "p/q" (optional leading sign). Throws ParseError.
Rational parse_rational(std::string_view text);

/// "p" when the denominator is one, else "p/q".
std::string to_string(const Rational& q);

/// Exact value of a finite double.
Rational rational_from_double(double x);

}  // namespace halo
