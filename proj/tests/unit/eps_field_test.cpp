#include "halo/eps_complex.hpp"
#include "halo/errors.hpp"
#include "halo/positivity.hpp"

#include "verify/oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace halo;

namespace {

const EpsRational e = EpsRational::eps();

EpsRational q(long p, long d = 1) { return EpsRational(Rational(p, d)); }

}  // namespace

TEST(EpsRational, AlphaCanonicalForm) {
  const EpsRational alpha = Rational(1, 8) * (1 + e / (6 * (1 - e)));
  EXPECT_EQ(to_string(alpha), "(6-5e)/(48-48e)");
  EXPECT_EQ(alpha, parse_eps_rational("(6-5e)/(48-48e)"));

  // hand expansion at e = 1/10: (1/8)(1 + (1/10)/(6*9/10)) = (1/8)(55/54)
  EXPECT_EQ(alpha.eval_at(Rational(1, 10)), Rational(55, 432));
  EXPECT_EQ(alpha.shadow(), Rational(1, 8));
}

TEST(EpsRational, CanonicalFormIsUnique) {
  const EpsRational a(EpsPolynomial{2, 4}, EpsPolynomial{6, 0, 2});
  const EpsRational b(EpsPolynomial{-1, -2}, EpsPolynomial{-3, 0, -1});
  EXPECT_EQ(a, b);
  EXPECT_EQ(to_string(a), "(1+2e)/(3+e^2)");
  // lowest denominator coefficient is positive
  const EpsRational c(EpsPolynomial{1}, EpsPolynomial{0, -1});
  EXPECT_EQ(c.den().lowest(), 1);
  EXPECT_EQ(c.sign(), Sign::negative);
}

TEST(EpsRational, NonCanonicalRationalInputsAreNormalized) {
  mpq_class raw(-6, 4);  // mpq_class(p, q) keeps -6/4
  const EpsRational a(EpsPolynomial{raw, Rational(2)}, EpsPolynomial{Rational(1)});
  const EpsRational b(EpsPolynomial{Rational(-3, 2), Rational(2)}, EpsPolynomial{Rational(1)});
  EXPECT_EQ(a, b);
  EXPECT_EQ(EpsRational(raw), q(-3, 2));
}

TEST(EpsRational, Signs) {
  EXPECT_EQ(sign(q(3, 2) - e), Sign::positive);
  EXPECT_EQ((q(3, 2) - e).eval_at(Rational(1, 1000000)) > 0, true);
  EXPECT_EQ(sign(-e), Sign::negative);
  EXPECT_EQ(sign(e * e - e), Sign::negative);
  EXPECT_EQ(sign(EpsRational()), Sign::zero);
  EXPECT_EQ(sign(1 / e - 1000000000), Sign::positive);
}

TEST(EpsRational, Compare) {
  EXPECT_LT(e, q(1, 1000000000));
  EXPECT_GT(1 / e, q(1000000000));
  EXPECT_LT(e * e, e);
  EXPECT_EQ(compare(e, e), std::strong_ordering::equal);
  EXPECT_GT(q(0), -e);
}

TEST(EpsRational, Shadow) {
  EXPECT_EQ(shadow((2 + e) / (3 - e)), Rational(2, 3));
  EXPECT_EQ(shadow(e / (e + e * e)), Rational(1));
  EXPECT_EQ(shadow(e), Rational(0));
  EXPECT_THROW(shadow(1 / e), InfiniteElement);
}

TEST(EpsRational, Errors) {
  EXPECT_THROW(e / EpsRational(), DivisionByZero);
  EXPECT_THROW(EpsRational().inverse(), DivisionByZero);
  EXPECT_THROW((1 / (1 - e)).eval_at(Rational(1)), PoleAtPoint);
}

TEST(EpsRational, Valuation) {
  EXPECT_EQ(e.valuation(), 1);
  EXPECT_EQ((1 / (e * e)).valuation(), -2);
  EXPECT_TRUE(e.is_infinitesimal());
  EXPECT_FALSE((1 + e).is_infinitesimal());
  EXPECT_TRUE((1 + e).is_finite());
  EXPECT_FALSE((1 / e).is_finite());
}

TEST(Parser, Expressions) {
  EXPECT_EQ(parse_eps_rational("5e"), 5 * e);
  EXPECT_EQ(parse_eps_rational("2(1-e)"), 2 - 2 * e);
  EXPECT_EQ(parse_eps_rational("e^3"), e * e * e);
  EXPECT_EQ(parse_eps_rational("-1/2 + 0.25"), q(-1, 4));
  EXPECT_EQ(parse_eps_rational("0.075"), q(3, 40));
  EXPECT_EQ(parse_rational("010"), Rational(10));
  EXPECT_EQ(parse_eps_rational("1/(2e)"), 1 / (2 * e));
  EXPECT_EQ(parse_eps_rational("(1/8)*(1/3 + e/(2*(1-e)))"), (2 + e) / (48 - 48 * e));
}

TEST(Parser, ErrorsCarryColumn) {
  try {
    parse_eps_rational("1 + * e");
    FAIL();
  } catch (const ParseError& err) {
    EXPECT_EQ(err.line(), 1u);
    EXPECT_EQ(err.column(), 5u);
  }
  EXPECT_THROW(parse_eps_rational("(1+e"), ParseError);
  EXPECT_THROW(parse_eps_rational("1/(e-e)"), ParseError);
  EXPECT_THROW(parse_rational("3/0"), ParseError);
}

TEST(Parser, RoundTripsRandomElements) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const EpsRational a = verify::random_eps_rational(s);
    EXPECT_EQ(parse_eps_rational(to_string(a)), a) << to_string(a);
  }
}

// Evaluation at a rational point is a ring homomorphism wherever it is defined,
// so the field operations can be checked against plain Rational arithmetic.
TEST(EpsRational, EvaluationHomomorphism) {
  const Rational t(1, 10);
  for (std::uint64_t s = 0; s < 300; ++s) {
    const EpsRational a = verify::random_eps_rational(2 * s);
    const EpsRational b = verify::random_eps_rational(2 * s + 1);
    Rational at, bt;
    try {
      at = a.eval_at(t);
      bt = b.eval_at(t);
    } catch (const PoleAtPoint&) {
      continue;
    }
    EXPECT_EQ((a + b).eval_at(t), at + bt);
    EXPECT_EQ((a - b).eval_at(t), at - bt);
    EXPECT_EQ((a * b).eval_at(t), at * bt);
    if (bt != 0 && !b.is_zero()) EXPECT_EQ((a / b).eval_at(t), at / bt);
  }
}

TEST(EpsRational, SignMatchesSmallEvaluation) {
  for (std::uint64_t s = 0; s < 300; ++s) {
    const EpsRational a = verify::random_eps_rational(s + 1000);
    EXPECT_EQ(sign_of(a.eval_at(Rational(1, 100000000))), a.sign()) << to_string(a);
  }
}

TEST(EpsRational, OrderIsTotalAndCompatible) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const EpsRational a = verify::random_eps_rational(3 * s);
    const EpsRational b = verify::random_eps_rational(3 * s + 1);
    const EpsRational c = verify::random_eps_rational(3 * s + 2);
    EXPECT_EQ((a < b) + (a == b) + (b < a), 1);
    if (a < b && b < c) EXPECT_LT(a, c);
    if (a < b) EXPECT_LT(a + c, b + c);
    if (a > 0 && b > 0) EXPECT_GT(a * b, 0);
  }
}

TEST(EpsComplex, Arithmetic) {
  const EpsComplex i = EpsComplex::i();
  EXPECT_EQ(i * i, EpsComplex(-1));
  const EpsComplex z(1 + e, 2 * e);
  EXPECT_EQ(z * z.conj(), EpsComplex(z.norm2()));
  EXPECT_EQ(z / z, EpsComplex(1));
  EXPECT_EQ(conj(conj(z)), z);
  const RationalComplex s = shadow(z);
  EXPECT_EQ(s.re, 1);
  EXPECT_EQ(s.im, 0);
}
