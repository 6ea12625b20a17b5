#include "halo/constructions.hpp"
#include "halo/errors.hpp"
#include "halo/layers.hpp"

#include <gtest/gtest.h>

using namespace halo;

namespace {

const EpsRational e = EpsRational::eps();

Rational r(long p, long q = 1) {
  Rational x(p, q);
  x.canonicalize();
  return x;
}

bool relation_at(const Rational& v, Relation rel) {
  switch (rel) {
    case Relation::GreaterEqual: return v >= 0;
    case Relation::Greater: return v > 0;
    case Relation::LessEqual: return v <= 0;
    case Relation::Less: return v < 0;
    case Relation::Equal: return v == 0;
  }
  return false;
}

LayeredMap constant_map(const MapDecomposition& p) {
  LayeredMap m;
  m.tail = p;
  m.window = {1, 4};
  return m;
}

}  // namespace

TEST(LayeredScalar, Values) {
  EXPECT_EQ(LayeredScalar::reciprocal(r(3), 2).value(2), r(3, 4));
  EXPECT_EQ(LayeredScalar::linear(r(2), r(-1)).value(5), r(9));
  EXPECT_EQ(LayeredScalar::polynomial({r(1), r(0), r(1)}).value(3), r(10));
  EXPECT_EQ(LayeredScalar::rational(e / (1 - e)).value(4), r(1, 3));
  EXPECT_EQ(LayeredScalar::periodic({r(1), r(0)}).value(5), r(1));
  const LayeredScalar p = LayeredScalar::constant(r(2)).with_prefix({r(-7), r(5)});
  EXPECT_EQ(p.value(1), r(-7));
  EXPECT_EQ(p.value(2), r(5));
  EXPECT_EQ(p.value(3), r(2));
}

TEST(LayeredScalar, ArithmeticIsPointwise) {
  const LayeredScalar a = LayeredScalar::reciprocal(r(1)).with_prefix({r(4)});
  const LayeredScalar b = LayeredScalar::linear(r(1), r(-3));
  const LayeredScalar c = LayeredScalar::periodic({r(1), r(-1)});
  for (std::size_t n = 1; n <= 12; ++n) {
    EXPECT_EQ((a + b).value(n), a.value(n) + b.value(n));
    EXPECT_EQ((a * b).value(n), a.value(n) * b.value(n));
    EXPECT_EQ((a - c).value(n), a.value(n) - c.value(n));
    EXPECT_EQ((-b).value(n), -b.value(n));
  }
  EXPECT_TRUE((a * b).tail());
  EXPECT_FALSE((a * c).tail());
}

TEST(SeqSign, Infinitesimal) {
  const LayeredScalar inv = LayeredScalar::reciprocal(r(1));
  EXPECT_EQ(seq_sign(inv).status, FilterStatus::HoldsOnCofinite);
  EXPECT_EQ(seq_relation(inv, Relation::Greater).status, FilterStatus::HoldsOnCofinite);
  for (const Rational& q : {r(1), r(1, 1000), r(1, 1000000)})
    EXPECT_EQ(seq_less(inv, LayeredScalar::constant(q)).status, FilterStatus::HoldsOnCofinite);
  const ScalarClass k = classify(inv);
  EXPECT_EQ(k.sign, Sign::positive);
  EXPECT_EQ(k.magnitude, Magnitude::Infinitesimal);
}

TEST(SeqSign, Infinite) {
  const LayeredScalar n = LayeredScalar::linear(r(1), r(0));
  EXPECT_EQ(seq_less(LayeredScalar::constant(r(1000000)), n).status, FilterStatus::HoldsOnCofinite);
  EXPECT_EQ(classify(n).magnitude, Magnitude::Infinite);
  EXPECT_EQ(classify(LayeredScalar::constant(r(-3))).magnitude, Magnitude::Finite);
}

TEST(SeqSign, PeriodicIsUndetermined) {
  const LayeredScalar z = LayeredScalar::periodic({r(1), r(0)});
  // no certificate, so even >= 0 is left open
  EXPECT_EQ(seq_sign(z).status, FilterStatus::Undetermined);
  EXPECT_EQ(seq_sign(LayeredScalar::periodic({r(1), r(0)}, SignCertificate{Sign::positive, 1})).status,
            FilterStatus::HoldsOnCofinite);
  EXPECT_EQ(seq_relation(z, Relation::Greater).status, FilterStatus::Undetermined);
  EXPECT_EQ(seq_relation(z, Relation::Equal).status, FilterStatus::Undetermined);
  EXPECT_EQ(classify(z).magnitude, Magnitude::Undetermined);
}

TEST(SeqSign, CertificateDecidesCustomTail) {
  const auto f = [](std::size_t n) { return r(static_cast<long>(n) - 5); };
  EXPECT_EQ(seq_relation(LayeredScalar::custom(f), Relation::Greater).status, FilterStatus::Undetermined);
  const LayeredScalar cert = LayeredScalar::custom(f, SignCertificate{Sign::positive, 6});
  const FilterVerdict v = seq_relation(cert, Relation::Greater);
  EXPECT_EQ(v.status, FilterStatus::HoldsOnCofinite);
  EXPECT_EQ(v.n0, 6u);
}

TEST(SeqSign, WindowShowsEarlyFailures) {
  // 1 - 3/n: negative up to n = 2, zero at 3, positive from 4
  const LayeredScalar x = LayeredScalar::constant(r(1)) - LayeredScalar::reciprocal(r(3));
  const FilterVerdict v = seq_relation(x, Relation::Greater, {1, 6});
  EXPECT_EQ(v.status, FilterStatus::HoldsOnCofinite);
  ASSERT_EQ(v.window.size(), 6u);
  EXPECT_FALSE(v.window[0].second);
  EXPECT_FALSE(v.window[2].second);
  EXPECT_TRUE(v.window[3].second);
  // n0 is a sufficient index from a root bound, not the smallest one
  ASSERT_TRUE(v.n0);
  EXPECT_GE(*v.n0, 4u);
  for (const auto& [n, ok] : v.window)
    if (n >= *v.n0) EXPECT_TRUE(ok);
}

// Decided verdicts must match the actual values at every n past n0.
TEST(SeqSign, VerdictMatchesValuesBeyondThreshold) {
  const Relation rels[] = {Relation::GreaterEqual, Relation::Greater, Relation::Less, Relation::Equal};
  std::size_t decided = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const LayeredScalar x = random_layered_scalar(s);
    for (Relation rel : rels) {
      const FilterVerdict v = seq_relation(x, rel);
      if (v.status == FilterStatus::Undetermined) continue;
      ASSERT_TRUE(v.n0);
      ++decided;
      const bool expected = v.status == FilterStatus::HoldsOnCofinite;
      for (std::size_t n : {*v.n0, *v.n0 + 1, *v.n0 + 13, *v.n0 + 1000})
        EXPECT_EQ(relation_at(x.value(n), rel), expected) << "seed " << s << " n " << n;
    }
  }
  EXPECT_GT(decided, 600u);
}

TEST(EventualIndex, RootsBelowThreshold) {
  // roots of (1 - 10e)(1 - 3e) at e = 1/10 and 1/3
  EXPECT_GT(eventual_index((1 - 10 * e) * (1 - 3 * e)), 10u);
  EXPECT_EQ(eventual_index(EpsRational(r(5))), 1u);
}

TEST(QuasiInner, Examples) {
  const LayeredVector e1 = {LayeredScalar::constant(r(1)), LayeredScalar::constant(r(0))};
  EXPECT_EQ(quasi_inner(e1, e1).value(7), r(1));
  const LayeredVector a = {LayeredScalar::reciprocal(r(1)), LayeredScalar::periodic({r(2), r(-1)})};
  const LayeredScalar aa = quasi_inner(a, a);
  for (std::size_t n = 1; n <= 8; ++n)
    EXPECT_EQ(aa.value(n), a[0].value(n) * a[0].value(n) + a[1].value(n) * a[1].value(n));
}

TEST(InnerProduct, Counterexample) {
  const InnerProductReport small = inner_product_counterexample(r(1, 10), 10000);
  EXPECT_GT(small.standard_value, r(98, 100));
  EXPECT_LT(small.standard_value, 1);
  EXPECT_EQ(small.seq.status, FilterStatus::FailsOnCofinite);
  EXPECT_TRUE(small.disagreement);

  const InnerProductReport zero = inner_product_counterexample(r(0), 100);
  EXPECT_EQ(zero.standard_value, 1);
  EXPECT_EQ(zero.seq.status, FilterStatus::HoldsOnCofinite);
  EXPECT_FALSE(zero.disagreement);

  const InnerProductReport big = inner_product_counterexample(r(2), 100);
  EXPECT_LT(big.standard_value, 0);
  EXPECT_FALSE(big.disagreement);
}

TEST(InnerProduct, StandardValueMatchesPartialSum) {
  Rational sum(0);
  for (long k = 1; k <= 50; ++k) sum += r(1, k * k);
  EXPECT_EQ(inner_product_counterexample(r(1, 3), 50).standard_value, 1 - r(1, 9) * sum);
}

TEST(RingAxioms, Hold) {
  const RingAxiomsReport rep = ring_order_axioms(150, 3);
  EXPECT_TRUE(rep.passed()) << (rep.failures.empty() ? "" : rep.failures.front());
  EXPECT_GT(rep.checks, 150u);

  const LayeredScalar inv = LayeredScalar::reciprocal(r(1));
  EXPECT_EQ(seq_sign(inv + LayeredScalar::reciprocal(r(1), 2)).status, FilterStatus::HoldsOnCofinite);
  const LayeredScalar mixed = inv * (LayeredScalar::constant(r(-1)) + inv);
  EXPECT_EQ(seq_relation(mixed, Relation::Less).status, FilterStatus::HoldsOnCofinite);
}

TEST(LayeredPsd, Examples) {
  LayeredMatrix one;
  one.tail = EpsMatrix::identity(2);
  EXPECT_EQ(layered_psd(one).status, FilterStatus::HoldsOnCofinite);

  LayeredMatrix neg;
  neg.tail = EpsMatrix::diagonal({EpsComplex(1), EpsComplex(-e)});
  const FilterVerdict nv = layered_psd(neg);
  EXPECT_EQ(nv.status, FilterStatus::FailsOnCofinite);
  for (const auto& [n, ok] : nv.window) EXPECT_FALSE(ok) << n;

  LayeredMatrix late;
  late.tail = EpsMatrix::diagonal({EpsComplex(1), EpsComplex(1 - 2 * e)});
  late.window = {1, 6};
  const FilterVerdict lv = layered_psd(late);
  EXPECT_EQ(lv.status, FilterStatus::HoldsOnCofinite);
  EXPECT_FALSE(lv.window[0].second);
  EXPECT_TRUE(lv.window[1].second);
  EXPECT_EQ(late.layer(4), EpsMatrix::diagonal({EpsComplex(1), EpsComplex(r(1, 2))}));

  LayeredMatrix custom;
  custom.custom = [](std::size_t) { return EpsMatrix::identity(2); };
  EXPECT_EQ(layered_psd(custom).status, FilterStatus::Undetermined);
}

TEST(LayeredMaps, CpAndCocp) {
  EXPECT_EQ(layered_cp(constant_map(depolarizing_map(2))).status, FilterStatus::HoldsOnCofinite);
  EXPECT_EQ(layered_cp(constant_map(gamma_map(2))).status, FilterStatus::FailsOnCofinite);
  EXPECT_EQ(layered_cocp(constant_map(transposition_map(2))).status, FilterStatus::HoldsOnCofinite);
  EXPECT_EQ(layered_cp(constant_map(transposition_map(2))).status, FilterStatus::FailsOnCofinite);
}

TEST(LayeredMaps, Positivity) {
  SearchBudget b;
  b.restarts = 30;
  EXPECT_EQ(layered_map_positive(constant_map(transposition_map(2)), b).status, FilterStatus::HoldsOnCofinite);
  EXPECT_EQ(layered_map_positive(constant_map(counterexample_map(2)), b).status, FilterStatus::FailsOnCofinite);
}

TEST(LayeredMaps, NormBound) {
  EXPECT_NEAR(map_norm(identity_map(3)), 1.0, 1e-9);
  EXPECT_NEAR(map_norm(depolarizing_map(3)), 3.0, 1e-9);
  LayeredMap m = constant_map(depolarizing_map(3));
  m.norm_bound = 2.0;
  EXPECT_THROW(layered_cp(m), UnboundedWindow);
}

TEST(L2Witness, SmallWindow) {
  SearchBudget b;
  b.restarts = 20;
  const L2WitnessReport rep = l2_tsp_witness(2, {2, 4}, b);
  EXPECT_TRUE(rep.passed());
  EXPECT_GT(rep.mu, 0.0);
  EXPECT_NEAR(rep.norm, 2.0, 1e-9);
  ASSERT_EQ(rep.layers.size(), 3u);
  for (const auto& layer : rep.layers) {
    EXPECT_TRUE(layer.essential);
    EXPECT_FALSE(layer.cp.psd());
    EXPECT_FALSE(layer.cocp.psd());
    EXPECT_GT(layer.eps_exact, 0);
    EXPECT_LE(layer.eps_exact.get_d(), layer.eps_bound);
    for (const auto& [m, v] : layer.tsp) {
      EXPECT_LE(m, layer.n);
      EXPECT_FALSE(v.violation());
    }
  }
  EXPECT_GT(rep.layers[0].eps_exact, rep.layers[2].eps_exact);
}
