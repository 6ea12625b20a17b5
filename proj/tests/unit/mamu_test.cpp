#include "halo/constructions.hpp"
#include "halo/errors.hpp"
#include "halo/mamu.hpp"

#include <gtest/gtest.h>

using namespace halo;

namespace {

MpoTensor scalars(std::vector<long> values) {
  MpoTensor c{1, values.size(), {}};
  for (long v : values) c.matrices.push_back(RationalMatrix(1, 1, {Rational(v)}));
  return c;
}

EpsMatrix to_eps(const RationalMatrix& m) {
  return map_entries<EpsComplex>(m, [](const Rational& x) { return EpsComplex(x); });
}

Rational brute_trace(const MpoTensor& c, const std::vector<std::size_t>& word) {
  RationalMatrix m = RationalMatrix::identity(c.s);
  for (std::size_t i : word) m = m * c.matrices[i];
  return trace(m);
}

}  // namespace

TEST(Tuples, LexicographicWithFirstSlowest) {
  EXPECT_EQ(tuple_index({1, 0, 2}, 3), 11u);
  EXPECT_EQ(tuple_from_index(11, 3, 3), (std::vector<std::size_t>{1, 0, 2}));
  for (std::size_t i = 0; i < 64; ++i) EXPECT_EQ(tuple_index(tuple_from_index(i, 4, 3), 4), i);
}

TEST(Reshuffle, Involution) {
  const MpoTensor c = random_mpo(9, 2, 5);
  for (const auto& m : c.matrices) EXPECT_EQ(mamu_reshuffle(mamu_reshuffle(m, 3), 3), m);
  // identity becomes the unnormalized |Omega><Omega| pattern
  EXPECT_EQ(mamu_reshuffle(EpsMatrix::identity(9), 3), max_ent_unnormalized(3));
}

TEST(MamuVector, Shape) {
  const EpsVector chi = mamu_vector(3, 2);
  EpsComplex norm2(0);
  for (const auto& x : chi) norm2 += x * conj(x);
  EXPECT_EQ(norm2, EpsComplex(9));
  EXPECT_EQ(mamu_projector(2, 1), max_ent_unnormalized(2));
  const EpsMatrix p = mamu_projector(2, 2);
  EXPECT_EQ(trace(p), EpsComplex(4));
  EXPECT_EQ(rank(p), 1u);
  EXPECT_TRUE(psd_check(p).psd());
  EXPECT_THROW(mamu_projector(3, 3, 100), ResourceLimit);
}

TEST(TauN, ScalarCases) {
  const MamuDiagonal two = tau_n(scalars({2}), 5);
  ASSERT_EQ(two.values.size(), 1u);
  EXPECT_EQ(two.values[0], Rational(32));
  const MamuDiagonal pm = tau_n(scalars({1, -1}), 1);
  EXPECT_EQ(pm.values, (std::vector<Rational>{1, -1}));
}

TEST(TauN, MatchesBruteForceTraces) {
  const MpoTensor c = random_mpo(9, 9, 17);
  const MamuDiagonal d = tau_n(c, 2);
  ASSERT_EQ(d.values.size(), 81u);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) EXPECT_EQ(d.values[9 * i + j], brute_trace(c, {i, j}));

  const MpoTensor small = random_mpo(4, 3, 2);
  const MamuDiagonal d3 = tau_n(small, 3);
  for (std::size_t k = 0; k < d3.values.size(); ++k)
    EXPECT_EQ(d3.values[k], brute_trace(small, tuple_from_index(k, 3, 3)));
}

TEST(Reduction, Structure) {
  EXPECT_EQ(bond_root(9), 3u);
  EXPECT_THROW(bond_root(8), NotPerfectSquare);
  EXPECT_THROW(reduce_mpo_to_map(random_mpo(3, 2, 1)), NotPerfectSquare);

  const MpoTensor c = random_mpo(9, 3, 4);
  const MapDecomposition p = reduce_mpo_to_map(c);
  EXPECT_EQ(p.d_in, 9u);
  EXPECT_EQ(p.d_out, 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(p.terms[i].A, EpsMatrix::unit(3, i, i));
    EXPECT_EQ(mamu_reshuffle(p.terms[i].B, 3), to_eps(c.matrices[i]));
  }
}

TEST(Reduction, HoldsOnSeededInstances) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const ReductionCheck r = verify_reduction(random_mpo(4, 3, seed), 3);
    EXPECT_TRUE(r.holds) << r.failed_path;
    EXPECT_EQ(r.n_checked, 3u);
    EXPECT_TRUE(r.dense_checked);
  }
  MpoTensor ones{9, 2, {RationalMatrix::identity(9), RationalMatrix::identity(9)}};
  EXPECT_TRUE(verify_reduction(ones, 2).holds);
  EXPECT_EQ(tau_n(ones, 2).values, std::vector<Rational>(4, Rational(9)));
}

TEST(Reduction, DetectsTamperedMap) {
  const MpoTensor c = random_mpo(4, 2, 8);
  MapDecomposition p = reduce_mpo_to_map(c);
  p.terms[1].B(0, 0) += EpsComplex(1);
  const ReductionCheck r = verify_reduction(c, p, 2);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.failed_n, 1u);
}

TEST(MamuPower, MethodsAgree) {
  const MapDecomposition p = reduce_mpo_to_map(random_mpo(4, 3, 12));
  const MamuPower transfer = apply_power_to_mamu(p, 2, MamuMethod::Transfer);
  const MamuPower support = apply_power_to_mamu(p, 2, MamuMethod::SupportSum);
  const MamuPower dense = apply_power_to_mamu(p, 2, MamuMethod::Dense);
  ASSERT_TRUE(transfer.diagonal_only);
  ASSERT_FALSE(dense.diagonal_only);
  for (std::size_t i = 0; i < dense.dim; ++i) {
    EXPECT_EQ(transfer.entry(i, i), dense.entry(i, i));
    EXPECT_EQ(support.entry(i, i), dense.entry(i, i));
    for (std::size_t j = 0; j < dense.dim; ++j)
      if (i != j) EXPECT_EQ(dense.entry(i, j), EpsComplex(0));
  }
}

TEST(MamuPower, CounterexampleMap) {
  const MapDecomposition p = counterexample_map(2);
  for (std::size_t n = 1; n <= 3; ++n) {
    const long expected = (n % 2 ? -1 : 1) + (1L << n);
    const MamuPower out = apply_power_to_mamu(p, n);
    for (std::size_t i = 0; i < out.dim; ++i) {
      EXPECT_EQ(out.entry(i, i), EpsComplex(expected));
      if (i + 1 < out.dim) EXPECT_EQ(out.entry(i, i + 1), EpsComplex(0));
    }
  }
  EXPECT_FALSE(bounded_tsp_mamu(p, 6).violation);
}

TEST(MamuPower, IdentityMapGivesChi) {
  const MamuPower out = apply_power_to_mamu(identity_map(4), 2, MamuMethod::Dense);
  EXPECT_EQ(out.dense, mamu_projector(2, 2));
}

TEST(BoundedLoops, Verdicts) {
  EXPECT_FALSE(bounded_positive_mpo(scalars({2}), 6).violation);

  const LoopResult pm = bounded_positive_mpo(scalars({1, -1}), 4);
  ASSERT_TRUE(pm.violation);
  EXPECT_EQ(pm.n, 1u);
  EXPECT_EQ(pm.tuple, (std::vector<std::size_t>{1}));

  MpoTensor neg{4, 1, {RationalMatrix::identity(4) * Rational(-1)}};
  const LoopResult v = bounded_tsp_mamu(reduce_mpo_to_map(neg), 3);
  ASSERT_TRUE(v.violation);
  EXPECT_EQ(v.n, 1u);
  ASSERT_TRUE(v.value);
  EXPECT_EQ(v.value->sign(), Sign::negative);

  EXPECT_FALSE(bounded_tsp_mamu(identity_map(4), 2).violation);
}

// tr C_i >= 0 for both, but tr(C_1 C_2) < 0.
TEST(BoundedLoops, FirstFailureAtLevelTwo) {
  MpoTensor c{2, 2, {RationalMatrix(2, 2, {Rational(1), Rational(0), Rational(0), Rational(-1)}),
                     RationalMatrix(2, 2, {Rational(-1), Rational(0), Rational(0), Rational(1)})}};
  const LoopResult r = bounded_positive_mpo(c, 4);
  ASSERT_TRUE(r.violation);
  EXPECT_EQ(r.n, 2u);
  EXPECT_LT(brute_trace(c, r.tuple), 0);
}

// Positivity transfers through the reduction: both loops report the same first level.
TEST(BoundedLoops, TransferAgreement) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const MpoTensor c = random_mpo(4, 2, seed + 40);
    const LoopResult a = bounded_positive_mpo(c, 3);
    const LoopResult b = bounded_tsp_mamu(reduce_mpo_to_map(c), 3);
    EXPECT_EQ(a.violation, b.violation) << seed;
    EXPECT_EQ(a.n, b.n) << seed;
  }
}
