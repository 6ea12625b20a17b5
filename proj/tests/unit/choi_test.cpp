#include "halo/choi.hpp"
#include "halo/constructions.hpp"
#include "halo/errors.hpp"

#include <gtest/gtest.h>

using namespace halo;

namespace {

const EpsRational e = EpsRational::eps();

// P(X) computed straight from the definition sum_i A_i tr(B_i^T X).
EpsMatrix apply_by_definition(const MapDecomposition& p, const EpsMatrix& x) {
  EpsMatrix out(p.d_out, p.d_out);
  for (const auto& t : p.terms) out += t.A * trace(transpose(t.B) * x);
  return out;
}

MapDecomposition small_map() {
  MapDecomposition p{2, 3, {}};
  EpsMatrix a1(3, 3), b1(2, 2), a2(3, 3), b2(2, 2);
  a1(0, 1) = 1;
  a1(2, 2) = e;
  b1(1, 0) = 2;
  b1(0, 0) = -1;
  a2(1, 1) = EpsComplex::i();
  a2(0, 2) = 3;
  b2(1, 1) = 1 - e;
  b2(0, 1) = EpsComplex(0, 1);
  p.terms = {{a1, b1}, {a2, b2}};
  return p;
}

}  // namespace

TEST(Choi, StandardMaps) {
  EXPECT_EQ(choi_from_decomposition(identity_map(3)).matrix, max_ent_projector(3));
  EXPECT_EQ(choi_from_decomposition(transposition_map(3)).matrix, flip_operator(3) * EpsComplex(Rational(1, 3)));
  EXPECT_TRUE(is_cp(identity_map(2)).psd());
  EXPECT_FALSE(is_cp(transposition_map(2)).psd());
  EXPECT_TRUE(is_cocp(transposition_map(2)).psd());
  EXPECT_TRUE(is_cp(depolarizing_map(3)).psd());
  EXPECT_TRUE(is_cocp(depolarizing_map(3)).psd());
  EXPECT_EQ(eb_witness_check(depolarizing_map(2)), EbStatus::Witnessed);
  EXPECT_EQ(eb_witness_check(transposition_map(2)), EbStatus::NotWitnessed);
}

TEST(Choi, ApplyAgreesWithDefinition) {
  const MapDecomposition p = small_map();
  const ChoiMatrix c = choi_from_decomposition(p);
  EXPECT_EQ(c.dims.dA, 3u);
  EXPECT_EQ(c.dims.dB, 2u);
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t l = 0; l < 2; ++l) {
      const EpsMatrix x = EpsMatrix::unit(2, k, l) + EpsMatrix::unit(2, l, k) * EpsComplex(e);
      EXPECT_EQ(apply_map(p, x), apply_by_definition(p, x));
      EXPECT_EQ(apply_choi(c, x), apply_by_definition(p, x));
    }
}

TEST(Choi, DecompositionRoundTrip) {
  const ChoiMatrix c = choi_from_decomposition(small_map());
  const MapDecomposition q = decomposition_from_choi(c);
  EXPECT_EQ(choi_from_decomposition(q).matrix, c.matrix);
  EXPECT_LE(q.terms.size(), 2u);

  const ChoiMatrix mu = mu16_choi(3, 3);
  EXPECT_EQ(choi_from_decomposition(decomposition_from_choi(mu)).matrix, mu.matrix);
}

TEST(Choi, TensorPowerMatchesTensorMaps) {
  const MapDecomposition p = small_map();
  const ChoiMatrix direct = choi_tensor_power(p, 2);
  // grouped ordering: (out1 out2 | in1 in2), same as the Choi matrix of P (x) P
  EXPECT_EQ(direct.matrix, choi_from_decomposition(tensor_maps(p, p)).matrix);
  EXPECT_EQ(choi_tensor_power(choi_from_decomposition(p), 2).matrix, direct.matrix);
  EXPECT_EQ(choi_tensor_power(p, 1).matrix, choi_from_decomposition(p).matrix);
  EXPECT_THROW(choi_tensor_power(p, 4, 100), ResourceLimit);
}

TEST(Choi, TensorMapsActOnProducts) {
  const MapDecomposition p = small_map();
  const MapDecomposition q = transposition_map(2);
  const EpsMatrix x = EpsMatrix::unit(2, 0, 1) + EpsMatrix::unit(2, 1, 1);
  const EpsMatrix y = EpsMatrix::unit(2, 1, 0) * EpsComplex(e);
  EXPECT_EQ(apply_map(tensor_maps(p, q), kron(x, y)), kron(apply_map(p, x), apply_map(q, y)));
}

TEST(Choi, MapAlgebra) {
  const MapDecomposition p = small_map();
  const EpsMatrix x = EpsMatrix::unit(2, 1, 0);
  EXPECT_EQ(apply_map(compose_with_transpose(p), x), transpose(apply_map(p, x)));
  EXPECT_EQ(apply_map(add_maps(p, p), x), apply_map(p, x) * EpsComplex(2));
  EXPECT_EQ(apply_map(scale_map(p, e), x), apply_map(p, x) * EpsComplex(e));
}

TEST(Choi, Validation) {
  MapDecomposition bad{2, 2, {{EpsMatrix(2, 2), EpsMatrix(3, 3)}}};
  EXPECT_THROW(bad.validate(), DimensionMismatch);
  EXPECT_THROW(MapDecomposition{}.validate(), DimensionMismatch);
}
