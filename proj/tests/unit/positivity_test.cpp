#include "halo/constructions.hpp"
#include "halo/errors.hpp"
#include "halo/positivity.hpp"

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace halo;

namespace {

Eigen::MatrixXcd eigen_of(const ComplexMatrix& m) {
  Eigen::MatrixXcd r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

SearchBudget small_budget() {
  SearchBudget b;
  b.restarts = 40;
  return b;
}

}  // namespace

TEST(OperatorNorm, MatchesSvd) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 20; ++k) {
    const std::size_t r = 2 + k % 5, c = 1 + k % 4;
    ComplexMatrix m(r, c);
    for (auto& z : m.entries()) z = {u(rng), u(rng)};
    const double svd = Eigen::JacobiSVD<Eigen::MatrixXcd>(eigen_of(m)).singularValues()(0);
    EXPECT_NEAR(operator_norm(m), svd, 1e-9 * svd);
  }
  EXPECT_NEAR(operator_norm(mu16_choi(3, 3).matrix), 2.0, 1e-12);
}

TEST(ProductMin, KnownValues) {
  const BipartiteDims d{2, 2};
  // <ab|F|ab> = |<a|b>|^2 >= 0 with equality for orthogonal a, b
  const ProductMin f = product_min(flip_operator(2), d, small_budget());
  EXPECT_NEAR(f.value, 0.0, 1e-9);
  EXPECT_NEAR(product_min(EpsMatrix::identity(4), d, small_budget()).value, 1.0, 1e-12);
  // the unnormalized |Omega><Omega| vanishes on |01>
  EXPECT_NEAR(product_min(max_ent_unnormalized(2), d, small_budget()).value, 0.0, 1e-9);
}

TEST(ProductMin, DeterministicGivenSeed) {
  const ChoiMatrix c = mu16_choi(3, 3);
  const ProductMin a = product_min(c.matrix, c.dims, small_budget());
  const ProductMin b = product_min(c.matrix, c.dims, small_budget());
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.a, b.a);
}

TEST(ProductMin, ValueMatchesWitness) {
  const ChoiMatrix c = mu16_choi(3, 3);
  const ProductMin m = product_min(c.matrix, c.dims, small_budget());
  const ComplexVector v = kron(m.a, m.b);
  EXPECT_NEAR(sandwich(v, to_complex(c.matrix), v).real(), m.value, 1e-9);
}

TEST(EpsBound, Formula) {
  EXPECT_EQ(eps_bound_from(2.0, 0.0, 1), 0.0);
  EXPECT_EQ(eps_bound_from(2.0, -1.0, 3), 0.0);
  for (std::size_t n = 1; n <= 6; ++n) {
    const double direct = 2.0 * (std::pow(1.0 + std::pow(0.25, static_cast<double>(n)), 1.0 / n) - 1.0);
    const double b = eps_bound_from(2.0, 0.5, n);
    EXPECT_LE(b, direct);
    EXPECT_NEAR(b, direct, 1e-12);
  }
  // decreasing in n
  EXPECT_GT(eps_bound_from(2.0, 0.5, 1), eps_bound_from(2.0, 0.5, 2));
}

TEST(EpsBound, NonPositiveMuThrows) {
  EXPECT_THROW(eps_bound(flip_operator(2), {2, 2}, 1, small_budget()), NonPositiveMu);
}

TEST(Search, ExactConfirmation) {
  // flip on 2x2 plus -1/2: product value |<a|b>|^2 - 1/2 is negative for orthogonal a, b
  const EpsMatrix m = flip_operator(2) - EpsMatrix::identity(4) * EpsComplex(Rational(1, 2));
  const BlockPositivityVerdict v = block_positive_search(m, {2, 2}, small_budget());
  ASSERT_TRUE(v.violation());
  EXPECT_TRUE(v.exact);
  EXPECT_EQ(exact_product_value(m, v.witness_a, v.witness_b).sign(), Sign::negative);

  EXPECT_FALSE(block_positive_search(flip_operator(2), {2, 2}, small_budget()).violation());
}

TEST(Search, TensorStablePositivity) {
  EXPECT_FALSE(n_tsp_search(transposition_map(2), 1, small_budget()).violation());
  // theta (x) theta is the full transpose, still positive
  EXPECT_FALSE(n_tsp_search(transposition_map(2), 2, small_budget()).violation());
  EXPECT_TRUE(n_tsp_search(gamma_map(2), 2, small_budget()).violation());
  EXPECT_FALSE(positive_map_search(gamma_map(2), small_budget()).violation());
  EXPECT_TRUE(positive_map_search(counterexample_map(2), small_budget()).violation());
}

TEST(Search, InfinitesimalPerturbationStaysBlockPositive) {
  // no product vector lies in the kernel, so the product minimum is strictly positive
  // and subtracting e cannot make it negative
  const ChoiMatrix c = mu16_choi(3, 3);
  const EpsMatrix m = c.matrix - EpsMatrix::identity(9) * EpsComplex(EpsRational::eps());
  const BlockPositivityVerdict v = block_positive_search(m, c.dims, small_budget());
  EXPECT_FALSE(v.violation());
  EXPECT_GT(v.value, 1e-3);
}
