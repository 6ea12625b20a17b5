#include "halo/positivity.hpp"

#include <Eigen/Dense>

#include <cfloat>
#include <cmath>
#include <random>

namespace halo {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

MatrixXcd to_eigen(const ComplexMatrix& m) {
  MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

ComplexVector from_eigen(const VectorXcd& v) { return {v.data(), v.data() + v.size()}; }

VectorXcd random_unit(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  VectorXcd v(n);
  for (std::size_t i = 0; i < n; ++i) v(i) = {g(rng), g(rng)};
  return v / v.norm();
}

// Smallest eigenpair of a Hermitian matrix (symmetrized against rounding).
std::pair<double, VectorXcd> min_eig(const MatrixXcd& m) {
  const MatrixXcd h = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
  return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

// M[j,l] = sum_{i,k} conj(a_i) a_k C[(i,j),(k,l)]
MatrixXcd condition_on_a(const MatrixXcd& c, BipartiteDims dims, const VectorXcd& a) {
  MatrixXcd m = MatrixXcd::Zero(dims.dB, dims.dB);
  for (std::size_t i = 0; i < dims.dA; ++i)
    for (std::size_t k = 0; k < dims.dA; ++k) {
      const std::complex<double> w = std::conj(a(i)) * a(k);
      if (w == 0.0) continue;
      m += w * c.block(i * dims.dB, k * dims.dB, dims.dB, dims.dB);
    }
  return m;
}

// M[i,k] = sum_{j,l} conj(b_j) b_l C[(i,j),(k,l)]
MatrixXcd condition_on_b(const MatrixXcd& c, BipartiteDims dims, const VectorXcd& b) {
  MatrixXcd m(dims.dA, dims.dA);
  for (std::size_t i = 0; i < dims.dA; ++i)
    for (std::size_t k = 0; k < dims.dA; ++k)
      m(i, k) = b.dot(c.block(i * dims.dB, k * dims.dB, dims.dB, dims.dB) * b);
  return m;
}

EpsVector exact_vector(const ComplexVector& v) { return from_complex_exact(v); }

EpsRational exact_norm2(const ComplexVector& v) {
  EpsRational acc;
  for (const auto& z : exact_vector(v)) acc += z.norm2();
  return acc;
}

}  // namespace

std::uint64_t restart_seed(std::uint64_t seed, std::size_t k) {
  // splitmix64 step on seed + k
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(k) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ProductMin product_min(const ComplexMatrix& c, BipartiteDims dims, const SearchBudget& budget) {
  if (c.rows() != dims.total() || c.cols() != dims.total())
    throw DimensionMismatch("product_min: matrix is not dA*dB square");
  const MatrixXcd ce = to_eigen(c);
  ProductMin best;
  bool have = false;
  for (std::size_t r = 0; r < std::max<std::size_t>(budget.restarts, 1); ++r) {
    std::mt19937_64 rng(restart_seed(budget.seed, r));
    VectorXcd a = random_unit(dims.dA, rng);
    VectorXcd b;
    double value = std::numeric_limits<double>::infinity();
    for (std::size_t it = 0; it < std::max<std::size_t>(budget.iterations, 1); ++it) {
      auto [vb, nb] = min_eig(condition_on_a(ce, dims, a));
      b = std::move(nb);
      auto [va, na] = min_eig(condition_on_b(ce, dims, b));
      a = std::move(na);
      const double prev = value;
      value = va;
      if (std::abs(prev - value) <= budget.tolerance * (1.0 + std::abs(value))) break;
    }
    if (!have || value < best.value) {
      best = {value, from_eigen(a), from_eigen(b)};
      have = true;
    }
  }
  return best;
}

ProductMin product_min(const EpsMatrix& c, BipartiteDims dims, const SearchBudget& budget) {
  return product_min(to_complex(c), dims, budget);
}

double operator_norm(const ComplexMatrix& c) {
  const MatrixXcd m = to_eigen(c);
  if (m.size() == 0) return 0.0;
  const MatrixXcd g = m.adjoint() * m;
  std::mt19937_64 rng(restart_seed(0x5eed, 0));
  VectorXcd v = random_unit(m.cols(), rng);
  double lambda = 0.0;
  for (int it = 0; it < 100000; ++it) {
    VectorXcd w = g * v;
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    const double next = v.dot(w).real();
    v = w / nw;
    if (std::abs(next - lambda) <= 1e-12 * std::abs(next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

double operator_norm(const EpsMatrix& c) { return operator_norm(to_complex(c)); }

double eps_bound_from(double norm, double mu, std::size_t n) {
  if (mu <= 0.0 || norm <= 0.0 || n == 0) return 0.0;
  const double ratio = std::pow(mu / norm, static_cast<double>(n));
  const double raw = norm * std::expm1(std::log1p(ratio) / static_cast<double>(n));
  return std::max(0.0, raw - 2.0 * DBL_EPSILON * norm);
}

double eps_bound(const EpsMatrix& c, BipartiteDims dims, std::size_t n, const SearchBudget& budget) {
  const double mu = product_min(c, dims, budget).value;
  if (mu <= 0.0) throw NonPositiveMu(mu);
  return eps_bound_from(operator_norm(c), mu, n);
}

EpsRational exact_product_value(const EpsMatrix& c, const ComplexVector& a, const ComplexVector& b) {
  const EpsVector v = kron(exact_vector(a), exact_vector(b));
  const EpsComplex value = sandwich(v, c, v);
  return value.re();
}

BlockPositivityVerdict block_positive_search(const EpsMatrix& c, BipartiteDims dims,
                                             const SearchBudget& budget) {
  if (!is_hermitian(c)) throw NotHermitian();
  const ProductMin pm = product_min(c, dims, budget);
  BlockPositivityVerdict out;
  out.witness_a = pm.a;
  out.witness_b = pm.b;
  out.value = pm.value;
  if (pm.value >= -budget.tolerance) return out;
  // Confirm value / (|a|^2 |b|^2) < -tolerance exactly.
  const EpsRational value = exact_product_value(c, pm.a, pm.b);
  const EpsRational bound =
      EpsRational(rational_from_double(budget.tolerance)) * exact_norm2(pm.a) * exact_norm2(pm.b);
  if ((value + bound).sign() == Sign::negative) {
    out.status = SearchStatus::ViolationFound;
    out.exact = true;
  }
  return out;
}

BlockPositivityVerdict positive_map_search(const MapDecomposition& p, const SearchBudget& budget) {
  const ChoiMatrix c = choi_from_decomposition(p);
  return block_positive_search(c.matrix, c.dims, budget);
}

BlockPositivityVerdict n_tsp_search(const ChoiMatrix& c, std::size_t n, const SearchBudget& budget,
                                    std::size_t max_dim) {
  const ChoiMatrix cn = choi_tensor_power(c, n, max_dim);
  return block_positive_search(cn.matrix, cn.dims, budget);
}

BlockPositivityVerdict n_tsp_search(const MapDecomposition& p, std::size_t n,
                                    const SearchBudget& budget, std::size_t max_dim) {
  return n_tsp_search(choi_from_decomposition(p), n, budget, max_dim);
}

}  // namespace halo
