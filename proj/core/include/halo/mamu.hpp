#pragma once

#include "halo/choi.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace halo {

using RationalMatrix = Matrix<Rational>;

/// Cap on the number of index tuples or diagonal entries produced by one call.
inline constexpr std::size_t kDefaultMaxEntries = std::size_t{1} << 20;

/// t matrices C_i of size s x s with rational entries.
struct MpoTensor {
  std::size_t s = 0;
  std::size_t t = 0;
  std::vector<RationalMatrix> matrices;

  void validate() const;
};

/// Index tuples (i_1, ..., i_n) are ordered lexicographically with i_1 slowest.
std::size_t tuple_index(const std::vector<std::size_t>& tuple, std::size_t base);
std::vector<std::size_t> tuple_from_index(std::size_t index, std::size_t base, std::size_t n);

/// Diagonal of tau_n: entry (i_1..i_n) is tr(C_{i_1} ... C_{i_n}).
struct MamuDiagonal {
  std::size_t base = 0;
  std::size_t n = 0;
  std::vector<Rational> values;
};

MamuDiagonal tau_n(const MpoTensor& c, std::size_t n, std::size_t max_entries = kDefaultMaxEntries);

/// |chi_n> = sum |i_1 i_2> (x) |i_2 i_3> (x) ... (x) |i_n i_1>, unnormalized.
EpsVector mamu_vector(std::size_t d, std::size_t n, std::size_t max_dim = kDefaultMaxDim);
/// |chi_n><chi_n|. Throws ResourceLimit when d^{2n} exceeds max_dim.
EpsMatrix mamu_projector(std::size_t d, std::size_t n, std::size_t max_dim = kDefaultMaxDim);

/// M[(mu,lambda),(nu,rho)] = X[(mu,nu),(lambda,rho)] on (d^2) x (d^2), packing (a,b) -> a d + b.
/// An involution.
template <class T>
Matrix<T> mamu_reshuffle(const Matrix<T>& x, std::size_t d) {
  if (x.rows() != d * d || x.cols() != d * d) throw DimensionMismatch("reshuffle needs d^2 x d^2");
  Matrix<T> m(d * d, d * d);
  for (std::size_t mu = 0; mu < d; ++mu)
    for (std::size_t la = 0; la < d; ++la)
      for (std::size_t nu = 0; nu < d; ++nu)
        for (std::size_t rho = 0; rho < d; ++rho) m(mu * d + la, nu * d + rho) = x(mu * d + nu, la * d + rho);
  return m;
}

/// Integer square root of s; throws NotPerfectSquare.
std::size_t bond_root(std::size_t s);

/// A_i = |i><i| (t x t), B_i = mamu_reshuffle(C_i, sqrt s).
MapDecomposition reduce_mpo_to_map(const MpoTensor& c);

enum class MamuMethod {
  Transfer,    // trace of products of per-term transfer matrices
  SupportSum,  // direct sum over the support of |chi_n>
  Dense,       // materializes chi_n and every tensor product
};

/// P^{(x)n}(chi_n). When every A_i is diagonal (and the method is not Dense) only
/// the diagonal is produced; otherwise the dense matrix.
struct MamuPower {
  std::size_t dim = 0;
  bool diagonal_only = false;
  EpsVector diagonal;  // when diagonal_only
  EpsMatrix dense;     // otherwise

  EpsComplex entry(std::size_t i, std::size_t j) const;
};

/// Requires d_in = d^2 for the MaMu site dimension d.
MamuPower apply_power_to_mamu(const MapDecomposition& p, std::size_t n,
                              MamuMethod method = MamuMethod::Transfer,
                              std::size_t max_dim = kDefaultMaxDim,
                              std::size_t max_entries = kDefaultMaxEntries);

struct ReductionCheck {
  bool holds = true;
  std::size_t n_checked = 0;
  std::optional<std::size_t> failed_n;
  std::optional<std::size_t> failed_index;  // tuple index of the first mismatch
  std::string failed_path;                  // which evaluation disagreed with tau_n
  bool dense_checked = false;
};

/// tau_n(C) == P^{(x)n}(chi_n) for n = 1..n_max, P = reduce_mpo_to_map(C). The
/// diagonal is compared through the support-sum path; n <= 2 with d <= 3 also
/// through the dense path.
ReductionCheck verify_reduction(const MpoTensor& c, std::size_t n_max,
                                std::size_t max_dim = kDefaultMaxDim);
/// Same check against an explicitly supplied map.
ReductionCheck verify_reduction(const MpoTensor& c, const MapDecomposition& p, std::size_t n_max,
                                std::size_t max_dim = kDefaultMaxDim);

struct LoopResult {
  bool violation = false;
  std::size_t n_max = 0;
  std::optional<std::size_t> n;           // level of the first violation
  std::vector<std::size_t> tuple;         // offending diagonal tuple, when diagonal
  std::optional<EpsVector> witness;       // exact vector with <v, X v> < 0
  std::optional<EpsRational> value;       // <v, X v>
};

/// Exact psd check of P^{(x)n}(chi_n) for n = 1..n_max; stops at the first failure.
LoopResult bounded_tsp_mamu(const MapDecomposition& p, std::size_t n_max,
                            std::size_t max_dim = kDefaultMaxDim,
                            std::size_t max_entries = kDefaultMaxEntries);
/// First negative entry of tau_n for n = 1..n_max.
LoopResult bounded_positive_mpo(const MpoTensor& c, std::size_t n_max,
                                std::size_t max_entries = kDefaultMaxEntries);

/// Seeded MPO with entries p/q, |p| <= 3, 1 <= q <= 3.
MpoTensor random_mpo(std::size_t s, std::size_t t, std::uint64_t seed);

}  // namespace halo
