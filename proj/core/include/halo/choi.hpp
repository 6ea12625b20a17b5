#pragma once

#include "halo/hypermat.hpp"

#include <cstddef>
#include <vector>

namespace halo {

/// Default cap on the dimension of any dense matrix built from a tensor power.
inline constexpr std::size_t kDefaultMaxDim = 2000;

struct MapTerm {
  EpsMatrix A;  // d_out x d_out
  EpsMatrix B;  // d_in x d_in
};

/// P(X) = sum_i A_i tr(B_i^T X).
struct MapDecomposition {
  std::size_t d_in = 0;
  std::size_t d_out = 0;
  std::vector<MapTerm> terms;

  /// Throws DimensionMismatch when a term has the wrong shape or there are no terms.
  void validate() const;
};

/// Choi matrix in output (x) input ordering: C = (1/d_in) sum_i A_i (x) B_i.
struct ChoiMatrix {
  EpsMatrix matrix;
  BipartiteDims dims;  // dA = d_out, dB = d_in
};

ChoiMatrix choi_from_decomposition(const MapDecomposition& p);
EpsMatrix apply_map(const MapDecomposition& p, const EpsMatrix& x);
/// d_in * tr_B(C (1 (x) X^T)); agrees with apply_map on the decomposition C came from.
EpsMatrix apply_choi(const ChoiMatrix& c, const EpsMatrix& x);

/// Choi matrix of P^{(x)n} with all outputs grouped left and all inputs right.
/// Throws ResourceLimit when (d_in d_out)^n exceeds max_dim.
ChoiMatrix choi_tensor_power(const MapDecomposition& p, std::size_t n,
                             std::size_t max_dim = kDefaultMaxDim);
ChoiMatrix choi_tensor_power(const ChoiMatrix& c, std::size_t n,
                             std::size_t max_dim = kDefaultMaxDim);

/// Operator-Schmidt splitting of a Choi matrix by exact reshuffle and rank factorization.
MapDecomposition decomposition_from_choi(const ChoiMatrix& c);

PsdVerdict is_cp(const MapDecomposition& p);
PsdVerdict is_cocp(const MapDecomposition& p);
PsdVerdict is_cp(const ChoiMatrix& c);
PsdVerdict is_cocp(const ChoiMatrix& c);

enum class EbStatus { Witnessed, NotWitnessed };
/// Witnessed iff every A_i and B_i of the given decomposition is psd.
EbStatus eb_witness_check(const MapDecomposition& p);

/// theta o P: each A_i replaced by its transpose.
MapDecomposition compose_with_transpose(const MapDecomposition& p);

/// Term-list concatenation.
MapDecomposition add_maps(const MapDecomposition& p, const MapDecomposition& q);
/// Scales every A_i by c.
MapDecomposition scale_map(const MapDecomposition& p, const EpsComplex& c);
/// P (x) Q acting on the grouped input space.
MapDecomposition tensor_maps(const MapDecomposition& p, const MapDecomposition& q);

MapDecomposition identity_map(std::size_t d);
MapDecomposition transposition_map(std::size_t d);
/// X -> tr(X) 1.
MapDecomposition depolarizing_map(std::size_t d);

}  // namespace halo
