#pragma once

#include "halo/eps_complex.hpp"
#include "halo/matrix.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace halo {

using EpsMatrix = Matrix<EpsComplex>;
using EpsVector = Vector<EpsComplex>;
using ComplexMatrix = Matrix<std::complex<double>>;
using ComplexVector = Vector<std::complex<double>>;

enum class PsdStatus { PSD, NotPSD };

struct PsdVerdict {
  PsdStatus status = PsdStatus::PSD;
  /// Present iff NotPSD; satisfies <v, M v> < 0.
  std::optional<EpsVector> witness;
  /// <v, M v> for the witness.
  std::optional<EpsRational> value;

  bool psd() const noexcept { return status == PsdStatus::PSD; }
};

/// Exact psd decision by Hermitian diagonal pivoting over Q(e).
/// Throws NotHermitian.
PsdVerdict psd_check(const EpsMatrix& m);

std::size_t rank(const EpsMatrix& m);
/// Basis of {v : M v = 0}; each vector has a 1 at its free column.
std::vector<EpsVector> kernel_basis(const EpsMatrix& m);

/// M = L * R with L = the pivot columns of M (m x r) and R the nonzero rows of rref(M) (r x n).
struct RankFactorization {
  EpsMatrix left;
  EpsMatrix right;
};
RankFactorization rank_factorization(const EpsMatrix& m);

/// True iff the dA x dB reshape of v has rank <= 1.
bool is_product_vector(const EpsVector& v, BipartiteDims dims);

/// F_d |ij> = |ji>.
EpsMatrix flip_operator(std::size_t d);
/// (1/d) sum_ij |ii><jj|.
EpsMatrix max_ent_projector(std::size_t d);
/// Unnormalized sum_ij |ii><jj| (d times the projector).
EpsMatrix max_ent_unnormalized(std::size_t d);

EpsVector basis_vector(std::size_t n, std::size_t k);

/// Entrywise standard part; throws InfiniteElement.
EpsMatrix shadow(const EpsMatrix& m);
/// Entrywise substitution e = t; throws PoleAtPoint.
EpsMatrix eval_at(const EpsMatrix& m, const Rational& t);
/// Entrywise double approximation of the shadow.
ComplexMatrix to_complex(const EpsMatrix& m);
ComplexVector to_complex(const EpsVector& v);

bool is_finite(const EpsMatrix& m);
bool has_rational_entries(const EpsMatrix& m);

/// Matrix with entries in Q (imaginary parts allowed) from an exact double matrix.
EpsMatrix from_complex_exact(const ComplexMatrix& m);
EpsVector from_complex_exact(const ComplexVector& v);

}  // namespace halo
