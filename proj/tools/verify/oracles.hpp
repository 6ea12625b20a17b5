#pragma once

#include "halo/hypermat.hpp"

#include <cstdint>

namespace halo::verify {

/// Seeded element of Q(e): numerator and denominator of degree <= 2 with small coefficients.
EpsRational random_eps_rational(std::uint64_t seed);

/// Seeded Hermitian matrix over Q(e) + iQ(e) of size dim, mixing psd, singular psd,
/// infinitesimally perturbed and indefinite cases.
EpsMatrix random_hermitian(std::size_t dim, std::uint64_t seed);

/// Determinant by cofactor expansion.
EpsComplex determinant(const EpsMatrix& m);

/// Every principal minor is >= 0 (brute force over all 2^n - 1 index subsets).
bool psd_by_principal_minors(const EpsMatrix& m);

}  // namespace halo::verify
