#pragma once

#include "halo/choi.hpp"

#include <cstdint>
#include <optional>

namespace halo {

struct SearchBudget {
  std::size_t restarts = 200;
  std::size_t iterations = 200;  // per restart
  std::uint64_t seed = 20240611;
  double tolerance = 1e-10;
};

/// Seed of restart k; independent of how many restarts run before it.
std::uint64_t restart_seed(std::uint64_t seed, std::size_t k);

struct ProductMin {
  double value = 0.0;
  ComplexVector a;  // unit vector on factor A
  ComplexVector b;  // unit vector on factor B
};

/// Smallest <a(x)b| C |a(x)b> over unit vectors found by seeded alternating minimization.
/// An upper bound on the true minimum.
ProductMin product_min(const ComplexMatrix& c, BipartiteDims dims, const SearchBudget& budget);
/// Runs on the shadow of c.
ProductMin product_min(const EpsMatrix& c, BipartiteDims dims, const SearchBudget& budget);

/// Largest singular value by power iteration on C^dagger C.
double operator_norm(const ComplexMatrix& c);
double operator_norm(const EpsMatrix& c);

/// norm * ((1 + (mu/norm)^n)^{1/n} - 1), rounded down; 0 when mu <= 0.
double eps_bound_from(double norm, double mu, std::size_t n);
/// Upper endpoint of the admissible perturbation for the n-th tensor power.
/// Throws NonPositiveMu when the product minimum found is <= 0.
double eps_bound(const EpsMatrix& c, BipartiteDims dims, std::size_t n, const SearchBudget& budget);

enum class SearchStatus { ViolationFound, NoViolationFound };

struct BlockPositivityVerdict {
  SearchStatus status = SearchStatus::NoViolationFound;
  /// Best product vectors seen; for ViolationFound they are the violation witness.
  ComplexVector witness_a;
  ComplexVector witness_b;
  double value = 0.0;
  /// True when the violation was confirmed in exact arithmetic.
  bool exact = false;

  bool violation() const noexcept { return status == SearchStatus::ViolationFound; }
};

/// One-sided refutation search for block positivity. ViolationFound is sound;
/// NoViolationFound is evidence only.
BlockPositivityVerdict block_positive_search(const EpsMatrix& c, BipartiteDims dims,
                                             const SearchBudget& budget);
BlockPositivityVerdict positive_map_search(const MapDecomposition& p, const SearchBudget& budget);
BlockPositivityVerdict n_tsp_search(const MapDecomposition& p, std::size_t n,
                                    const SearchBudget& budget, std::size_t max_dim = kDefaultMaxDim);
BlockPositivityVerdict n_tsp_search(const ChoiMatrix& c, std::size_t n, const SearchBudget& budget,
                                    std::size_t max_dim = kDefaultMaxDim);

/// Exact <a(x)b| C |a(x)b> for double vectors taken at their exact binary values.
EpsRational exact_product_value(const EpsMatrix& c, const ComplexVector& a, const ComplexVector& b);

}  // namespace halo
