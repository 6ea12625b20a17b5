#include "verify/oracles.hpp"

#include <random>

namespace halo::verify {

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

EpsPolynomial small_poly(std::mt19937_64& rng, int degree) {
  std::vector<Rational> c;
  for (int k = 0; k <= degree; ++k) c.emplace_back(pick(rng, -4, 4), pick(rng, 1, 4));
  return EpsPolynomial(std::move(c));
}

EpsComplex small_entry(std::mt19937_64& rng, bool real) {
  EpsRational re(small_poly(rng, pick(rng, 0, 1)), EpsPolynomial(Rational(1)));
  if (real || pick(rng, 0, 2) == 0) return re;
  return {re, EpsRational(Rational(pick(rng, -2, 2)))};
}

}  // namespace

EpsRational random_eps_rational(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  EpsPolynomial den = small_poly(rng, pick(rng, 0, 2));
  while (den.is_zero()) den = small_poly(rng, pick(rng, 0, 2));
  return EpsRational(small_poly(rng, pick(rng, 0, 2)), den);
}

EpsMatrix random_hermitian(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int kind = pick(rng, 0, 3);
  if (kind == 0) {
    EpsMatrix h(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      h(i, i) = small_entry(rng, true);
      for (std::size_t j = i + 1; j < dim; ++j) {
        h(i, j) = small_entry(rng, false);
        h(j, i) = conj(h(i, j));
      }
    }
    return h;
  }
  // G G^dagger, rank-deficient when G has fewer columns than rows
  const std::size_t cols = static_cast<std::size_t>(pick(rng, 1, static_cast<int>(dim)));
  EpsMatrix g(dim, cols);
  for (auto& z : g.entries()) z = small_entry(rng, false);
  EpsMatrix h = g * dagger(g);
  if (kind == 2) {
    // push one diagonal entry down by an infinitesimal or a rational
    const std::size_t i = static_cast<std::size_t>(pick(rng, 0, static_cast<int>(dim) - 1));
    const EpsRational delta = pick(rng, 0, 1) == 0 ? EpsRational::eps() * EpsRational::eps()
                                                    : EpsRational(Rational(pick(rng, 1, 3), 2));
    h(i, i) -= EpsComplex(delta);
  }
  return h;
}

EpsComplex determinant(const EpsMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  EpsComplex det;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    EpsMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    const EpsComplex term = m(0, j) * determinant(minor);
    if (j % 2 == 0)
      det += term;
    else
      det -= term;
  }
  return det;
}

bool psd_by_principal_minors(const EpsMatrix& m) {
  const std::size_t n = m.rows();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) idx.push_back(i);
    EpsMatrix sub(idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c) sub(r, c) = m(idx[r], idx[c]);
    if (determinant(sub).re().sign() == Sign::negative) return false;
  }
  return true;
}

}  // namespace halo::verify
