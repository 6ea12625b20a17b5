#include "halo/hypermat.hpp"

#include <utility>

namespace halo {

namespace {

struct EliminationStep {
  std::size_t pivot;
  EpsComplex diag;
  std::vector<std::pair<std::size_t, EpsComplex>> row;  // S(pivot, j) over the then-active j
};

// Undo the Schur-complement reductions: a vector on the reduced space becomes a
// full-space vector with the same quadratic-form value.
EpsVector lift(EpsVector v, const std::vector<EliminationStep>& steps) {
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    EpsComplex acc;
    for (const auto& [j, s] : it->row)
      if (!v[j].is_zero()) acc += s * v[j];
    v[it->pivot] = -(acc / it->diag);
  }
  return v;
}

PsdVerdict not_psd(const EpsMatrix& m, EpsVector v) {
  const EpsComplex value = sandwich(v, m, v);
  if (!value.is_real() || value.re().sign() != Sign::negative)
    throw Error("psd_check: witness failed exact re-verification");
  PsdVerdict out;
  out.status = PsdStatus::NotPSD;
  out.value = value.re();
  out.witness = std::move(v);
  return out;
}

struct Rref {
  EpsMatrix r;
  std::vector<std::size_t> pivot_cols;
};

Rref rref(EpsMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    const EpsComplex inv = m(row, col).inverse();
    for (std::size_t j = col; j < m.cols(); ++j)
      if (!m(row, j).is_zero()) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      const EpsComplex f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

}  // namespace

PsdVerdict psd_check(const EpsMatrix& m) {
  if (!is_hermitian(m)) throw NotHermitian();
  const std::size_t n = m.rows();
  EpsMatrix s = m;
  std::vector<bool> active(n, true);
  std::vector<EliminationStep> steps;

  for (;;) {
    std::optional<std::size_t> pivot;
    for (std::size_t j = 0; j < n; ++j) {
      if (!active[j]) continue;
      const Sign sg = s(j, j).re().sign();
      if (sg == Sign::negative) return not_psd(m, lift(basis_vector(n, j), steps));
      if (sg == Sign::positive && !pivot) pivot = j;
    }
    // Zero diagonal with a nonzero off-diagonal entry in its row.
    for (std::size_t j = 0; j < n; ++j) {
      if (!active[j] || !s(j, j).is_zero()) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == j || !active[k] || s(j, k).is_zero()) continue;
        // v = e_k + c e_j, c = -(S_kk + 1) S_jk / |S_jk|^2 gives <v,Sv> = -S_kk - 2.
        const EpsComplex c = -(s(k, k) + EpsComplex(1)) * s(j, k) / EpsComplex(s(j, k).norm2());
        EpsVector v(n);
        v[k] = EpsComplex(1);
        v[j] = c;
        return not_psd(m, lift(std::move(v), steps));
      }
    }
    if (!pivot) break;

    const std::size_t p = *pivot;
    EliminationStep step{p, s(p, p), {}};
    for (std::size_t j = 0; j < n; ++j)
      if (active[j] && j != p && !s(p, j).is_zero()) step.row.emplace_back(j, s(p, j));
    const EpsComplex inv = s(p, p).inverse();
    for (const auto& [i, sip_conj] : step.row) {
      const EpsComplex f = conj(sip_conj) * inv;  // S(i,p) / S(p,p)
      for (const auto& [j, spj] : step.row) s(i, j) -= f * spj;
    }
    active[p] = false;
    steps.push_back(std::move(step));
  }
  return {};
}

std::size_t rank(const EpsMatrix& m) { return rref(m).pivot_cols.size(); }

std::vector<EpsVector> kernel_basis(const EpsMatrix& m) {
  const Rref red = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : red.pivot_cols) is_pivot[c] = true;
  std::vector<EpsVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    EpsVector v(m.cols());
    v[f] = EpsComplex(1);
    for (std::size_t i = 0; i < red.pivot_cols.size(); ++i) v[red.pivot_cols[i]] = -red.r(i, f);
    if (!is_zero_vector(m * v)) throw Error("kernel_basis: vector failed exact re-verification");
    basis.push_back(std::move(v));
  }
  return basis;
}

RankFactorization rank_factorization(const EpsMatrix& m) {
  const Rref red = rref(m);
  const std::size_t r = red.pivot_cols.size();
  EpsMatrix left(m.rows(), r);
  EpsMatrix right(r, m.cols());
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t i = 0; i < m.rows(); ++i) left(i, k) = m(i, red.pivot_cols[k]);
    for (std::size_t j = 0; j < m.cols(); ++j) right(k, j) = red.r(k, j);
  }
  return {std::move(left), std::move(right)};
}

bool is_product_vector(const EpsVector& v, BipartiteDims dims) {
  if (v.size() != dims.total()) throw DimensionMismatch("product-vector test");
  return rank(reshape(v, dims.dA, dims.dB)) <= 1;
}

EpsMatrix flip_operator(std::size_t d) {
  EpsMatrix f(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) f(i * d + j, j * d + i) = EpsComplex(1);
  return f;
}

EpsMatrix max_ent_unnormalized(std::size_t d) {
  EpsMatrix m(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i * d + i, j * d + j) = EpsComplex(1);
  return m;
}

EpsMatrix max_ent_projector(std::size_t d) {
  return max_ent_unnormalized(d) * EpsComplex(Rational(1, static_cast<unsigned long>(d)));
}

EpsVector basis_vector(std::size_t n, std::size_t k) {
  EpsVector v(n);
  v.at(k) = EpsComplex(1);
  return v;
}

EpsMatrix shadow(const EpsMatrix& m) {
  return map_entries<EpsComplex>(m, [](const EpsComplex& z) {
    const auto s = shadow(z);
    return EpsComplex(EpsRational(s.re), EpsRational(s.im));
  });
}

EpsMatrix eval_at(const EpsMatrix& m, const Rational& t) {
  return map_entries<EpsComplex>(m, [&](const EpsComplex& z) { return eval_at(z, t); });
}

ComplexMatrix to_complex(const EpsMatrix& m) {
  return map_entries<std::complex<double>>(m, [](const EpsComplex& z) {
    const auto s = shadow(z);
    return std::complex<double>(s.re.get_d(), s.im.get_d());
  });
}

ComplexVector to_complex(const EpsVector& v) {
  ComplexVector out;
  out.reserve(v.size());
  for (const auto& z : v) {
    const auto s = shadow(z);
    out.emplace_back(s.re.get_d(), s.im.get_d());
  }
  return out;
}

bool is_finite(const EpsMatrix& m) {
  for (const auto& z : m.entries())
    if (!z.re().is_finite() || !z.im().is_finite()) return false;
  return true;
}

bool has_rational_entries(const EpsMatrix& m) {
  for (const auto& z : m.entries())
    if (!z.is_rational()) return false;
  return true;
}

EpsMatrix from_complex_exact(const ComplexMatrix& m) {
  return map_entries<EpsComplex>(m, [](const std::complex<double>& z) {
    return EpsComplex(EpsRational(rational_from_double(z.real())),
                      EpsRational(rational_from_double(z.imag())));
  });
}

EpsVector from_complex_exact(const ComplexVector& v) {
  EpsVector out;
  out.reserve(v.size());
  for (const auto& z : v)
    out.emplace_back(EpsRational(rational_from_double(z.real())),
                     EpsRational(rational_from_double(z.imag())));
  return out;
}

}  // namespace halo
