#include "halo/choi.hpp"

#include <limits>

namespace halo {

namespace {

EpsComplex inverse_of(std::size_t d) { return EpsComplex(Rational(1, static_cast<unsigned long>(d))); }

// tr(B^T X) = sum_kl B_kl X_kl
EpsComplex pairing(const EpsMatrix& b, const EpsMatrix& x) {
  EpsComplex acc;
  const auto be = b.entries();
  const auto xe = x.entries();
  for (std::size_t k = 0; k < be.size(); ++k)
    if (!be[k].is_zero() && !xe[k].is_zero()) acc += be[k] * xe[k];
  return acc;
}

std::size_t checked_power(std::size_t base, std::size_t n, std::size_t cap) {
  std::size_t out = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (base != 0 && out > cap / base) throw ResourceLimit("dimension exceeds " + std::to_string(cap));
    out *= base;
  }
  return out;
}

}  // namespace

void MapDecomposition::validate() const {
  if (terms.empty()) throw DimensionMismatch("map decomposition has no terms");
  for (const auto& t : terms) {
    if (t.A.rows() != d_out || t.A.cols() != d_out) throw DimensionMismatch("A_i must be d_out x d_out");
    if (t.B.rows() != d_in || t.B.cols() != d_in) throw DimensionMismatch("B_i must be d_in x d_in");
  }
}

ChoiMatrix choi_from_decomposition(const MapDecomposition& p) {
  p.validate();
  EpsMatrix c(p.d_out * p.d_in, p.d_out * p.d_in);
  for (const auto& t : p.terms) c += kron(t.A, t.B);
  c *= inverse_of(p.d_in);
  return {std::move(c), {p.d_out, p.d_in}};
}

EpsMatrix apply_map(const MapDecomposition& p, const EpsMatrix& x) {
  p.validate();
  if (x.rows() != p.d_in || x.cols() != p.d_in) throw DimensionMismatch("map input must be d_in x d_in");
  EpsMatrix out(p.d_out, p.d_out);
  for (const auto& t : p.terms) {
    const EpsComplex w = pairing(t.B, x);
    if (!w.is_zero()) out += t.A * w;
  }
  return out;
}

EpsMatrix apply_choi(const ChoiMatrix& c, const EpsMatrix& x) {
  const auto [d_out, d_in] = c.dims;
  if (x.rows() != d_in || x.cols() != d_in) throw DimensionMismatch("map input must be d_in x d_in");
  // d_in * sum_{k,l} C[(a,k),(b,l)] X[k,l]
  EpsMatrix out(d_out, d_out);
  for (std::size_t a = 0; a < d_out; ++a)
    for (std::size_t b = 0; b < d_out; ++b) {
      EpsComplex acc;
      for (std::size_t k = 0; k < d_in; ++k)
        for (std::size_t l = 0; l < d_in; ++l) {
          const EpsComplex& e = c.matrix(a * d_in + k, b * d_in + l);
          if (!e.is_zero() && !x(k, l).is_zero()) acc += e * x(k, l);
        }
      out(a, b) = acc;
    }
  return out * EpsComplex(Rational(static_cast<unsigned long>(d_in)));
}

ChoiMatrix choi_tensor_power(const ChoiMatrix& c, std::size_t n, std::size_t max_dim) {
  if (n == 0) throw DimensionMismatch("tensor power needs n >= 1");
  const auto [d_out, d_in] = c.dims;
  const std::size_t out_n = checked_power(d_out, n, std::numeric_limits<std::size_t>::max());
  const std::size_t in_n = checked_power(d_in, n, std::numeric_limits<std::size_t>::max());
  checked_power(d_out * d_in, n, max_dim);
  const std::size_t dim = out_n * in_n;

  // Digits of a grouped index, factor k = 0 slowest.
  auto digits = [n](std::size_t idx, std::size_t base, std::vector<std::size_t>& out) {
    for (std::size_t k = n; k-- > 0;) {
      out[k] = idx % base;
      idx /= base;
    }
  };
  // Per-row local indices (o_k, i_k) -> o_k * d_in + i_k.
  std::vector<std::vector<std::size_t>> local(dim, std::vector<std::size_t>(n));
  std::vector<std::size_t> od(n), id(n);
  for (std::size_t r = 0; r < dim; ++r) {
    digits(r / in_n, d_out, od);
    digits(r % in_n, d_in, id);
    for (std::size_t k = 0; k < n; ++k) local[r][k] = od[k] * d_in + id[k];
  }
  EpsMatrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t s = 0; s < dim; ++s) {
      EpsComplex v(1);
      for (std::size_t k = 0; k < n && !v.is_zero(); ++k) {
        const EpsComplex& e = c.matrix(local[r][k], local[s][k]);
        if (e.is_zero()) v = EpsComplex();
        else v *= e;
      }
      m(r, s) = std::move(v);
    }
  return {std::move(m), {out_n, in_n}};
}

ChoiMatrix choi_tensor_power(const MapDecomposition& p, std::size_t n, std::size_t max_dim) {
  return choi_tensor_power(choi_from_decomposition(p), n, max_dim);
}

MapDecomposition decomposition_from_choi(const ChoiMatrix& c) {
  const auto [d_out, d_in] = c.dims;
  // R[(a,b),(k,l)] = d_in * C[(a,k),(b,l)] = sum_i vec(A_i) vec(B_i)^T
  EpsMatrix r(d_out * d_out, d_in * d_in);
  const EpsComplex scale(Rational(static_cast<unsigned long>(d_in)));
  for (std::size_t a = 0; a < d_out; ++a)
    for (std::size_t b = 0; b < d_out; ++b)
      for (std::size_t k = 0; k < d_in; ++k)
        for (std::size_t l = 0; l < d_in; ++l) {
          const EpsComplex& e = c.matrix(a * d_in + k, b * d_in + l);
          if (!e.is_zero()) r(a * d_out + b, k * d_in + l) = e * scale;
        }
  const auto [left, right] = rank_factorization(r);
  MapDecomposition p{d_in, d_out, {}};
  for (std::size_t i = 0; i < left.cols(); ++i) {
    EpsMatrix a(d_out, d_out), b(d_in, d_in);
    for (std::size_t x = 0; x < d_out * d_out; ++x) a(x / d_out, x % d_out) = left(x, i);
    for (std::size_t x = 0; x < d_in * d_in; ++x) b(x / d_in, x % d_in) = right(i, x);
    p.terms.push_back({std::move(a), std::move(b)});
  }
  if (p.terms.empty()) p.terms.push_back({EpsMatrix(d_out, d_out), EpsMatrix(d_in, d_in)});
  return p;
}

PsdVerdict is_cp(const ChoiMatrix& c) { return psd_check(c.matrix); }
PsdVerdict is_cocp(const ChoiMatrix& c) { return psd_check(partial_transpose(c.matrix, c.dims)); }
PsdVerdict is_cp(const MapDecomposition& p) { return is_cp(choi_from_decomposition(p)); }
PsdVerdict is_cocp(const MapDecomposition& p) { return is_cocp(choi_from_decomposition(p)); }

EbStatus eb_witness_check(const MapDecomposition& p) {
  for (const auto& t : p.terms) {
    if (!is_hermitian(t.A) || !is_hermitian(t.B)) return EbStatus::NotWitnessed;
    if (!psd_check(t.A).psd() || !psd_check(t.B).psd()) return EbStatus::NotWitnessed;
  }
  return EbStatus::Witnessed;
}

MapDecomposition compose_with_transpose(const MapDecomposition& p) {
  MapDecomposition q = p;
  for (auto& t : q.terms) t.A = transpose(t.A);
  return q;
}

MapDecomposition add_maps(const MapDecomposition& p, const MapDecomposition& q) {
  if (p.d_in != q.d_in || p.d_out != q.d_out) throw DimensionMismatch("summed maps differ in shape");
  MapDecomposition r = p;
  r.terms.insert(r.terms.end(), q.terms.begin(), q.terms.end());
  return r;
}

MapDecomposition scale_map(const MapDecomposition& p, const EpsComplex& c) {
  MapDecomposition r = p;
  for (auto& t : r.terms) t.A *= c;
  return r;
}

MapDecomposition tensor_maps(const MapDecomposition& p, const MapDecomposition& q) {
  MapDecomposition r{p.d_in * q.d_in, p.d_out * q.d_out, {}};
  r.terms.reserve(p.terms.size() * q.terms.size());
  for (const auto& s : p.terms)
    for (const auto& t : q.terms) r.terms.push_back({kron(s.A, t.A), kron(s.B, t.B)});
  return r;
}

MapDecomposition identity_map(std::size_t d) {
  MapDecomposition p{d, d, {}};
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l)
      p.terms.push_back({EpsMatrix::unit(d, k, l), EpsMatrix::unit(d, k, l)});
  return p;
}

MapDecomposition transposition_map(std::size_t d) {
  MapDecomposition p{d, d, {}};
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l)
      p.terms.push_back({EpsMatrix::unit(d, l, k), EpsMatrix::unit(d, k, l)});
  return p;
}

MapDecomposition depolarizing_map(std::size_t d) {
  return {d, d, {{EpsMatrix::identity(d), EpsMatrix::identity(d)}}};
}

}  // namespace halo
