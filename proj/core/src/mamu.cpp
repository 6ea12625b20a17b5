#include "halo/mamu.hpp"

#include <cmath>
#include <random>

namespace halo {

namespace {

std::size_t checked_pow(std::size_t base, std::size_t n, std::size_t cap, const char* what) {
  std::size_t out = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (base != 0 && out > cap / base)
      throw ResourceLimit(std::string(what) + " exceeds " + std::to_string(cap));
    out *= base;
  }
  return out;
}

template <class T>
T from_eps(const EpsComplex& z);
template <>
Rational from_eps<Rational>(const EpsComplex& z) {
  return z.re().to_rational();
}
template <>
EpsComplex from_eps<EpsComplex>(const EpsComplex& z) {
  return z;
}

EpsComplex to_eps(const Rational& q) { return EpsComplex(q); }
EpsComplex to_eps(const EpsComplex& z) { return z; }

template <class T>
Matrix<T> convert(const EpsMatrix& m) {
  return map_entries<T>(m, [](const EpsComplex& z) { return from_eps<T>(z); });
}

bool all_rational_real(const MapDecomposition& p) {
  for (const auto& t : p.terms)
    for (const auto& z : t.B.entries())
      if (!z.is_real() || !z.is_rational()) return false;
  return true;
}

// values[tuple] = tr(M_{i_1} ... M_{i_n}) by depth-first search over tuples with
// the prefix product carried down the recursion.
template <class T>
class TupleTraces {
 public:
  TupleTraces(const std::vector<Matrix<T>>& mats, std::size_t n) : mats_(mats), n_(n) {}

  std::vector<T> run(std::size_t count) {
    out_.assign(count, T(0));
    if (mats_.empty()) return out_;
    visit(0, Matrix<T>::identity(mats_.front().rows()), 0);
    return std::move(out_);
  }

 private:
  void visit(std::size_t depth, const Matrix<T>& prefix, std::size_t idx) {
    for (std::size_t i = 0; i < mats_.size(); ++i) {
      const std::size_t next = idx * mats_.size() + i;
      if (depth + 1 == n_) out_[next] = trace_of_product(prefix, mats_[i]);
      else visit(depth + 1, prefix * mats_[i], next);
    }
  }

  static T trace_of_product(const Matrix<T>& a, const Matrix<T>& b) {
    T acc(0);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (!is_zero(a(i, j)) && !is_zero(b(j, i))) acc += a(i, j) * b(j, i);
    return acc;
  }

  const std::vector<Matrix<T>>& mats_;
  std::size_t n_;
  std::vector<T> out_;
};

// coef(tuple) = sum over x, y in supp(chi_n) of prod_k B_{i_k}[x_k, y_k].
template <class T>
std::vector<T> support_sum(const std::vector<Matrix<T>>& bs, std::size_t d, std::size_t n, std::size_t count) {
  const std::size_t support = checked_pow(d, n, std::numeric_limits<std::size_t>::max(), "support");
  // site[j][k] = j_k d + j_{k+1 mod n} for the ring labelling j
  std::vector<std::vector<std::size_t>> site(support, std::vector<std::size_t>(n));
  for (std::size_t j = 0; j < support; ++j) {
    const auto labels = tuple_from_index(j, d, n);
    for (std::size_t k = 0; k < n; ++k) site[j][k] = labels[k] * d + labels[(k + 1) % n];
  }
  const std::size_t r = bs.size();
  std::vector<T> out(count, T(0));
  for (std::size_t idx = 0; idx < count; ++idx) {
    const auto tuple = tuple_from_index(idx, r, n);
    T acc(0);
    for (std::size_t x = 0; x < support; ++x)
      for (std::size_t y = 0; y < support; ++y) {
        T prod = bs[tuple[0]](site[x][0], site[y][0]);
        for (std::size_t k = 1; k < n && !is_zero(prod); ++k) prod *= bs[tuple[k]](site[x][k], site[y][k]);
        if (!is_zero(prod)) acc += prod;
      }
    out[idx] = std::move(acc);
  }
  return out;
}

template <class T>
std::vector<EpsComplex> coefficients(const MapDecomposition& p, std::size_t d, std::size_t n,
                                     std::size_t count, MamuMethod method) {
  std::vector<Matrix<T>> mats;
  for (const auto& t : p.terms) {
    Matrix<T> b = convert<T>(t.B);
    mats.push_back(method == MamuMethod::Transfer ? mamu_reshuffle(b, d) : std::move(b));
  }
  std::vector<T> raw = method == MamuMethod::Transfer ? TupleTraces<T>(mats, n).run(count)
                                                      : support_sum(mats, d, n, count);
  std::vector<EpsComplex> out;
  out.reserve(raw.size());
  for (const auto& v : raw) out.push_back(to_eps(v));
  return out;
}

bool is_diagonal(const EpsMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && !m(i, j).is_zero()) return false;
  return true;
}

MamuPower dense_power(const MapDecomposition& p, std::size_t d, std::size_t n, std::size_t count,
                      std::size_t max_dim) {
  const std::size_t out_dim = checked_pow(p.d_out, n, max_dim, "output dimension");
  const EpsMatrix chi = mamu_projector(d, n, max_dim);
  const std::size_t r = p.terms.size();
  MamuPower mp;
  mp.dim = out_dim;
  mp.dense = EpsMatrix(out_dim, out_dim);
  for (std::size_t idx = 0; idx < count; ++idx) {
    const auto tuple = tuple_from_index(idx, r, n);
    EpsMatrix a = p.terms[tuple[0]].A;
    EpsMatrix b = p.terms[tuple[0]].B;
    for (std::size_t k = 1; k < n; ++k) {
      a = kron(a, p.terms[tuple[k]].A);
      b = kron(b, p.terms[tuple[k]].B);
    }
    // tr(B^T chi) = sum_xy B[x,y] chi[x,y]
    EpsComplex coef;
    const auto be = b.entries();
    const auto ce = chi.entries();
    for (std::size_t k = 0; k < be.size(); ++k)
      if (!ce[k].is_zero() && !be[k].is_zero()) coef += be[k] * ce[k];
    if (!coef.is_zero()) mp.dense += a * coef;
  }
  return mp;
}

}  // namespace

void MpoTensor::validate() const {
  if (matrices.size() != t || t == 0) throw DimensionMismatch("MPO needs t >= 1 matrices");
  for (const auto& m : matrices)
    if (m.rows() != s || m.cols() != s) throw DimensionMismatch("MPO matrices must be s x s");
}

std::size_t tuple_index(const std::vector<std::size_t>& tuple, std::size_t base) {
  std::size_t idx = 0;
  for (auto i : tuple) idx = idx * base + i;
  return idx;
}

std::vector<std::size_t> tuple_from_index(std::size_t index, std::size_t base, std::size_t n) {
  std::vector<std::size_t> t(n);
  for (std::size_t k = n; k-- > 0;) {
    t[k] = index % base;
    index /= base;
  }
  return t;
}

MamuDiagonal tau_n(const MpoTensor& c, std::size_t n, std::size_t max_entries) {
  c.validate();
  if (n == 0) throw DimensionMismatch("tau_n needs n >= 1");
  const std::size_t count = checked_pow(c.t, n, max_entries, "number of index tuples");
  return {c.t, n, TupleTraces<Rational>(c.matrices, n).run(count)};
}

EpsVector mamu_vector(std::size_t d, std::size_t n, std::size_t max_dim) {
  if (n == 0) throw DimensionMismatch("MaMu tensor needs n >= 1");
  const std::size_t dim = checked_pow(d * d, n, max_dim, "MaMu dimension");
  EpsVector v(dim);
  const std::size_t support = checked_pow(d, n, max_dim, "MaMu support");
  for (std::size_t j = 0; j < support; ++j) {
    const auto labels = tuple_from_index(j, d, n);
    std::size_t idx = 0;
    for (std::size_t k = 0; k < n; ++k) idx = idx * d * d + labels[k] * d + labels[(k + 1) % n];
    v[idx] += EpsComplex(1);
  }
  return v;
}

EpsMatrix mamu_projector(std::size_t d, std::size_t n, std::size_t max_dim) {
  const EpsVector v = mamu_vector(d, n, max_dim);
  return EpsMatrix::outer(v, v);
}

std::size_t bond_root(std::size_t s) {
  const auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(s))));
  for (std::size_t c = (r > 0 ? r - 1 : 0); c <= r + 1; ++c)
    if (c * c == s) return c;
  throw NotPerfectSquare(s);
}

MapDecomposition reduce_mpo_to_map(const MpoTensor& c) {
  c.validate();
  const std::size_t d = bond_root(c.s);
  MapDecomposition p{c.s, c.t, {}};
  for (std::size_t i = 0; i < c.t; ++i) {
    const EpsMatrix ci = map_entries<EpsComplex>(c.matrices[i], [](const Rational& q) { return EpsComplex(q); });
    p.terms.push_back({EpsMatrix::unit(c.t, i, i), mamu_reshuffle(ci, d)});
  }
  return p;
}

EpsComplex MamuPower::entry(std::size_t i, std::size_t j) const {
  if (!diagonal_only) return dense(i, j);
  return i == j ? diagonal.at(i) : EpsComplex();
}

MamuPower apply_power_to_mamu(const MapDecomposition& p, std::size_t n, MamuMethod method,
                              std::size_t max_dim, std::size_t max_entries) {
  p.validate();
  if (n == 0) throw DimensionMismatch("tensor power needs n >= 1");
  const std::size_t d = bond_root(p.d_in);
  const std::size_t count = checked_pow(p.terms.size(), n, max_entries, "number of index tuples");
  if (method == MamuMethod::Dense) return dense_power(p, d, n, count, max_dim);

  const std::vector<EpsComplex> coef = all_rational_real(p) ? coefficients<Rational>(p, d, n, count, method)
                                                            : coefficients<EpsComplex>(p, d, n, count, method);
  const std::size_t r = p.terms.size();
  bool diagonal = true;
  for (const auto& t : p.terms) diagonal = diagonal && is_diagonal(t.A);

  MamuPower mp;
  if (diagonal) {
    mp.dim = checked_pow(p.d_out, n, max_entries, "output diagonal");
    mp.diagonal_only = true;
    mp.diagonal.assign(mp.dim, EpsComplex());
    // nonzero diagonal entries of each A_i
    std::vector<std::vector<std::pair<std::size_t, EpsComplex>>> nz(r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t o = 0; o < p.d_out; ++o)
        if (!p.terms[i].A(o, o).is_zero()) nz[i].emplace_back(o, p.terms[i].A(o, o));
    for (std::size_t idx = 0; idx < count; ++idx) {
      if (coef[idx].is_zero()) continue;
      const auto tuple = tuple_from_index(idx, r, n);
      std::vector<std::pair<std::size_t, EpsComplex>> acc{{0, coef[idx]}};
      for (std::size_t k = 0; k < n; ++k) {
        std::vector<std::pair<std::size_t, EpsComplex>> next;
        for (const auto& [pos, val] : acc)
          for (const auto& [o, a] : nz[tuple[k]]) next.emplace_back(pos * p.d_out + o, val * a);
        acc = std::move(next);
      }
      for (const auto& [pos, val] : acc) mp.diagonal[pos] += val;
    }
    return mp;
  }
  mp.dim = checked_pow(p.d_out, n, max_dim, "output dimension");
  mp.dense = EpsMatrix(mp.dim, mp.dim);
  for (std::size_t idx = 0; idx < count; ++idx) {
    if (coef[idx].is_zero()) continue;
    const auto tuple = tuple_from_index(idx, r, n);
    EpsMatrix a = p.terms[tuple[0]].A;
    for (std::size_t k = 1; k < n; ++k) a = kron(a, p.terms[tuple[k]].A);
    mp.dense += a * coef[idx];
  }
  return mp;
}

ReductionCheck verify_reduction(const MpoTensor& c, const MapDecomposition& p, std::size_t n_max,
                                std::size_t max_dim) {
  c.validate();
  const std::size_t d = bond_root(c.s);
  ReductionCheck out;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const MamuDiagonal tau = tau_n(c, n);
    auto compare = [&](const MamuPower& mp, const char* path) {
      if (mp.dim != tau.values.size()) {
        out.holds = false;
        out.failed_n = n;
        out.failed_path = path;
        return false;
      }
      for (std::size_t i = 0; i < mp.dim; ++i)
        for (std::size_t j = 0; j < mp.dim; ++j) {
          if (!mp.diagonal_only && i != j && !mp.dense(i, j).is_zero()) {
            out.holds = false;
          } else if (i == j && !(mp.entry(i, i) == EpsComplex(tau.values[i]))) {
            out.holds = false;
          }
          if (!out.holds) {
            out.failed_n = n;
            out.failed_index = i;
            out.failed_path = path;
            return false;
          }
          if (mp.diagonal_only) break;
        }
      return true;
    };
    if (!compare(apply_power_to_mamu(p, n, MamuMethod::SupportSum, max_dim), "support-sum")) return out;
    if (n <= 2 && d <= 3) {
      if (!compare(apply_power_to_mamu(p, n, MamuMethod::Dense, max_dim), "dense")) return out;
      out.dense_checked = true;
    }
    out.n_checked = n;
  }
  return out;
}

ReductionCheck verify_reduction(const MpoTensor& c, std::size_t n_max, std::size_t max_dim) {
  return verify_reduction(c, reduce_mpo_to_map(c), n_max, max_dim);
}

LoopResult bounded_tsp_mamu(const MapDecomposition& p, std::size_t n_max, std::size_t max_dim,
                            std::size_t max_entries) {
  LoopResult out;
  out.n_max = n_max;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const MamuPower mp = apply_power_to_mamu(p, n, MamuMethod::Transfer, max_dim, max_entries);
    if (mp.diagonal_only) {
      for (std::size_t i = 0; i < mp.dim; ++i) {
        const EpsComplex& v = mp.diagonal[i];
        if (!v.is_real()) throw NotHermitian("P^n(chi_n)");
        if (v.re().sign() != Sign::negative) continue;
        out.violation = true;
        out.n = n;
        out.tuple = tuple_from_index(i, p.d_out, n);
        out.witness = basis_vector(mp.dim, i);
        out.value = v.re();
        return out;
      }
      continue;
    }
    PsdVerdict v = psd_check(mp.dense);
    if (!v.psd()) {
      out.violation = true;
      out.n = n;
      out.witness = std::move(v.witness);
      out.value = std::move(v.value);
      return out;
    }
  }
  return out;
}

LoopResult bounded_positive_mpo(const MpoTensor& c, std::size_t n_max, std::size_t max_entries) {
  LoopResult out;
  out.n_max = n_max;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const MamuDiagonal tau = tau_n(c, n, max_entries);
    for (std::size_t i = 0; i < tau.values.size(); ++i) {
      if (sgn(tau.values[i]) >= 0) continue;
      out.violation = true;
      out.n = n;
      out.tuple = tuple_from_index(i, c.t, n);
      out.value = EpsRational(tau.values[i]);
      return out;
    }
  }
  return out;
}

MpoTensor random_mpo(std::size_t s, std::size_t t, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-3, 3);
  std::uniform_int_distribution<long> den(1, 3);
  MpoTensor c{s, t, {}};
  for (std::size_t i = 0; i < t; ++i) {
    RationalMatrix m(s, s);
    for (auto& x : m.entries()) {
      x = Rational(num(rng), den(rng));
      x.canonicalize();
    }
    c.matrices.push_back(std::move(m));
  }
  return c;
}

}  // namespace halo
