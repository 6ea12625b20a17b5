#pragma once

#include "halo/eps_complex.hpp"
#include "halo/errors.hpp"

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace halo {

inline Rational conj(const Rational& q) { return q; }
inline bool is_zero(const Rational& q) { return q == 0; }
inline std::complex<double> conj(const std::complex<double>& z) { return std::conj(z); }
inline bool is_zero(const std::complex<double>& z) { return z == 0.0; }

/// The split d = dA * dB of a bipartite space; the left factor is the slow index.
struct BipartiteDims {
  std::size_t dA = 1;
  std::size_t dB = 1;
  std::size_t total() const noexcept { return dA * dB; }
  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;
};

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) throw DimensionMismatch("entry count != rows*cols");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) : rows_(rows.size()) {
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionMismatch("ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix diagonal(const std::vector<T>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  /// E_ij of size n.
  static Matrix unit(std::size_t n, std::size_t i, std::size_t j) {
    Matrix m(n, n);
    m(i, j) = T(1);
    return m;
  }
  /// |v><w|
  static Matrix outer(const std::vector<T>& v, const std::vector<T>& w) {
    Matrix m(v.size(), w.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (is_zero(v[i])) continue;
      for (std::size_t j = 0; j < w.size(); ++j) m(i, j) = v[i] * conj(w[j]);
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<T> entries() noexcept { return data_; }
  std::span<const T> entries() const noexcept { return data_; }

  Matrix& operator+=(const Matrix& rhs) {
    require_same_shape(rhs);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& rhs) {
    require_same_shape(rhs);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& c) {
    for (auto& x : data_) x *= c;
    return *this;
  }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.data_) x = -x;
    return r;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& c) { return a *= c; }
  friend Matrix operator*(const T& c, Matrix a) { return a *= c; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& x = a(i, k);
        if (is_zero(x)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!is_zero(b(k, j))) r(i, j) += x * b(k, j);
      }
    return r;
  }
  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.cols_ != v.size()) throw DimensionMismatch("matrix-vector product");
    std::vector<T> r(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j)
        if (!is_zero(a(i, j)) && !is_zero(v[j])) r[i] += a(i, j) * v[j];
    return r;
  }
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  void require_same_shape(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
using Vector = std::vector<T>;

template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const T& x = a(i, j);
      if (is_zero(x)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (!is_zero(b(k, l))) r(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
    }
  return r;
}

template <class T>
Vector<T> kron(const Vector<T>& a, const Vector<T>& b) {
  Vector<T> r(a.size() * b.size(), T(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!is_zero(a[i]))
      for (std::size_t k = 0; k < b.size(); ++k) r[i * b.size() + k] = a[i] * b[k];
  return r;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& m) {
  Matrix<T> r(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = m(i, j);
  return r;
}

template <class T>
Matrix<T> dagger(const Matrix<T>& m) {
  Matrix<T> r(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = conj(m(i, j));
  return r;
}

template <class T>
T trace(const Matrix<T>& m) {
  if (!m.is_square()) throw DimensionMismatch("trace of non-square matrix");
  T t(0);
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

template <class T>
bool is_hermitian(const Matrix<T>& m) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      if (!(m(i, j) == conj(m(j, i)))) return false;
  return true;
}

/// <ij| M^{T_B} |kl> = <il| M |kj>.
template <class T>
Matrix<T> partial_transpose(const Matrix<T>& m, BipartiteDims dims) {
  const std::size_t n = dims.total();
  if (m.rows() != n || m.cols() != n) throw DimensionMismatch("partial transpose");
  Matrix<T> r(n, n);
  for (std::size_t i = 0; i < dims.dA; ++i)
    for (std::size_t j = 0; j < dims.dB; ++j)
      for (std::size_t k = 0; k < dims.dA; ++k)
        for (std::size_t l = 0; l < dims.dB; ++l)
          r(i * dims.dB + j, k * dims.dB + l) = m(i * dims.dB + l, k * dims.dB + j);
  return r;
}

enum class Subsystem { A, B };

/// Traces out the named factor.
template <class T>
Matrix<T> partial_trace(const Matrix<T>& m, BipartiteDims dims, Subsystem traced) {
  const std::size_t n = dims.total();
  if (m.rows() != n || m.cols() != n) throw DimensionMismatch("partial trace");
  if (traced == Subsystem::B) {
    Matrix<T> r(dims.dA, dims.dA);
    for (std::size_t i = 0; i < dims.dA; ++i)
      for (std::size_t k = 0; k < dims.dA; ++k)
        for (std::size_t j = 0; j < dims.dB; ++j) r(i, k) += m(i * dims.dB + j, k * dims.dB + j);
    return r;
  }
  Matrix<T> r(dims.dB, dims.dB);
  for (std::size_t j = 0; j < dims.dB; ++j)
    for (std::size_t l = 0; l < dims.dB; ++l)
      for (std::size_t i = 0; i < dims.dA; ++i) r(j, l) += m(i * dims.dB + j, i * dims.dB + l);
  return r;
}

/// Row-major reshape of a vector into rows x cols.
template <class T>
Matrix<T> reshape(const Vector<T>& v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols) throw DimensionMismatch("reshape");
  return Matrix<T>(rows, cols, v);
}

/// <v| M |w>
template <class T>
T sandwich(const Vector<T>& v, const Matrix<T>& m, const Vector<T>& w) {
  const Vector<T> mw = m * w;
  T acc(0);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) acc += conj(v[i]) * mw[i];
  return acc;
}

template <class T>
bool is_zero_vector(const Vector<T>& v) {
  for (const auto& x : v)
    if (!is_zero(x)) return false;
  return true;
}

template <class U, class T, class F>
Matrix<U> map_entries(const Matrix<T>& m, F&& f) {
  std::vector<U> out;
  out.reserve(m.rows() * m.cols());
  for (const auto& x : m.entries()) out.push_back(f(x));
  return Matrix<U>(m.rows(), m.cols(), std::move(out));
}

}  // namespace halo
