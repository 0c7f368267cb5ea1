#pragma once

// Dense exact linear algebra over Rational or Fp: row reduction, kernels,
// determinants, inverses and characteristic polynomials.

#include "podforge/field.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace podforge {

template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Field field)
      : rows_(rows), cols_(cols), field_(field), data_(rows * cols, scalar<K>(0, field)) {}

  /// Rows must all have the same length.
  static Matrix from_rows(const std::vector<std::vector<K>>& rows, std::size_t cols, Field field) {
    Matrix m(rows.size(), cols, field);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("matrix: ragged rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix identity(std::size_t n, Field field) {
    Matrix m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = scalar<K>(1, field);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Field field() const { return field_; }

  K& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<K> row(std::size_t i) const { return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_}; }

  Matrix transpose() const {
    Matrix t(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix: shape mismatch in product");
    Matrix c(a.rows_, b.cols_, a.field_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const K& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix: shape mismatch in sum");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }

  Matrix scaled(const K& s) const {
    Matrix c = *this;
    for (auto& v : c.data_) v *= s;
    return c;
  }

  std::vector<K> apply(const std::vector<K>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix: vector length mismatch");
    std::vector<K> out(rows_, scalar<K>(0, field_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const K& v) { return v.is_zero(); });
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Field field_;
  std::vector<K> data_;
};

/// Reduced row echelon form in place; returns pivot columns.
template <class K>
std::vector<std::size_t> rref(Matrix<K>& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c).is_zero()) ++p;
    if (p == a.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    }
    const K inv = a(r, c).inverse();
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      const K f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) {
        if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class K>
std::size_t rank(Matrix<K> a) {
  return rref(a).size();
}

/// Basis of the right kernel, one vector per free column; empty if injective.
template <class K>
std::vector<std::vector<K>> kernel(Matrix<K> a) {
  const auto pivots = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<K>> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<K> v(a.cols(), scalar<K>(0, a.field()));
    v[f] = scalar<K>(1, a.field());
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Kernel of a matrix given as coefficient rows.
template <class K>
std::vector<std::vector<K>> matrix_kernel(const std::vector<std::vector<K>>& rows, std::size_t cols, Field field) {
  return kernel(Matrix<K>::from_rows(rows, cols, field));
}

/// Row space basis in reduced echelon form (canonical for the subspace).
template <class K>
std::vector<std::vector<K>> row_space(const std::vector<std::vector<K>>& rows, std::size_t cols, Field field) {
  auto m = Matrix<K>::from_rows(rows, cols, field);
  const auto pivots = rref(m);
  std::vector<std::vector<K>> out;
  for (std::size_t r = 0; r < pivots.size(); ++r) out.push_back(m.row(r));
  return out;
}

template <class K>
K determinant(Matrix<K> a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix: determinant of non-square matrix");
  K det = scalar<K>(1, a.field());
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) return scalar<K>(0, a.field());
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    const K inv = a(c, c).inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      const K f = a(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

/// Throws if singular.
template <class K>
Matrix<K> inverse(const Matrix<K>& a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("matrix: inverse of non-square matrix");
  Matrix<K> aug(n, 2 * n, a.field());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = scalar<K>(1, a.field());
  }
  const auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw std::domain_error("matrix: singular");
  Matrix<K> inv(n, n, a.field());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// Characteristic polynomial det(t*I - A), coefficients in increasing degree
/// (monic, length n+1). Hessenberg reduction then the standard recurrence.
template <class K>
std::vector<K> charpoly(Matrix<K> a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("matrix: charpoly of non-square matrix");
  const Field f = a.field();
  const K zero = scalar<K>(0, f);
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t p = m;
    while (p < n && a(p, m - 1).is_zero()) ++p;
    if (p == n) continue;
    if (p != m) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(m, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(a(i, p), a(i, m));
    }
    const K inv = a(m, m - 1).inverse();
    for (std::size_t i = m + 1; i < n; ++i) {
      if (a(i, m - 1).is_zero()) continue;
      const K u = a(i, m - 1) * inv;
      for (std::size_t j = 0; j < n; ++j) a(i, j) -= u * a(m, j);
      for (std::size_t j = 0; j < n; ++j) a(j, m) += u * a(j, i);
    }
  }
  // p_k = charpoly of leading k x k block.
  std::vector<std::vector<K>> p(n + 1);
  p[0] = {scalar<K>(1, f)};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<K> next(k + 1, zero);
    for (std::size_t i = 0; i < p[k - 1].size(); ++i) {
      next[i + 1] += p[k - 1][i];
      next[i] -= a(k - 1, k - 1) * p[k - 1][i];
    }
    K prod = scalar<K>(1, f);
    for (std::size_t i = 1; i < k; ++i) {
      prod *= a(k - i, k - i - 1);
      if (prod.is_zero()) break;
      const K c = prod * a(k - i - 1, k - 1);
      for (std::size_t j = 0; j < p[k - i - 1].size(); ++j) next[j] -= c * p[k - i - 1][j];
    }
    p[k] = std::move(next);
  }
  return p[n];
}

}  // namespace podforge
