#pragma once

// Dense linear algebra over an exact field (Rational or RatFunc).

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "diffalg/errors.hpp"
#include "diffalg/rational.hpp"

namespace diffalg {

template <class F>
inline bool field_is_zero(const F& x) {
  return is_zero(x);
}

template <class F>
inline F field_inverse(const F& x) {
  return F(F(1) / x);
}

template <class F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<F>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows[0].size();
    Matrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw Error(Errc::DimensionMismatch, "ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static Matrix from_columns(const std::vector<std::vector<F>>& cols, std::size_t nrows) {
    Matrix m(nrows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < nrows; ++i) m(i, j) = cols[j].at(i);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<F> row(std::size_t i) const {
    return std::vector<F>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<F> column(std::size_t j) const {
    std::vector<F> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!field_is_zero(x)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    check_same(a, b);
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    check_same(a, b);
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(Errc::DimensionMismatch, "matrix product shape");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& x = a(i, k);
        if (field_is_zero(x)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!field_is_zero(b(k, j))) r(i, j) += x * b(k, j);
      }
    return r;
  }
  friend Matrix operator*(const F& c, Matrix a) {
    for (auto& x : a.data_) x *= c;
    return a;
  }
  friend std::vector<F> operator*(const Matrix& a, const std::vector<F>& v) {
    if (a.cols_ != v.size()) throw Error(Errc::DimensionMismatch, "matrix-vector shape");
    std::vector<F> r(a.rows_, F(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j)
        if (!field_is_zero(a(i, j)) && !field_is_zero(v[j])) r[i] += a(i, j) * v[j];
    return r;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw Error(Errc::DimensionMismatch, "matrix shapes differ");
  }
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

using QMatrix = Matrix<Rational>;
using KMatrix = Matrix<RatFunc>;
template <class F>
using Vec = std::vector<F>;

/// Incrementally maintained reduced row echelon form of a growing row set.
template <class F>
class Echelon {
 public:
  explicit Echelon(std::size_t ncols) : ncols_(ncols) {}

  std::size_t ncols() const { return ncols_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const std::vector<Vec<F>>& rows() const { return rows_; }

  /// Reduces v against the current rows (in place).
  void reduce(Vec<F>& v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const F& c = v[pivots_[r]];
      if (field_is_zero(c)) continue;
      F f = c;
      for (std::size_t j = 0; j < ncols_; ++j)
        if (!field_is_zero(rows_[r][j])) v[j] -= f * rows_[r][j];
    }
  }

  /// Adds a row; returns false if it was dependent on the existing rows.
  bool add(Vec<F> v) {
    if (v.size() != ncols_) throw Error(Errc::DimensionMismatch, "echelon row length");
    reduce(v);
    std::size_t p = 0;
    while (p < ncols_ && field_is_zero(v[p])) ++p;
    if (p == ncols_) return false;
    F inv = field_inverse(v[p]);
    for (auto& x : v)
      if (!field_is_zero(x)) x *= inv;
    for (auto& row : rows_) {
      if (field_is_zero(row[p])) continue;
      F f = row[p];
      for (std::size_t j = 0; j < ncols_; ++j)
        if (!field_is_zero(v[j])) row[j] -= f * v[j];
    }
    // Keep rows ordered by pivot column.
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(v));
    pivots_.insert(pivots_.begin() + pos, p);
    return true;
  }

  bool contains(Vec<F> v) const {
    reduce(v);
    for (const auto& x : v)
      if (!field_is_zero(x)) return false;
    return true;
  }

  /// Basis of {y : row . y = 0 for every row}.
  std::vector<Vec<F>> nullspace() const {
    std::vector<bool> is_pivot(ncols_, false);
    for (auto p : pivots_) is_pivot[p] = true;
    std::vector<Vec<F>> basis;
    for (std::size_t free = 0; free < ncols_; ++free) {
      if (is_pivot[free]) continue;
      Vec<F> y(ncols_, F(0));
      y[free] = F(1);
      for (std::size_t r = 0; r < rows_.size(); ++r) y[pivots_[r]] = -rows_[r][free];
      basis.push_back(std::move(y));
    }
    return basis;
  }

 private:
  std::size_t ncols_;
  std::vector<Vec<F>> rows_;
  std::vector<std::size_t> pivots_;
};

template <class F>
Echelon<F> row_echelon(const Matrix<F>& m) {
  Echelon<F> e(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) e.add(m.row(i));
  return e;
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  return row_echelon(m).rank();
}

/// Basis of the right kernel {v : m v = 0}.
template <class F>
std::vector<Vec<F>> nullspace(const Matrix<F>& m) {
  return row_echelon(m).nullspace();
}

/// Indices of a maximal linearly independent subset of the columns (greedy, left to right).
template <class F>
std::vector<std::size_t> independent_columns(const std::vector<Vec<F>>& cols) {
  std::vector<std::size_t> keep;
  if (cols.empty()) return keep;
  Echelon<F> e(cols[0].size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (e.add(cols[j])) keep.push_back(j);
  return keep;
}

template <class F>
F determinant(Matrix<F> m) {
  if (m.rows() != m.cols()) throw Error(Errc::DimensionMismatch, "determinant of non-square matrix");
  std::size_t n = m.rows();
  F det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && field_is_zero(m(p, c))) ++p;
    if (p == n) return F(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    F inv = field_inverse(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (field_is_zero(m(i, c))) continue;
      F f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  if (m.rows() != m.cols()) throw Error(Errc::DimensionMismatch, "inverse of non-square matrix");
  std::size_t n = m.rows();
  Matrix<F> aug(n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Matrix<F>::identity(n));
  Echelon<F> e = row_echelon(aug);
  if (e.rank() < n || e.pivots()[n - 1] != n - 1) return std::nullopt;
  Matrix<F> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.rows()[i][n + j];
  return inv;
}

/// Solves m x = b; nullopt if inconsistent.
template <class F>
std::optional<Vec<F>> solve(const Matrix<F>& m, const Vec<F>& b) {
  std::size_t n = m.cols();
  Matrix<F> aug(m.rows(), n + 1);
  aug.set_block(0, 0, m);
  for (std::size_t i = 0; i < m.rows(); ++i) aug(i, n) = b.at(i);
  Echelon<F> e = row_echelon(aug);
  Vec<F> x(n, F(0));
  for (std::size_t r = 0; r < e.rank(); ++r) {
    if (e.pivots()[r] == n) return std::nullopt;
    x[e.pivots()[r]] = e.rows()[r][n];
  }
  return x;
}

/// Whether two lists of vectors in F^n span the same subspace.
template <class F>
bool same_span(const std::vector<Vec<F>>& a, const std::vector<Vec<F>>& b, std::size_t n) {
  Echelon<F> ea(n), eb(n);
  for (const auto& v : a) ea.add(v);
  for (const auto& v : b) eb.add(v);
  if (ea.rank() != eb.rank()) return false;
  for (const auto& v : b)
    if (!ea.contains(v)) return false;
  return true;
}

template <class F>
bool is_nilpotent(const Matrix<F>& m) {
  Matrix<F> p = m;
  for (std::size_t k = 0; k < m.rows(); ++k) {
    if (p.is_zero()) return true;
    p = p * m;
  }
  return p.is_zero();
}

template <class F>
Matrix<F> commutator(const Matrix<F>& a, const Matrix<F>& b) {
  return a * b - b * a;
}

KMatrix to_kmatrix(const QMatrix& m);
/// Entries must all be constants.
std::optional<QMatrix> to_qmatrix(const KMatrix& m);

std::string to_string(const KMatrix& m);

/// Picks an invertible combination sum r_k B_k of the given basis matrices,
/// trying random small integer coefficients. Returns nullopt if every attempt
/// is singular (the span then contains no invertible matrix with high
/// probability).
std::optional<KMatrix> random_invertible_combination(const std::vector<KMatrix>& basis,
                                                     std::uint64_t seed, int attempts = 12);

}  // namespace diffalg
