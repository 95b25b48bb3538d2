#pragma once

// Dense exact matrices over cyclotomic fields and the row-reduction kernel
// (rank, null space, solve) every other layer is built on.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "trideco/cyclotomic.hpp"

namespace trideco {

using Vector = std::vector<Cyclotomic>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Cyclotomic> entries)
      : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows * cols) throw invariant_error("MatrixShape", "entry count mismatch");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// n x 1 matrix holding v.
  static Matrix column(const Vector& v) { return Matrix(v.size(), 1, v); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Cyclotomic& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Cyclotomic& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  const std::vector<Cyclotomic>& entries() const { return a_; }

  Vector col(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  Vector row(std::size_t i) const {
    return Vector(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Cyclotomic& x) { return x.is_zero(); });
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < a_.size(); ++k)
      if (!o.a_[k].is_zero()) a_[k] += o.a_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < a_.size(); ++k)
      if (!o.a_[k].is_zero()) a_[k] -= o.a_[k];
    return *this;
  }
  Matrix& operator*=(const Cyclotomic& s) {
    for (auto& x : a_)
      if (!x.is_zero()) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Cyclotomic& s) { return a *= s; }
  friend Matrix operator*(const Cyclotomic& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw invariant_error("MatrixShape", "product dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Cyclotomic& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Cyclotomic& y = b(k, j);
          if (y.is_zero()) continue;
          c(i, j) += x * y;
        }
      }
    }
    return c;
  }

  friend Vector operator*(const Matrix& a, const Vector& v) {
    if (a.cols_ != v.size()) throw invariant_error("MatrixShape", "matrix-vector mismatch");
    Vector out(a.rows_);
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (v[k].is_zero()) continue;
      for (std::size_t i = 0; i < a.rows_; ++i) {
        const Cyclotomic& x = a(i, k);
        if (!x.is_zero()) out[i] += x * v[k];
      }
    }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  /// Kronecker product; (i1,i2) maps to i1 * rows(b) + i2.
  friend Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) {
        const Cyclotomic& x = a(i, j);
        if (x.is_zero()) continue;
        for (std::size_t k = 0; k < b.rows_; ++k)
          for (std::size_t l = 0; l < b.cols_; ++l) {
            const Cyclotomic& y = b(k, l);
            if (!y.is_zero()) c(i * b.rows_ + k, j * b.cols_ + l) = x * y;
          }
      }
    return c;
  }

  Matrix select_rows(std::span<const std::size_t> idx) const {
    Matrix m(idx.size(), cols_);
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t j = 0; j < cols_; ++j) m(r, j) = (*this)(idx[r], j);
    return m;
  }
  Matrix select_cols(std::span<const std::size_t> idx) const {
    Matrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t c = 0; c < idx.size(); ++c) m(i, c) = (*this)(i, idx[c]);
    return m;
  }

  static Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw invariant_error("MatrixShape", "hstack row mismatch");
    Matrix m(a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
      for (std::size_t j = 0; j < b.cols_; ++j) m(i, a.cols_ + j) = b(i, j);
    }
    return m;
  }
  static Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.empty() && a.cols_ == 0) return b;
    if (a.cols_ != b.cols_) throw invariant_error("MatrixShape", "vstack column mismatch");
    Matrix m(a.rows_ + b.rows_, a.cols_);
    std::copy(a.a_.begin(), a.a_.end(), m.a_.begin());
    std::copy(b.a_.begin(), b.a_.end(), m.a_.begin() + static_cast<std::ptrdiff_t>(a.a_.size()));
    return m;
  }

  /// Appends one row.
  void push_row(const Vector& r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw invariant_error("MatrixShape", "row length mismatch");
    a_.insert(a_.end(), r.begin(), r.end());
    ++rows_;
  }

  Cyclotomic trace() const {
    Cyclotomic t;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
      os << '[';
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
      os << "]\n";
    }
    return os.str();
  }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw invariant_error("MatrixShape", "shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Cyclotomic> a_;
};

/// Reduced row echelon form with its pivot columns. Zero rows are dropped.
struct RowEchelon {
  Matrix rref;
  std::vector<std::size_t> pivots;
};

inline RowEchelon row_reduce(Matrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m(piv, c).is_zero()) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(piv, j), m(r, j));
    const Cyclotomic inv = m(r, c).inverse();
    for (std::size_t j = c; j < cols; ++j)
      if (!m(r, j).is_zero()) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Cyclotomic f = m(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<Cyclotomic> kept(m.entries().begin(),
                               m.entries().begin() + static_cast<std::ptrdiff_t>(r * cols));
  return {Matrix(r, cols, std::move(kept)), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return row_reduce(m).pivots.size(); }

/// Columns form a basis of the right null space of m.
inline Matrix kernel_basis(const Matrix& m) {
  const auto [rref, pivots] = row_reduce(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) free.push_back(j);
  Matrix k(n, free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      if (!rref(r, free[f]).is_zero()) k(pivots[r], f) = -rref(r, free[f]);
  }
  return k;
}

/// One exact solution X of m X = b, or nullopt when the system is inconsistent.
inline std::optional<Matrix> solve(const Matrix& m, const Matrix& b) {
  if (m.rows() != b.rows()) throw invariant_error("MatrixShape", "solve: row mismatch");
  const std::size_t n = m.cols();
  const auto [rref, pivots] = row_reduce(Matrix::hstack(m, b));
  Matrix x(n, b.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] >= n) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(pivots[r], j) = rref(r, n + j);
  }
  return x;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  if (rank(m) != m.rows()) return std::nullopt;
  return solve(m, Matrix::identity(m.rows()));
}

/// Columns of m restricted to a basis of its column space (pivot columns).
inline Matrix column_space(const Matrix& m) {
  return m.select_cols(row_reduce(m).pivots);
}

/// Left inverse of a full-column-rank matrix b: returns l with l * b = identity.
inline Matrix left_inverse(const Matrix& b) {
  const auto pivots = row_reduce(b.transpose()).pivots;  // independent rows of b
  if (pivots.size() != b.cols()) throw invariant_error("RankDeficient", "left_inverse needs full column rank");
  auto inv = inverse(b.select_rows(pivots));
  Matrix l(b.cols(), b.rows());
  for (std::size_t i = 0; i < b.cols(); ++i)
    for (std::size_t k = 0; k < pivots.size(); ++k) l(i, pivots[k]) = (*inv)(i, k);
  return l;
}

}  // namespace trideco
