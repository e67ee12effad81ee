#pragma once

// Exact dense linear algebra over Z and Q. Matrices here are tiny (ranks
// below ten), so everything is straightforward row/column elimination.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qmoduli/numeric.hpp"

namespace qmoduli {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols = 0) {
    Matrix m(rows.size(), rows.empty() ? cols : rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != m.cols_) {
        throw std::invalid_argument("Matrix::from_rows: ragged rows");
      }
      for (std::size_t c = 0; c < m.cols_; ++c) {
        m(r, c) = rows[r][c];
      }
    }
    return m;
  }

  static Matrix from_columns(const std::vector<std::vector<T>>& cols, std::size_t rows = 0) {
    Matrix m(cols.empty() ? rows : cols.front().size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].size() != m.rows_) {
        throw std::invalid_argument("Matrix::from_columns: ragged columns");
      }
      for (std::size_t r = 0; r < m.rows_; ++r) {
        m(r, c) = cols[c][r];
      }
    }
    return m;
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = T(1);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  }
  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      out[r] = (*this)(r, c);
    }
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) {
        t(c, r) = (*this)(r, c);
      }
    }
    return t;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != cols_) {
      throw std::invalid_argument("Matrix::apply: size mismatch");
    }
    std::vector<T> out(rows_, T{});
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) {
        out[r] += (*this)(r, c) * v[c];
      }
    }
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw std::invalid_argument("Matrix product: size mismatch");
    }
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == T{}) {
          continue;
        }
        for (std::size_t j = 0; j < b.cols_; ++j) {
          out(i, j) += a(i, k) * b(k, j);
        }
      }
    }
    return out;
  }

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using IntegerMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

RationalMatrix to_rational(const IntMatrix& m);

/// In-place reduced row echelon form. Returns the pivot columns.
std::vector<std::size_t> reduce_rows(RationalMatrix& m);
std::size_t rank(RationalMatrix m);
std::size_t rank(const IntMatrix& m);

/// Some solution of a x = b, or nullopt when inconsistent.
std::optional<RationalVector> solve(const RationalMatrix& a, const RationalVector& b);
/// Basis of the rational null space {x : a x = 0}.
std::vector<RationalVector> kernel(const RationalMatrix& a);

/// Columns form a Z-basis of {x in Z^n : a x = 0}. Computed with unimodular
/// column operations (column Hermite reduction); the basis is size-reduced.
IntMatrix integer_kernel(const IntMatrix& a);

Integer determinant(const IntMatrix& m);
Rational determinant(RationalMatrix m);
std::optional<IntMatrix> integer_inverse(const IntMatrix& m);

/// gcd of the maximal minors of a k x d matrix with k <= d; zero when the
/// rows are dependent. Rows form a basis of (span ∩ Z^d) iff this is 1.
Integer maximal_minor_gcd(const IntMatrix& rows);

}  // namespace qmoduli
