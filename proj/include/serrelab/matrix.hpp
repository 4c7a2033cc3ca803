#pragma once

// Dense matrices over an exact field and the handful of elimination
// routines the rest of the library needs.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "serrelab/field.hpp"

namespace serrelab {

template <Field F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }
  static Matrix column(const std::vector<F>& v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    for (const F& x : data_) {
      if (!x.is_zero()) return false;
    }
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  Matrix select_columns(const std::vector<std::size_t>& idx) const {
    Matrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < idx.size(); ++k) m(i, k) = (*this)(i, idx[k]);
    }
    return m;
  }
  Matrix select_rows(const std::vector<std::size_t>& idx) const {
    Matrix m(idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      for (std::size_t j = 0; j < cols_; ++j) m(k, j) = (*this)(idx[k], j);
    }
    return m;
  }
  Matrix column_at(std::size_t j) const { return select_columns({j}); }

  Matrix hstack(const Matrix& o) const {
    if (o.rows_ != rows_) throw std::invalid_argument("hstack: row mismatch");
    Matrix m(rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
      for (std::size_t j = 0; j < o.cols_; ++j) m(i, cols_ + j) = o(i, j);
    }
    return m;
  }
  Matrix vstack(const Matrix& o) const {
    if (o.cols_ != cols_) throw std::invalid_argument("vstack: column mismatch");
    Matrix m(rows_ + o.rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    }
    for (std::size_t i = 0; i < o.rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) m(rows_ + i, j) = o(i, j);
    }
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
        }
      }
    }
    return c;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }
  Matrix scaled(const F& s) const {
    Matrix c = *this;
    for (F& x : c.data_) x *= s;
    return c;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw std::invalid_argument("shape mismatch");
  }
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

template <Field F>
struct Echelon {
  Matrix<F> reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form.
template <Field F>
Echelon<F> rref(Matrix<F> m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    }
    const F inv = F(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      const F factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) {
        if (!m(row, j).is_zero()) m(i, j) -= factor * m(row, j);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <Field F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).pivots.size();
}

/// Columns form a basis of the null space, in echelon order of the free
/// variables.
template <Field F>
Matrix<F> nullspace(const Matrix<F>& m) {
  const Echelon<F> e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (!is_pivot[j]) free_cols.push_back(j);
  }
  Matrix<F> basis(m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    basis(free_cols[k], k) = F(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      basis(e.pivots[r], k) = -e.reduced(r, free_cols[k]);
    }
  }
  return basis;
}

/// Some X with A X = B, if one exists.
template <Field F>
std::optional<Matrix<F>> solve(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
  const Echelon<F> e = rref(a.hstack(b));
  const std::size_t n = a.cols();
  Matrix<F> x(n, b.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] >= n) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[r], j) = e.reduced(r, n + j);
  }
  return x;
}

template <Field F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  const Echelon<F> e = rref(a.hstack(Matrix<F>::identity(a.rows())));
  const std::size_t n = a.rows();
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix<F> inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  }
  return inv;
}

/// Basis of the column space, as columns of the result.
template <Field F>
Matrix<F> column_basis(const Matrix<F>& m) {
  const Echelon<F> e = rref(m);
  return m.select_columns(e.pivots);
}

/// A quotient k^n / span(columns of U): projection is (n-r) x n with kernel
/// span(U), section is n x (n-r) with projection * section = identity.
template <Field F>
struct Quotient {
  Matrix<F> projection;
  Matrix<F> section;
};

template <Field F>
Quotient<F> quotient_by(const Matrix<F>& span, std::size_t ambient) {
  if (span.rows() != ambient) throw std::invalid_argument("quotient_by: ambient mismatch");
  const Echelon<F> e = rref(span.transpose());
  std::vector<bool> is_pivot(ambient, false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> rest;
  for (std::size_t j = 0; j < ambient; ++j) {
    if (!is_pivot[j]) rest.push_back(j);
  }
  Quotient<F> q{Matrix<F>(rest.size(), ambient), Matrix<F>(ambient, rest.size())};
  for (std::size_t k = 0; k < rest.size(); ++k) {
    q.section(rest[k], k) = F(1);
    q.projection(k, rest[k]) = F(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      q.projection(k, e.pivots[r]) = -e.reduced(r, rest[k]);
    }
  }
  return q;
}

}  // namespace serrelab
