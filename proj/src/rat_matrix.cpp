#include "psiac/rat_matrix.hpp"

#include <stdexcept>
#include <utility>

#include "psiac/errors.hpp"

namespace psiac {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (a_.size() != rows * cols) {
    throw std::invalid_argument("RatMatrix: entry count does not match shape");
  }
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::diagonal(std::span<const Rational> diag) {
  RatMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

RatMatrix RatMatrix::reversal(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, n - 1 - i) = 1;
  return m;
}

std::vector<Rational> RatMatrix::column(std::size_t j) const {
  std::vector<Rational> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RatMatrix RatMatrix::reverse_rows() const {
  RatMatrix t(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(rows_ - 1 - i, j) = (*this)(i, j);
  return t;
}

RatMatrix RatMatrix::reverse_cols() const {
  RatMatrix t(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(i, cols_ - 1 - j) = (*this)(i, j);
  return t;
}

std::vector<double> RatMatrix::to_double() const {
  std::vector<double> d(a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) d[i] = a_[i].to_double();
  return d;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.rows_) {
    throw std::invalid_argument("RatMatrix: shape mismatch in product");
  }
  RatMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t l = 0; l < a.cols_; ++l) {
      const Rational& ail = a(i, l);
      if (ail.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!b(l, j).is_zero()) c(i, j) += ail * b(l, j);
      }
    }
  }
  return c;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    throw std::invalid_argument("RatMatrix: shape mismatch in sum");
  }
  RatMatrix c = a;
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
  return c;
}

std::vector<Rational> left_multiply(std::span<const Rational> v, const RatMatrix& m) {
  if (v.size() != m.rows()) {
    throw std::invalid_argument("left_multiply: shape mismatch");
  }
  std::vector<Rational> out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i].is_zero()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

std::vector<Rational> operator*(const RatMatrix& m, std::span<const Rational> v) {
  if (v.size() != m.cols()) {
    throw std::invalid_argument("RatMatrix * vector: shape mismatch");
  }
  std::vector<Rational> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

RatMatrix rat_solve(const RatMatrix& a, const RatMatrix& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n) {
    throw std::invalid_argument("rat_solve: matrix is not square");
  }
  if (b.rows() != n) {
    throw std::invalid_argument("rat_solve: right-hand side row count mismatch");
  }
  const std::size_t m = b.cols();
  RatMatrix u = a;
  RatMatrix x = b;
  for (std::size_t col = 0; col < n; ++col) {
    // Largest magnitude |p/q| in the column; compared exactly.
    std::size_t pivot = n;
    Rational best;
    for (std::size_t i = col; i < n; ++i) {
      if (u(i, col).is_zero()) continue;
      Rational mag = u(i, col).abs();
      if (pivot == n || mag > best) {
        pivot = i;
        best = std::move(mag);
      }
    }
    if (pivot == n) {
      throw SingularMatrix("rat_solve: matrix is singular (zero pivot in column " +
                           std::to_string(col) + ")");
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(u(col, j), u(pivot, j));
      for (std::size_t j = 0; j < m; ++j) std::swap(x(col, j), x(pivot, j));
    }
    const Rational inv = Rational(1) / u(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (u(i, col).is_zero()) continue;
      const Rational f = u(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) u(i, j) -= f * u(col, j);
      for (std::size_t j = 0; j < m; ++j) x(i, j) -= f * x(col, j);
    }
  }
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = 0; j < m; ++j) {
      Rational s = x(ii, j);
      for (std::size_t l = ii + 1; l < n; ++l) s -= u(ii, l) * x(l, j);
      x(ii, j) = s / u(ii, ii);
    }
  }
  return x;
}

RatMatrix rat_inverse(const RatMatrix& a) { return rat_solve(a, RatMatrix::identity(a.rows())); }

}  // namespace psiac
