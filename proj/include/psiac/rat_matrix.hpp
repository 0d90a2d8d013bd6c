#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "psiac/rational.hpp"

namespace psiac {

/// Dense row-major matrix of exact rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

  static RatMatrix identity(std::size_t n);
  static RatMatrix diagonal(std::span<const Rational> diag);
  /// Reversal (exchange) matrix: ones on the anti-diagonal.
  static RatMatrix reversal(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::span<const Rational> row(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }
  std::vector<Rational> column(std::size_t j) const;
  const std::vector<Rational>& entries() const { return a_; }

  RatMatrix transpose() const;
  RatMatrix reverse_rows() const;
  RatMatrix reverse_cols() const;
  /// Row-major double copy.
  std::vector<double> to_double() const;

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> a_;
};

/// Row vector times matrix.
std::vector<Rational> left_multiply(std::span<const Rational> v, const RatMatrix& m);
std::vector<Rational> operator*(const RatMatrix& m, std::span<const Rational> v);

/// Solves A X = B exactly by Gaussian elimination with partial pivoting on
/// magnitude. Throws SingularMatrix when A is rank deficient.
RatMatrix rat_solve(const RatMatrix& a, const RatMatrix& b);

RatMatrix rat_inverse(const RatMatrix& a);

}  // namespace psiac
