#pragma once

#include <cstddef>
#include <vector>

#include "syncsum/common.hpp"

namespace syncsum::linrep {

using Vector = std::vector<BigRat>;

/// Dense row-major matrix of exact rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<BigRat>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  BigRat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigRat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<BigRat>& data() const noexcept { return data_; }

  bool is_zero() const;
  bool is_integral() const;
  Matrix power(std::size_t exponent) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const BigRat& c, const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigRat> data_;
};

/// Row vector times matrix.
Vector operator*(const Vector& row, const Matrix& m);
/// Matrix times column vector.
Vector operator*(const Matrix& m, const Vector& column);
BigRat dot(const Vector& a, const Vector& b);
/// Block-diagonal sum.
Matrix direct_sum(const Matrix& a, const Matrix& b);

}  // namespace syncsum::linrep
