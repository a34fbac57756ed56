#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "arl/integer.hpp"

namespace arl {

/// Dense integer matrix, row-major, arbitrary precision entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const std::vector<Integer>& entries);
  static IntMatrix from_columns(std::size_t rows, const std::vector<Vector>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector column(std::size_t j) const;
  Vector row(std::size_t i) const;
  void set_column(std::size_t j, const Vector& v);

  Vector apply(const Vector& x) const;

  IntMatrix operator*(const IntMatrix& other) const;
  IntMatrix operator+(const IntMatrix& other) const;
  IntMatrix operator-(const IntMatrix& other) const;
  IntMatrix scaled(const Integer& c) const;
  bool operator==(const IntMatrix& other) const = default;

  IntMatrix transpose() const;
  IntMatrix hconcat(const IntMatrix& right) const;
  IntMatrix select_rows(const std::vector<std::size_t>& which) const;
  IntMatrix select_columns(const std::vector<std::size_t>& which) const;

  bool is_zero() const;
  bool is_square() const noexcept { return rows_ == cols_; }

  /// Fraction-free (Bareiss) determinant; requires a square matrix.
  Integer determinant() const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

}  // namespace arl
