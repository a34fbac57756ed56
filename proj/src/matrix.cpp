#include "arl/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace arl {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<Integer>& entries) {
  IntMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<Vector>& columns) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, columns[j]);
  return m;
}

Vector IntMatrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vector IntMatrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

void IntMatrix::set_column(std::size_t j, const Vector& v) {
  if (v.size() != rows_) throw std::invalid_argument("column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Vector IntMatrix::apply(const Vector& x) const {
  if (x.size() != cols_) throw std::invalid_argument("vector length mismatch");
  Vector y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Integer acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
  IntMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  IntMatrix r = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] += o.data_[k];
  return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix difference shape mismatch");
  IntMatrix r = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= o.data_[k];
  return r;
}

IntMatrix IntMatrix::scaled(const Integer& c) const {
  IntMatrix r = *this;
  for (auto& v : r.data_) v *= c;
  return r;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& right) const {
  if (rows_ != right.rows_) throw std::invalid_argument("hconcat row mismatch");
  IntMatrix r(rows_, cols_ + right.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j) r(i, cols_ + j) = right(i, j);
  }
  return r;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& which) const {
  IntMatrix r(which.size(), cols_);
  for (std::size_t i = 0; i < which.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(which[i], j);
  return r;
}

IntMatrix IntMatrix::select_columns(const std::vector<std::size_t>& which) const {
  IntMatrix r(rows_, which.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < which.size(); ++j) r(i, j) = (*this)(i, which[j]);
  return r;
}

bool IntMatrix::is_zero() const {
  for (const auto& v : data_)
    if (v != 0) return false;
  return true;
}

Integer IntMatrix::determinant() const {
  if (!is_square()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix a = *this;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ',';
      os << (*this)(i, j).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace arl
