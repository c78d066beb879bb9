#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tracefield/errors.hpp"
#include "tracefield/polynomial.hpp"
#include "tracefield/rational.hpp"

namespace tf {

/// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw InputError("matrix entry count does not match its shape");
  }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw InputError("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<T>& data() const { return data_; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix product shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& v = a(i, k);
        if (v == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += v * b(k, j);
      }
    return r;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix sum shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix difference shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend Matrix operator*(const T& s, Matrix a) {
    for (auto& v : a.data_) v *= s;
    return a;
  }
  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& x) {
    if (a.cols_ != x.size()) throw InputError("matrix-vector shape mismatch");
    std::vector<T> y(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
    return y;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  bool is_zero() const {
    for (const auto& v : data_)
      if (v != 0) return false;
    return true;
  }
  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using IntMatrix = Matrix<Integer>;

RationalMatrix to_rational(const IntMatrix& m);
/// Throws InternalError when some entry is not an integer.
IntMatrix to_integer(const RationalMatrix& m);
bool is_integral(const RationalMatrix& m);

Rational determinant(const RationalMatrix& m);
Integer determinant(const IntMatrix& m);
int rank(const RationalMatrix& m);
/// Throws DomainError on a singular matrix.
RationalMatrix inverse(const RationalMatrix& m);
/// Basis of the right kernel {x : m x = 0}, one vector per row.
RationalMatrix kernel(const RationalMatrix& m);
/// Solves x * m = b for a row vector x; nullopt when inconsistent.
std::optional<std::vector<Rational>> solve_left(const RationalMatrix& m, const std::vector<Rational>& b);

struct HermiteResult {
  IntMatrix H;  ///< row-style Hermite normal form
  IntMatrix U;  ///< unimodular, H = U * M
};

/// Row-style Hermite normal form: H is upper echelon, pivots positive,
/// entries above each pivot reduced into [0, pivot), zero rows last.
HermiteResult hermite_normal_form(const IntMatrix& m);

/// Least-degree monic annihilating polynomial, by linear elimination on
/// the successive powers I, M, M^2, ... Throws InputError when M is not
/// square.
RatPoly min_poly_of_matrix(const RationalMatrix& m);

/// p(M) for a rational polynomial p.
RationalMatrix evaluate(const RatPoly& p, const RationalMatrix& m);

/// Rows of a matrix as canonical rational strings.
std::vector<std::vector<std::string>> to_strings(const RationalMatrix& m);
std::vector<std::vector<std::string>> to_strings(const IntMatrix& m);

}  // namespace tf
