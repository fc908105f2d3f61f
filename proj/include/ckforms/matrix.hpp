#pragma once

// Small dense matrices over a Scalar backend, plus the rank/kernel machinery
// used by every module. Exact backend: fraction arithmetic with RREF.
// Floating backend: SVD (Eigen) with a relative threshold.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ckforms/scalar.hpp"

namespace ckf {

template <Scalar S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}
  Matrix(std::initializer_list<std::initializer_list<S>> init);

  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  S& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const S& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// Row-major flattening; used to treat matrices as vectors in span tests.
  const std::vector<S>& flat() const { return data_; }
  static Matrix from_flat(std::size_t rows, std::size_t cols, std::vector<S> data);

  Matrix transpose() const;
  S trace() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const S& s);
  Matrix operator-() const;

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const S& s) { return a *= s; }
  friend Matrix operator*(const S& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) { return multiply(a, b); }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::vector<S> apply(const std::vector<S>& v) const;

  bool is_zero(const Tolerance& tol = {}, double scale = 1.0) const;
  bool is_symmetric(const Tolerance& tol = {}, double scale = 1.0) const;
  bool is_skew(const Tolerance& tol = {}, double scale = 1.0) const;
  /// Largest entry magnitude, as a double; drives floating tolerances.
  double max_abs() const;

 private:
  static Matrix multiply(const Matrix& a, const Matrix& b);

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

template <Scalar S>
Matrix<S> commutator(const Matrix<S>& a, const Matrix<S>& b) {
  return a * b - b * a;
}

/// Result of a rank/kernel computation.
template <Scalar S>
struct KernelResult {
  std::size_t rank = 0;
  std::vector<std::vector<S>> kernel;  ///< basis of the right null space
  /// Floating backend only: a singular value sits within 10x of the threshold.
  bool low_confidence = false;
};

template <Scalar S>
KernelResult<S> kernel(const Matrix<S>& m, const Tolerance& tol = {});

template <Scalar S>
std::size_t rank(const Matrix<S>& m, const Tolerance& tol = {}) {
  return kernel(m, tol).rank;
}

/// Solves a x = b for square a (b may have several columns). Returns nothing
/// when a is singular.
template <Scalar S>
std::optional<Matrix<S>> solve(const Matrix<S>& a, const Matrix<S>& b, const Tolerance& tol = {});

/// Stacks matrices with equal column counts vertically.
template <Scalar S>
Matrix<S> vstack(const std::vector<Matrix<S>>& blocks, std::size_t cols);

/// Incremental basis of a subspace of S^n. insert() reduces a vector against
/// the current basis and keeps the reduced remainder when it is nonzero.
template <Scalar S>
class SpanBuilder {
 public:
  explicit SpanBuilder(std::size_t n, Tolerance tol = {}) : n_(n), tol_(tol) {}

  /// Returns the stored (reduced) vector when v enlarged the span.
  const std::vector<S>* insert(std::vector<S> v);
  std::size_t dim() const { return basis_.size(); }
  const std::vector<std::vector<S>>& basis() const { return basis_; }
  bool low_confidence() const { return low_confidence_; }

 private:
  std::size_t n_;
  Tolerance tol_;
  std::vector<std::vector<S>> basis_;
  std::vector<std::size_t> pivots_;  // exact backend only
  bool low_confidence_ = false;
};

template <>
KernelResult<Rational> kernel(const Matrix<Rational>& m, const Tolerance& tol);
template <>
KernelResult<double> kernel(const Matrix<double>& m, const Tolerance& tol);
template <>
const std::vector<Rational>* SpanBuilder<Rational>::insert(std::vector<Rational> v);
template <>
const std::vector<double>* SpanBuilder<double>::insert(std::vector<double> v);

extern template class Matrix<Rational>;
extern template class Matrix<double>;
extern template class SpanBuilder<Rational>;
extern template class SpanBuilder<double>;

}  // namespace ckf
