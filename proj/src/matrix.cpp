#include "ckforms/matrix.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace ckf {

template <Scalar S>
Matrix<S>::Matrix(std::initializer_list<std::initializer_list<S>> init)
    : rows_(init.size()), cols_(init.size() ? init.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : init) {
    if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

template <Scalar S>
Matrix<S> Matrix<S>::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
  return m;
}

template <Scalar S>
Matrix<S> Matrix<S>::from_flat(std::size_t rows, std::size_t cols, std::vector<S> data) {
  if (data.size() != rows * cols) throw std::invalid_argument("flat data has wrong size");
  Matrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.data_ = std::move(data);
  return m;
}

template <Scalar S>
Matrix<S> Matrix<S>::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

template <Scalar S>
S Matrix<S>::trace() const {
  S t(0);
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

template <Scalar S>
Matrix<S>& Matrix<S>::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch in +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

template <Scalar S>
Matrix<S>& Matrix<S>::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch in -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

template <Scalar S>
Matrix<S>& Matrix<S>::operator*=(const S& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

template <Scalar S>
Matrix<S> Matrix<S>::operator-() const {
  Matrix m = *this;
  for (auto& x : m.data_) x = -x;
  return m;
}

template <Scalar S>
Matrix<S> Matrix<S>::multiply(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch in *");
  Matrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const S& aik = a(i, k);
      if (exactly_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (exactly_zero(b(k, j))) continue;
        m(i, j) += aik * b(k, j);
      }
    }
  }
  return m;
}

template <Scalar S>
std::vector<S> Matrix<S>::apply(const std::vector<S>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("vector length mismatch in apply");
  std::vector<S> out(rows_, S(0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
  return out;
}

template <Scalar S>
bool Matrix<S>::is_zero(const Tolerance& tol, double scale) const {
  return std::all_of(data_.begin(), data_.end(), [&](const S& x) { return ckf::is_zero(x, tol, scale); });
}

template <Scalar S>
bool Matrix<S>::is_symmetric(const Tolerance& tol, double scale) const {
  if (!square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r + 1; c < cols_; ++c)
      if (!ckf::is_zero(S((*this)(r, c) - (*this)(c, r)), tol, scale)) return false;
  return true;
}

template <Scalar S>
bool Matrix<S>::is_skew(const Tolerance& tol, double scale) const {
  if (!square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r; c < cols_; ++c)
      if (!ckf::is_zero(S((*this)(r, c) + (*this)(c, r)), tol, scale)) return false;
  return true;
}

template <Scalar S>
double Matrix<S>::max_abs() const {
  double m = 0.0;
  for (const auto& x : data_) m = std::max(m, ScalarTraits<S>::magnitude(x));
  return m;
}

template <Scalar S>
Matrix<S> vstack(const std::vector<Matrix<S>>& blocks, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw std::invalid_argument("vstack column mismatch");
    rows += b.rows();
  }
  Matrix<S> out(rows, cols);
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < cols; ++c) out(r0 + r, c) = b(r, c);
    r0 += b.rows();
  }
  return out;
}

template <Scalar S>
std::optional<Matrix<S>> solve(const Matrix<S>& a, const Matrix<S>& b, const Tolerance& tol) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.rows() != n) throw std::invalid_argument("solve needs a square system");
  Matrix<S> m = a, x = b;
  const double scale = std::max(1.0, a.max_abs());
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (ScalarTraits<S>::magnitude(m(r, c)) > ScalarTraits<S>::magnitude(m(p, c))) p = r;
    if (ckf::is_zero(m(p, c), tol, scale)) return std::nullopt;
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m(p, k), m(c, k));
      for (std::size_t k = 0; k < x.cols(); ++k) std::swap(x(p, k), x(c, k));
    }
    const S inv = S(1) / m(c, c);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || exactly_zero(m(r, c))) continue;
      const S f = m(r, c) * inv;
      for (std::size_t k = c; k < n; ++k) m(r, k) -= f * m(c, k);
      for (std::size_t k = 0; k < x.cols(); ++k) x(r, k) -= f * x(c, k);
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    const S inv = S(1) / m(r, r);
    for (std::size_t k = 0; k < x.cols(); ++k) x(r, k) *= inv;
  }
  return x;
}

template <>
KernelResult<Rational> kernel(const Matrix<Rational>& m, const Tolerance&) {
  Matrix<Rational> a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t k = 0; k < cols; ++k) std::swap(a(p, k), a(r, k));
    const Rational inv = Rational(1) / a(r, c);
    for (std::size_t k = c; k < cols; ++k) a(r, k) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      const Rational f = a(i, c);
      for (std::size_t k = c; k < cols; ++k) a(i, k) -= f * a(r, k);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  KernelResult<Rational> out;
  out.rank = pivot_cols.size();
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = Rational(1);
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a(i, free);
    out.kernel.push_back(std::move(v));
  }
  return out;
}

template <>
KernelResult<double> kernel(const Matrix<double>& m, const Tolerance& tol) {
  const auto rows = static_cast<Eigen::Index>(m.rows());
  const auto cols = static_cast<Eigen::Index>(m.cols());
  KernelResult<double> out;
  if (cols == 0) return out;
  Eigen::MatrixXd e(std::max<Eigen::Index>(rows, 1), cols);
  e.setZero();
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) e(r, c) = m(r, c);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(e, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  const double threshold = tol.rel * std::max(1.0, smax);
  std::size_t rk = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold) ++rk;
    if (sv(i) >= threshold / 10.0 && sv(i) <= threshold * 10.0) out.low_confidence = true;
  }
  out.rank = rk;
  const auto& v = svd.matrixV();
  for (Eigen::Index c = static_cast<Eigen::Index>(rk); c < cols; ++c) {
    std::vector<double> k(static_cast<std::size_t>(cols));
    for (Eigen::Index i = 0; i < cols; ++i) k[static_cast<std::size_t>(i)] = v(i, c);
    out.kernel.push_back(std::move(k));
  }
  return out;
}

template <>
const std::vector<Rational>* SpanBuilder<Rational>::insert(std::vector<Rational> v) {
  if (v.size() != n_) throw std::invalid_argument("span vector length mismatch");
  for (std::size_t b = 0; b < basis_.size(); ++b) {
    const std::size_t p = pivots_[b];
    if (v[p].is_zero()) continue;
    const Rational f = v[p];
    const auto& row = basis_[b];
    for (std::size_t k = 0; k < n_; ++k)
      if (!row[k].is_zero()) v[k] -= f * row[k];
  }
  std::size_t p = 0;
  while (p < n_ && v[p].is_zero()) ++p;
  if (p == n_) return nullptr;
  const Rational inv = Rational(1) / v[p];
  for (auto& x : v) x *= inv;
  basis_.push_back(std::move(v));
  pivots_.push_back(p);
  return &basis_.back();
}

template <>
const std::vector<double>* SpanBuilder<double>::insert(std::vector<double> v) {
  if (v.size() != n_) throw std::invalid_argument("span vector length mismatch");
  auto norm = [](const std::vector<double>& x) {
    double s = 0.0;
    for (double e : x) s += e * e;
    return std::sqrt(s);
  };
  const double original = norm(v);
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis_) {
      double d = 0.0;
      for (std::size_t k = 0; k < n_; ++k) d += q[k] * v[k];
      for (std::size_t k = 0; k < n_; ++k) v[k] -= d * q[k];
    }
  }
  const double residual = norm(v);
  const double threshold = tol_.rel * std::max(1.0, original);
  if (residual >= threshold / 10.0 && residual <= threshold * 10.0) low_confidence_ = true;
  if (residual <= threshold) return nullptr;
  for (auto& x : v) x /= residual;
  basis_.push_back(std::move(v));
  return &basis_.back();
}

template class Matrix<Rational>;
template class Matrix<double>;
template class SpanBuilder<Rational>;
template class SpanBuilder<double>;
template Matrix<Rational> vstack(const std::vector<Matrix<Rational>>&, std::size_t);
template std::optional<Matrix<Rational>> solve(const Matrix<Rational>&, const Matrix<Rational>&, const Tolerance&);
template std::optional<Matrix<double>> solve(const Matrix<double>&, const Matrix<double>&, const Tolerance&);
template Matrix<double> vstack(const std::vector<Matrix<double>>&, std::size_t);

}  // namespace ckf
