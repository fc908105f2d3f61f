#pragma once

// Levi-Civita connection and curvature of a left-invariant metric.
//
// Sign conventions:
//   R_{X,Y} = [nabla_X, nabla_Y] - nabla_{[X,Y]}
//   Ric(X,Y) = tr(Z -> R_{Z,X} Y),   S = tr Ric,   Ric0 = Ric - S/4 g
//   curvature operator: R_{X,Y} = -R(X ^ Y) as endomorphisms
// so that the round sphere has positive curvature operator and
//   R = S/12 Id + 1/2 Ric0~ + W+ + W-.

#include <array>

#include "ckforms/liealg.hpp"

namespace ckf {

template <Scalar S>
struct ConnectionCoeffs {
  /// gamma[i] is nabla_{e_i} as a skew endomorphism (column j = nabla_{e_i} e_j).
  std::array<Endo4<S>, 4> gamma;

  Vector4<S> nabla(int i, const Vector4<S>& v) const { return apply(gamma[static_cast<std::size_t>(i)], v); }
};

template <Scalar S>
ConnectionCoeffs<S> levi_civita(const MetricLieAlgebra<S>& g);

template <Scalar S>
struct CurvatureData {
  ConnectionCoeffs<S> connection;
  /// endo[i][j] = R_{e_i, e_j}.
  std::array<std::array<Endo4<S>, 4>, 4> endo;
  Matrix<S> curvature_operator;  ///< 6x6 on the e_ij basis
  Matrix<S> ric;
  S scalar{0};
  Matrix<S> ric0;
  Matrix<S> w_plus;   ///< 3x3 in L2+ coordinates
  Matrix<S> w_minus;  ///< 3x3 in L2- coordinates
  double scale = 1.0;  ///< magnitude of curvature entries, for float tolerances

  const Matrix<S>& weyl(Side s) const { return s == Side::plus ? w_plus : w_minus; }
  /// R_{X,Y} as an endomorphism.
  Endo4<S> curvature(const Vector4<S>& x, const Vector4<S>& y) const;
};

template <Scalar S>
CurvatureData<S> riemann(const MetricLieAlgebra<S>& g);

template <Scalar S>
struct WeylBlocks {
  Matrix<S> plus;
  Matrix<S> minus;
};

/// W+- = (diagonal blocks of the curvature operator) - S/12 Id, in side coordinates.
template <Scalar S>
WeylBlocks<S> weyl_blocks(const Matrix<S>& curvature_operator, const S& scalar);

/// S/12 Id + 1/2 Ric0~ + W+ + W-, which must equal the curvature operator.
template <Scalar S>
Matrix<S> curvature_decomposition(const CurvatureData<S>& cd);

struct GeometryFlags {
  bool flat = false;
  bool einstein = false;
  bool conformally_flat = false;
  bool half_cf_plus = false;   ///< W+ = 0
  bool half_cf_minus = false;  ///< W- = 0

  friend bool operator==(const GeometryFlags&, const GeometryFlags&) = default;
};

/// Floating point Einstein test uses |Ric0| < tol * max(1, |S|).
template <Scalar S>
GeometryFlags flags(const CurvatureData<S>& cd, const Tolerance& tol = {});

/// Covariant derivative of a left-invariant endomorphism field:
/// (nabla_i A) = [gamma_i, A].
template <Scalar S>
std::array<Endo4<S>, 4> cov_deriv_endo(const Endo4<S>& a, const ConnectionCoeffs<S>& conn);

/// Covariant derivative of an operator on L2(side) given in side coordinates.
template <Scalar S>
std::array<Matrix<S>, 4> cov_deriv_side(const Matrix<S>& w, Side side, const ConnectionCoeffs<S>& conn);

/// Confirms R_{X,Y} = -R(X^Y) on every frame pair and the decomposition of
/// the curvature operator. Returns a description of the first failure, or an
/// empty string.
template <Scalar S>
std::string curvature_sign_selftest(const CurvatureData<S>& cd, const Tolerance& tol = {});

}  // namespace ckf
