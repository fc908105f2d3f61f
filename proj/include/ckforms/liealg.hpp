#pragma once

// Four-dimensional metric Lie algebras given by structure constants on a
// declared-orthonormal, oriented frame e1..e4 (0-based in code).

#include <string>
#include <vector>

#include "ckforms/exterior4.hpp"

namespace ckf {

template <Scalar S>
struct Parameter {
  std::string name;
  S value;
  friend bool operator==(const Parameter&, const Parameter&) = default;
};

template <Scalar S>
class MetricLieAlgebra {
 public:
  explicit MetricLieAlgebra(std::string label = "");

  /// Sets [e_i, e_j] = v (and [e_j, e_i] = -v). 0-based, i != j.
  void set_bracket(int i, int j, const Vector4<S>& v);
  const Vector4<S>& bracket(int i, int j) const {
    return table_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  Vector4<S> bracket(const Vector4<S>& x, const Vector4<S>& y) const;
  /// c_{ij}^k = <[e_i, e_j], e_k>.
  const S& structure(int i, int j, int k) const { return bracket(i, j)[k]; }

  /// Matrix of ad(e_i) = [e_i, .].
  Endo4<S> ad(int i) const;

  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }
  const std::vector<Parameter<S>>& parameters() const { return params_; }
  void add_parameter(std::string name, const S& value) { params_.push_back({std::move(name), value}); }

  /// Largest structure constant magnitude (>= 1); floating tolerances scale with it.
  double scale() const;

  friend bool operator==(const MetricLieAlgebra&, const MetricLieAlgebra&) = default;

 private:
  std::string label_;
  std::vector<Parameter<S>> params_;
  std::array<std::array<Vector4<S>, 4>, 4> table_{};
};

template <Scalar S>
struct JacobiViolation {
  std::array<int, 3> triple;  ///< 0-based i < j < k
  Vector4<S> defect;          ///< [[e_i,e_j],e_k] + cyclic
};

/// Checks the Jacobi identity on every frame triple. Never throws.
template <Scalar S>
std::vector<JacobiViolation<S>> validate(const MetricLieAlgebra<S>& g, const Tolerance& tol = {});

/// Chevalley-Eilenberg differential of a left-invariant form of grade 0..3;
/// on 1-forms d(alpha)(X,Y) = -alpha([X,Y]).
template <Scalar S>
Form<S> ce_d(const Form<S>& a, const MetricLieAlgebra<S>& g);

/// Expresses the algebra in the frame given by the columns of an orthogonal
/// matrix q (f_i = sum_k q(k,i) e_k). Throws std::invalid_argument when q is
/// not orthogonal.
template <Scalar S>
MetricLieAlgebra<S> change_frame(const MetricLieAlgebra<S>& g, const Matrix<S>& q, const Tolerance& tol = {});

// ---------------------------------------------------------------------------
// Complex structures.

/// Orthogonal almost complex structure: J^2 = -Id and J^T J = Id.
template <Scalar S>
class AlmostComplexStructure {
 public:
  /// Throws std::invalid_argument when j is not an orthogonal complex structure.
  explicit AlmostComplexStructure(Endo4<S> j, const Tolerance& tol = {});

  const Endo4<S>& endo() const { return j_; }
  /// Omega = <J., .> as a bivector; its endomorphism is J itself.
  Bivector<S> fundamental_form() const { return omega_; }
  /// The half of L2 containing Omega.
  Side side() const { return side_; }
  Vector4<S> operator()(const Vector4<S>& x) const { return apply(j_, x); }

 private:
  Endo4<S> j_;
  Bivector<S> omega_;
  Side side_;
};

/// The J with J e_from = e_to (sign +-1) and J e_p = sign2 * e_q on the
/// complementary pair (p < q).
template <Scalar S>
AlmostComplexStructure<S> frame_complex_structure(int to, int sign, int sign2);

/// The twelve orthogonal complex structures mapping e1 to +-e2, +-e3 or +-e4,
/// completed orthogonally in both orientations.
template <Scalar S>
std::vector<AlmostComplexStructure<S>> frame_complex_structures();

/// N(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y] on frame pairs.
template <Scalar S>
using NijenhuisTensor = std::array<std::array<Vector4<S>, 4>, 4>;

template <Scalar S>
NijenhuisTensor<S> nijenhuis(const AlmostComplexStructure<S>& j, const MetricLieAlgebra<S>& g);

template <Scalar S>
bool is_zero(const NijenhuisTensor<S>& n, const Tolerance& tol = {}, double scale = 1.0);

template <Scalar S>
struct LckReport {
  bool integrable = false;
  Bivector<S> fundamental_form;
  Form<S> d_omega{3};
  Vector4<S> lee_form;  ///< meaningful when integrable
  bool is_lck = false;
  bool is_kahler = false;
};

/// Locally conformally Kaehler test for an invariant complex structure:
/// solves dOmega = theta ^ Omega and checks d theta = 0.
template <Scalar S>
LckReport<S> lck_check(const AlmostComplexStructure<S>& j, const MetricLieAlgebra<S>& g, const Tolerance& tol = {});

// ---------------------------------------------------------------------------
// Families. Algebras written with a basis e0, e1, e2, e3 are stored with
// e0 as the fourth frame vector, e1..e3 unchanged.

template <Scalar S>
MetricLieAlgebra<S> abelian();

/// R x SU(2): [e1,e2] = c e3, [e2,e3] = c e1, [e3,e1] = c e2, e0 central; c != 0.
template <Scalar S>
MetricLieAlgebra<S> type2(const S& c);

/// R e0 x_B R^3 with [e0,e1] = e1 + alpha e2, [e0,e2] = -alpha e1 + e2,
/// [e0,e3] = e3; alpha >= 0.
template <Scalar S>
MetricLieAlgebra<S> type3(const S& alpha);

/// R^2 x R^2 with frame (e1, e2, f1, f2): [e1,f1] = f1 + a f2,
/// [e1,f2] = -a f1 + f2, [e2,f1] = b f2, [e2,f2] = -b f1.
template <Scalar S>
MetricLieAlgebra<S> type4(const S& a, const S& b);

/// The flat algebra R x e(2): [e1,e2] = e3, [e1,e3] = -e2, e0 central.
template <Scalar S>
MetricLieAlgebra<S> type6();

/// g(a,b): [e1,e2] = a e2 - b e3, [e1,e3] = b e2 + a e3, [e1,e4] = 2a e4,
/// [e2,e3] = -e4.
template <Scalar S>
MetricLieAlgebra<S> gab(const S& a, const S& b);

/// J_eps on g(a,b): J e1 = e4, J e2 = eps e3.
template <Scalar S>
AlmostComplexStructure<S> gab_complex_structure(int eps);

}  // namespace ckf
