#pragma once

// Conformal Killing 2-forms as parallel sections.
//
// A conformal Killing 2-form with values in L2(side) corresponds to a parallel
// section (omega, theta, sigma) of the rank-10 bundle L2(side) + T + L2(other)
// for the split Killing connection. In the left-invariant trivialization
//   nabla^K_{e_i} s = e_i(s) + gamma_i s
// and sections are stacked as 10-vectors in the order
//   omega (3 side coordinates), theta (4 frame coordinates), sigma (3 coordinates).

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ckforms/curvature.hpp"

namespace ckf {

inline constexpr std::size_t kSectionDim = 10;

template <Scalar S>
struct CKSection {
  Vec3<S> omega{};
  Vector4<S> theta;
  Vec3<S> sigma{};

  std::vector<S> stack() const;
  static CKSection unstack(const std::vector<S>& v);
};

template <Scalar S>
struct KillingConnection {
  Side side = Side::plus;
  std::array<Matrix<S>, 4> gamma;
  MetricLieAlgebra<S> algebra;
};

template <Scalar S>
KillingConnection<S> build_killing_connection(const MetricLieAlgebra<S>& g, const CurvatureData<S>& cd, Side side);

/// The bivector subtracted from nabla sigma in the third row, before it is
/// restricted to L2(other). Exposed so callers can measure how far it is from
/// L2(other) on a given section.
template <Scalar S>
Bivector<S> sigma_row_source(const CurvatureData<S>& cd, Side side, int i, const CKSection<S>& s);

template <Scalar S>
struct HolonomyResult {
  std::vector<Matrix<S>> generators;  ///< basis of the closed span (reduced, not the raw K_ij)
  std::size_t iterations = 0;         ///< closure rounds until no new direction appeared
  std::size_t parallel_dim = 0;
  std::vector<std::vector<S>> kernel;  ///< basis of the joint kernel
  bool low_confidence = false;
};

/// Parallel sections of a left-invariant connection on a trivial bundle of
/// rank n = gamma[i].rows(): the joint kernel of the infinitesimal holonomy
/// algebra spanned by K_ij = [g_i, g_j] - c_ij^k g_k and closed under
/// A -> [g_l, A].
template <Scalar S>
HolonomyResult<S> holonomy_parallel_dim(const std::array<Matrix<S>, 4>& gamma, const MetricLieAlgebra<S>& g,
                                        const Tolerance& tol = {});

template <Scalar S>
HolonomyResult<S> holonomy_parallel_dim(const KillingConnection<S>& kc, const Tolerance& tol = {}) {
  return holonomy_parallel_dim(kc.gamma, kc.algebra, tol);
}

/// Independent count: dimension of the largest subspace of the common kernel
/// of the K_ij that is invariant under every gamma_l.
template <Scalar S>
std::size_t invariant_kernel_dim(const std::array<Matrix<S>, 4>& gamma, const MetricLieAlgebra<S>& g,
                                 const Tolerance& tol = {});

struct CkDims {
  std::size_t plus = 0;
  std::size_t minus = 0;
  bool low_confidence = false;

  std::size_t on(Side s) const { return s == Side::plus ? plus : minus; }
  friend bool operator==(const CkDims&, const CkDims&) = default;
};

template <Scalar S>
CkDims ck_dims(const MetricLieAlgebra<S>& g, const Tolerance& tol = {});

template <Scalar S>
CkDims ck_dims(const MetricLieAlgebra<S>& g, const CurvatureData<S>& cd, const Tolerance& tol = {});

template <Scalar S>
struct InvariantSolution {
  Vec3<S> omega{};
  Vector4<S> theta;
};

template <Scalar S>
struct InvariantCkResult {
  Side side = Side::plus;
  std::vector<InvariantSolution<S>> basis;
  bool all_theta_zero = true;
};

/// Constant solutions of nabla_{e_i} omega = (e_i ^ theta)_side.
template <Scalar S>
InvariantCkResult<S> invariant_ck_solve(const MetricLieAlgebra<S>& g, Side side, const Tolerance& tol = {});

enum class TsdHypothesis { not_einstein, not_kahler, weyl_nonzero };

const char* hypothesis_name(TsdHypothesis h);

class TsdHypothesisError : public std::runtime_error {
 public:
  explicit TsdHypothesisError(TsdHypothesis h, const std::string& detail);
  TsdHypothesis hypothesis() const { return h_; }

 private:
  TsdHypothesis h_;
};

template <Scalar S>
struct TsdConnection {
  Side side = Side::plus;  ///< side of omega; J lives on the other side
  std::array<Matrix<S>, 4> gamma;  ///< 8x8 on (omega 3, theta 4, f)
  std::vector<Matrix<S>> curvature;  ///< K_ij for i < j
  bool flat = false;
  std::size_t parallel_dim = 0;
  bool metric_flat = false;
  std::string note;
};

/// Rank-8 connection on L2(side) + T + R for an Einstein metric with
/// W(side) = 0 and an invariant Kaehler structure J with Omega in L2(other).
/// Throws TsdHypothesisError naming the first failed hypothesis.
template <Scalar S>
TsdConnection<S> tsd_connection(const MetricLieAlgebra<S>& g, const AlmostComplexStructure<S>& j,
                                const Tolerance& tol = {});

template <Scalar S>
struct WeylEigenReport {
  Side side = Side::plus;
  S lambda{0};  ///< <W omega, omega> / |omega|^2
  bool is_eigenvector = false;
  bool holds = false;  ///< 2|w|^2 W = lambda (3 w w^T - |w|^2 Id) in side coordinates
};

/// Throws std::invalid_argument unless omega is nonzero and lies in one side.
template <Scalar S>
WeylEigenReport<S> weyl_eigenstructure_check(const CurvatureData<S>& cd, const Bivector<S>& omega,
                                             const Tolerance& tol = {});

template <Scalar S>
WeylEigenReport<S> weyl_eigenstructure_check(const MetricLieAlgebra<S>& g, const Bivector<S>& omega,
                                             const Tolerance& tol = {}) {
  return weyl_eigenstructure_check(riemann(g), omega, tol);
}

enum class TheoremCase { case1, case2, case3, none };

const char* case_name(TheoremCase c);

template <Scalar S>
struct LckCandidate {
  std::size_t index = 0;  ///< position in frame_complex_structures()
  AlmostComplexStructure<S> j;
  LckReport<S> report;
};

template <Scalar S>
struct Classification {
  TheoremCase theorem_case = TheoremCase::none;
  CkDims dims;
  GeometryFlags flags;
  std::vector<LckCandidate<S>> lck;  ///< integrable candidates that are lcK
  std::vector<std::string> notes;
};

template <Scalar S>
Classification<S> classify_theorem_main(const MetricLieAlgebra<S>& g, const Tolerance& tol = {});

template <Scalar S>
Classification<S> classify_theorem_main(const MetricLieAlgebra<S>& g, const CurvatureData<S>& cd, const CkDims& dims,
                                        const Tolerance& tol = {});

}  // namespace ckf
