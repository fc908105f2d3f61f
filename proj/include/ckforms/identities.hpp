#pragma once

// Randomized checks of the algebraic identities the pipeline relies on.
// Everything here runs on the exact backend; a trial passes only when its
// residual is exactly zero.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ckforms/killing.hpp"

namespace ckf {

class RandomRationals {
 public:
  explicit RandomRationals(std::uint64_t seed) : rng_(seed) {}

  /// p/q with |p| <= max_num and 1 <= q <= max_den.
  Rational scalar(int max_num = 5, int max_den = 4);
  Rational nonzero(int max_num = 5, int max_den = 4);
  Vector4<Rational> vector();
  Form<Rational> form(int grade);
  Bivector<Rational> bivector();
  Vec3<Rational> unit3();
  /// Orthogonal complex structure whose fundamental form lies in L2(side).
  AlmostComplexStructure<Rational> complex_structure(Side side);
  /// Orientation-preserving rational rotation (Cayley transform of a random skew matrix).
  Matrix<Rational> rotation();
  /// A member of one of the built-in families with random parameters, in a
  /// randomly rotated frame.
  MetricLieAlgebra<Rational> algebra();
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

struct IdentityResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0; }
};

/// Faults that can be injected into the suite to show that it detects them.
enum class Fault { none, reconstruction_sign };

std::vector<IdentityResult> run_identity_suite(std::uint64_t seed, std::size_t trials, Fault fault = Fault::none);

/// Individual suites; each draws its own inputs from rr.
IdentityResult check_adjoint(RandomRationals& rr, std::size_t trials);
IdentityResult check_dual(RandomRationals& rr, std::size_t trials);
IdentityResult check_sum(RandomRationals& rr, std::size_t trials);
IdentityResult check_commutator(RandomRationals& rr, std::size_t trials);
IdentityResult check_side_preserved(RandomRationals& rr, std::size_t trials);
IdentityResult check_sides_commute(RandomRationals& rr, std::size_t trials);
IdentityResult check_cyclic_projection(RandomRationals& rr, std::size_t trials);
IdentityResult check_complex_structure_star(RandomRationals& rr, std::size_t trials);
IdentityResult check_decomposable_norm(RandomRationals& rr, std::size_t trials);
IdentityResult check_bianchi(RandomRationals& rr, std::size_t trials);
IdentityResult check_reconstruction(RandomRationals& rr, std::size_t trials, Fault fault = Fault::none);
IdentityResult check_curvature_sign(RandomRationals& rr, std::size_t trials);
IdentityResult check_d_theta_derivative(RandomRationals& rr, std::size_t trials);
IdentityResult check_d_squared(RandomRationals& rr, std::size_t trials);
IdentityResult check_weyl_eigenstructure(RandomRationals& rr, std::size_t trials);
IdentityResult check_kahler_weyl(RandomRationals& rr, std::size_t trials);

/// Residual of  nabla_X d(theta) = 2 (d^nabla Q)(X) + 2 R_{X,theta}  for
/// X = e_i, with Q the symmetric part of nabla theta.
template <Scalar S>
Bivector<S> d_theta_derivative_residual(const CurvatureData<S>& cd, const Vector4<S>& theta, int i);

}  // namespace ckf
