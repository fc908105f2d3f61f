#include <doctest.h>

#include "support.hpp"

using namespace ckf;
using namespace ckt;

TEST_CASE("random rational draws") {
  RandomRationals rr(1);
  for (int k = 0; k < 20; ++k) {
    const Vec3<Q> u = rr.unit3();
    CHECK(u[0] * u[0] + u[1] * u[1] + u[2] * u[2] == q(1));
    const Matrix<Q> r = rr.rotation();
    CHECK(r.transpose() * r == Matrix<Q>::identity(4));
    for (Side s : {Side::plus, Side::minus}) CHECK(rr.complex_structure(s).side() == s);
    CHECK(validate(rr.algebra()).empty());
  }
}

TEST_CASE("identity suite passes on a short run") {
  const auto results = run_identity_suite(99, 25);
  CHECK(results.size() == 16);
  for (const auto& r : results) {
    CAPTURE(r.name);
    CAPTURE(r.first_failure);
    CHECK(r.ok());
    CHECK(r.trials == 25);
  }
}

TEST_CASE("an injected sign flip is caught by name") {
  const auto results = run_identity_suite(99, 5, Fault::reconstruction_sign);
  for (const auto& r : results) CHECK(r.ok() == (r.name != "reconstruction"));
}

TEST_CASE("d theta identity on a fixed algebra") {
  const auto cd = riemann(gab<Q>(q(2), q(1)));
  for (int i = 0; i < 4; ++i) CHECK(d_theta_derivative_residual(cd, e(1) - q(3) * e(4), i).is_zero());
}

TEST_CASE("cyclic projection identity needs the cyclic third term") {
  const Vector4<Q> x = e(1) + e(3), y = e(2) - q(2) * e(4), t = e(3) + q(1, 2) * e(1);
  auto p = [](const Vector4<Q>& a, const Vector4<Q>& b) { return project(wedge(a, b), Side::plus); };
  const Vector4<Q> rhs = q(3, 2) * interior(t, hodge(wedge(x, y).to_form())).as_vector();
  const Vector4<Q> cyclic = apply(p(x, y), t) + apply(p(y, t), x) + apply(p(t, x), y);
  CHECK(cyclic == rhs);
  // with (X ^ theta)_+ in place of (theta ^ X)_+ the sum is no longer cyclic
  const Vector4<Q> swapped = apply(p(x, y), t) + apply(p(y, t), x) + apply(p(x, t), y);
  CHECK(swapped != rhs);
}
