#include <doctest.h>

#include <cmath>

#include "support.hpp"

using namespace ckf;
using namespace ckt;

TEST_CASE("Levi-Civita connection") {
  const auto flat = levi_civita(abelian<Q>());
  for (const auto& gamma : flat.gamma) CHECK(gamma.is_zero());

  const Q a = q(3, 2), b = q(-1, 3);
  const auto conn = levi_civita(gab<Q>(a, b));
  CHECK(conn.nabla(1, e(2)) == a * e(1));
  CHECK(conn.nabla(0, e(1)).is_zero());
  for (const auto& gamma : conn.gamma) CHECK(gamma.is_skew());
}

TEST_CASE("curvature of the families") {
  CHECK(riemann(type6<Q>()).curvature_operator.is_zero());
  CHECK(riemann(abelian<Q>()).curvature_operator.is_zero());

  for (const Q& alpha : {q(0), q(1), q(3, 2)}) {
    const auto cd = riemann(type3<Q>(alpha));
    CHECK(cd.w_plus.is_zero());
    CHECK(cd.w_minus.is_zero());
  }

  for (const Q& b : {q(0), q(1), q(-2)}) {
    const auto cd = riemann(gab<Q>(q(1, 2), b));
    CHECK(cd.ric0.is_zero());
    CHECK(cd.scalar == q(-6));
    CHECK(cd.w_plus.is_zero() != cd.w_minus.is_zero());
  }

  const auto half = riemann(gab<Q>(q(1), q(1)));
  CHECK(half.w_plus.is_zero() != half.w_minus.is_zero());
  const auto generic = riemann(gab<Q>(q(2), q(1)));
  CHECK_FALSE(generic.w_plus.is_zero());
  CHECK_FALSE(generic.w_minus.is_zero());
  CHECK(generic.scalar == q(-177, 2));
}

TEST_CASE("geometry flags") {
  CHECK(flags(riemann(type2<Q>(q(1)))).conformally_flat);
  const auto ch = flags(riemann(gab<Q>(q(1, 2), q(1))));
  CHECK(ch.einstein);
  CHECK(ch.half_cf_plus != ch.half_cf_minus);
  CHECK_FALSE(flags(riemann(gab<Q>(q(3), q(0)))).conformally_flat);
  const auto flat = flags(riemann(abelian<Q>()));
  CHECK(flat == GeometryFlags{true, true, true, true, true});
}

TEST_CASE("the curvature operator has the sphere-positive sign") {
  for (const auto& g : {gab<Q>(q(2), q(1)), type2<Q>(q(1)), type4<Q>(q(2), q(1)), gab<Q>(q(-1), q(1))}) {
    const auto cd = riemann(g);
    CHECK(curvature_sign_selftest(cd).empty());
    CHECK(curvature_decomposition(cd) == cd.curvature_operator);
  }
  // SU(2) with c = 1 is a round 3-sphere factor: the sectional curvature of
  // the e1,e2 plane is positive, so <R(e1^e2), e1^e2> > 0.
  const auto su2 = riemann(type2<Q>(q(1)));
  const int k = pair_index(0, 1);
  CHECK(su2.curvature_operator(static_cast<std::size_t>(k), static_cast<std::size_t>(k)) > q(0));
}

TEST_CASE("Ricci and scalar curvature are frame independent") {
  RandomRationals rr(11);
  const auto g = gab<Q>(q(2), q(1));
  const auto cd = riemann(g);
  for (int trial = 0; trial < 3; ++trial) {
    const auto h = change_frame(g, rr.rotation());
    const auto ch = riemann(h);
    CHECK(ch.scalar == cd.scalar);
    CHECK(ch.w_plus.trace() == cd.w_plus.trace());
    CHECK((ch.w_plus * ch.w_plus).trace() == (cd.w_plus * cd.w_plus).trace());
    CHECK((ch.w_minus * ch.w_minus).trace() == (cd.w_minus * cd.w_minus).trace());
  }
}

TEST_CASE("covariant derivative of invariant endomorphisms") {
  const auto conn = levi_civita(gab<Q>(q(2), q(1)));
  for (const auto& d : cov_deriv_endo(Endo4<Q>::identity(4), conn)) CHECK(d.is_zero());

  Endo4<Q> a = Endo4<Q>::zeros(4, 4);
  a(0, 1) = q(3);
  a(2, 3) = q(-1);
  for (const auto& d : cov_deriv_endo(a, levi_civita(abelian<Q>()))) CHECK(d.is_zero());
}

namespace {

using M4 = Matrix<double>;

M4 inverse4(const M4& m) { return *solve(m, M4::identity(4)); }

// Transport matrix P(t) along t -> exp(t e_dir): dP/dt = -gamma_dir P, by
// Heun's method with n steps.
M4 transport(const M4& gamma, double t, int n) {
  M4 p = M4::identity(4);
  const double h = t / n;
  for (int k = 0; k < n; ++k) {
    const M4 k1 = -(gamma * p);
    const M4 k2 = -(gamma * (p + h * k1));
    p += (h / 2) * (k1 + k2);
  }
  return p;
}

}  // namespace

TEST_CASE("covariant derivative agrees with a parallel-transport oracle") {
  // In the left-invariant trivialization an invariant field A pulled back by
  // parallel transport along the e2 flow is P^-1 A P; its t-derivative at 0 is
  // nabla_{e2} A.
  const auto g = gab<double>(1.0, 0.0);
  const auto cd = riemann(g);
  const M4& ric0 = cd.ric0;
  const M4& gamma = cd.connection.gamma[1];
  const double h = 1e-3;
  const M4 fwd = transport(gamma, h, 8), bwd = transport(gamma, -h, 8);
  const M4 oracle = (1.0 / (2 * h)) * (inverse4(fwd) * ric0 * fwd - inverse4(bwd) * ric0 * bwd);
  const M4 direct = cov_deriv_endo(ric0, cd.connection)[1];
  CHECK_FALSE(direct.is_zero());
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) CHECK(oracle(r, c) == doctest::Approx(direct(r, c)).epsilon(1e-5));
}

TEST_CASE("floating and exact curvature agree") {
  const auto exact = riemann(gab<Q>(q(2), q(1)));
  const auto fl = riemann(gab<double>(2.0, 1.0));
  CHECK(fl.scalar == doctest::Approx(exact.scalar.to_double()));
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c)
      CHECK(fl.curvature_operator(r, c) == doctest::Approx(exact.curvature_operator(r, c).to_double()));
  CHECK(flags(fl) == flags(exact));
}
