#include <doctest.h>

#include "support.hpp"

using namespace ckf;
using namespace ckt;

TEST_CASE("family brackets") {
  const auto g = gab<Q>(q(3), q(5));
  CHECK(g.bracket(0, 1) == q(3) * e(2) - q(5) * e(3));
  CHECK(g.bracket(0, 2) == q(5) * e(2) + q(3) * e(3));
  CHECK(g.bracket(0, 3) == q(6) * e(4));
  CHECK(g.bracket(1, 2) == -e(4));
  CHECK(g.bracket(2, 1) == e(4));
  CHECK(g.bracket(1, 3).is_zero());

  // type3 is written with e0 first; e0 is stored as the fourth frame vector
  const auto t3 = type3<Q>(q(2));
  CHECK(t3.bracket(3, 0) == e(1) + q(2) * e(2));
  CHECK(t3.bracket(3, 1) == -q(2) * e(1) + e(2));
  CHECK(t3.bracket(3, 2) == e(3));

  const auto t6 = type6<Q>();
  CHECK(t6.bracket(0, 1) == e(3));
  CHECK(t6.bracket(0, 2) == -e(2));
  CHECK(t6.bracket(1, 2).is_zero());

  CHECK_THROWS_AS(type2<Q>(q(0)), std::invalid_argument);
  CHECK_THROWS_AS(type3<Q>(q(-1)), std::invalid_argument);
}

TEST_CASE("Jacobi validation") {
  CHECK(validate(abelian<Q>()).empty());
  CHECK(validate(gab<Q>(q(1), q(2))).empty());
  for (const auto& g : {type2<Q>(q(2)), type3<Q>(q(3, 2)), type4<Q>(q(1), q(-1)), type6<Q>()})
    CHECK(validate(g).empty());

  auto tampered = type6<Q>();
  tampered.set_bracket(0, 1, e(1));
  const auto bad = validate(tampered);
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].triple == std::array<int, 3>{0, 1, 2});
  // [[e1,e2],e3] + [[e2,e3],e1] + [[e3,e1],e2] = [e1,e3] + 0 + [e2,e2] = -e2
  CHECK(bad[0].defect == -e(2));

  auto g = abelian<Q>();
  CHECK_THROWS(g.set_bracket(1, 1, e(1)));
  CHECK_THROWS(g.set_bracket(0, 4, e(1)));
}

TEST_CASE("Chevalley-Eilenberg differential") {
  const Q a = q(3, 2), b = q(-2);
  const auto g = gab<Q>(a, b);
  CHECK(ce_d(f(4), g) == -q(2) * a * bv(1, 4).to_form() + bv(2, 3).to_form());
  CHECK(ce_d(f(1), g).is_zero());
  CHECK(ce_d(f(2), abelian<Q>()).is_zero());
  CHECK(ce_d(Form<Q>::scalar(q(7)), g).is_zero());
  CHECK_THROWS(ce_d(Form<Q>::vol(), g));

  SUBCASE("d squares to zero on basis forms") {
    for (int grade = 0; grade <= 2; ++grade)
      for (int i = 0; i < binomial4(grade); ++i)
        CHECK(ce_d(ce_d(Form<Q>::basis(mask_at(grade, i)), g), g).is_zero());
  }
}

TEST_CASE("frame change preserves the bracket") {
  RandomRationals rr(7);
  const auto g = gab<Q>(q(2), q(1));
  const Matrix<Q> rot = rr.rotation();
  const auto h = change_frame(g, rot);
  // [f_i, f_j] computed in the old frame must match the new constants
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Vector4<Q> fi, fj;
      for (int k = 0; k < 4; ++k) {
        fi[k] = rot(static_cast<std::size_t>(k), static_cast<std::size_t>(i));
        fj[k] = rot(static_cast<std::size_t>(k), static_cast<std::size_t>(j));
      }
      const Vector4<Q> br = g.bracket(fi, fj);
      for (int k = 0; k < 4; ++k) {
        Vector4<Q> fk;
        for (int m = 0; m < 4; ++m) fk[m] = rot(static_cast<std::size_t>(m), static_cast<std::size_t>(k));
        CHECK(h.structure(i, j, k) == dot(br, fk));
      }
    }
  CHECK(validate(h).empty());

  Matrix<Q> shear = Matrix<Q>::identity(4);
  shear(0, 1) = q(1);
  CHECK_THROWS_AS(change_frame(g, shear), std::invalid_argument);
}

TEST_CASE("complex structures") {
  CHECK(frame_complex_structures<Q>().size() == 12);
  Endo4<Q> not_j = Endo4<Q>::identity(4);
  CHECK_THROWS_AS(AlmostComplexStructure<Q>{not_j}, std::invalid_argument);

  const auto jp = gab_complex_structure<Q>(1);
  CHECK(jp(e(1)) == e(4));
  CHECK(jp(e(2)) == e(3));
  const auto jm = gab_complex_structure<Q>(-1);
  CHECK(jm(e(2)) == -e(3));
  CHECK(jp.side() != jm.side());
  // Omega(X,Y) = <JX,Y>
  CHECK(evaluate(jp.fundamental_form(), e(1), e(4)) == q(1));
}

TEST_CASE("Nijenhuis tensor") {
  for (const Q& a : {q(-1), q(1, 2), q(2)})
    for (int eps : {1, -1}) {
      const auto g = gab<Q>(a, q(1));
      const auto n = nijenhuis(gab_complex_structure<Q>(eps), g);
      CHECK(is_zero(n));
    }
  for (const auto& j : frame_complex_structures<Q>()) CHECK(is_zero(nijenhuis(j, abelian<Q>())));

  SUBCASE("antisymmetric in its arguments") {
    const auto g = gab<Q>(q(2), q(1));
    for (const auto& j : frame_complex_structures<Q>()) {
      const auto n = nijenhuis(j, g);
      for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
          CHECK(n[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] ==
                -n[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)]);
    }
  }

  SUBCASE("a non-integrable structure is detected") {
    // J e1 = e2, J e3 = e4 on gab(2,1): N(e1,e3) picks up the e4 component of [e2,e3]
    const auto g = gab<Q>(q(2), q(1));
    CHECK_FALSE(is_zero(nijenhuis(frame_complex_structure<Q>(1, 1, 1), g)));
  }
}

TEST_CASE("Lee form of J_eps on g(a,b)") {
  // dOmega_eps = -(1 + 2 eps a) e123 and e1 ^ Omega_eps = eps e123, so the
  // Lee form is -(eps + 2a) e1 and J_eps is Kaehler exactly when a = -eps/2.
  for (const Q& a : {q(-1), q(1, 2), q(1), q(2)})
    for (const Q& b : {q(0), q(1), q(-2)})
      for (int eps : {1, -1}) {
        const auto g = gab<Q>(a, b);
        const auto j = gab_complex_structure<Q>(eps);
        const auto rep = lck_check(j, g);
        const Q qe(eps);
        CAPTURE(a.str());
        CAPTURE(eps);
        CHECK(rep.integrable);
        CHECK(rep.d_omega == -(q(1) + q(2) * qe * a) * wedge(wedge(f(1), f(2)), f(3)));
        CHECK(wedge(f(1), j.fundamental_form().to_form()) == qe * wedge(wedge(f(1), f(2)), f(3)));
        CHECK(rep.lee_form == -(qe + q(2) * a) * e(1));
        CHECK(rep.is_lck);
        CHECK(rep.is_kahler == (a == -qe / q(2)));
      }
}

TEST_CASE("floating backend lcK matches the exact one") {
  const auto rep = lck_check(gab_complex_structure<double>(1), gab<double>(0.25, 1.0));
  CHECK(rep.lee_form[0] == doctest::Approx(-1.5));
  CHECK_FALSE(rep.is_kahler);
}
