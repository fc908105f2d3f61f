#include "ckforms/identities.hpp"

#include <sstream>

namespace ckf {

namespace {

using Q = Rational;

constexpr std::size_t z(int i) { return static_cast<std::size_t>(i); }

Vector4<Q> e(int i) { return Vector4<Q>::basis(i); }

Bivector<Q> apply6(const Matrix<Q>& op, const Bivector<Q>& b) {
  const auto v = op.apply(std::vector<Q>(b.c.begin(), b.c.end()));
  Bivector<Q> out;
  for (int k = 0; k < 6; ++k) out[k] = v[z(k)];
  return out;
}

/// Runs `trial` and records the first failing description.
template <class F>
IdentityResult run(const std::string& name, std::size_t trials, F&& trial) {
  IdentityResult r{name, trials, 0, {}};
  for (std::size_t t = 0; t < trials; ++t) {
    std::string why = trial();
    if (!why.empty()) {
      if (r.failures++ == 0) r.first_failure = "trial " + std::to_string(t) + ": " + why;
    }
  }
  return r;
}

}  // namespace

Rational RandomRationals::scalar(int max_num, int max_den) {
  std::uniform_int_distribution<long> num(-max_num, max_num), den(1, max_den);
  return Rational(num(rng_), den(rng_));
}

Rational RandomRationals::nonzero(int max_num, int max_den) {
  for (;;) {
    Rational r = scalar(max_num, max_den);
    if (!r.is_zero()) return r;
  }
}

Vector4<Q> RandomRationals::vector() {
  Vector4<Q> v;
  for (auto& x : v.c) x = scalar();
  return v;
}

Form<Q> RandomRationals::form(int grade) {
  Form<Q> f(grade);
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = scalar();
  return f;
}

Bivector<Q> RandomRationals::bivector() {
  Bivector<Q> b;
  for (auto& x : b.c) x = scalar();
  return b;
}

Vec3<Q> RandomRationals::unit3() {
  // Inverse stereographic projection of a rational point of the plane.
  const Q t = scalar(), s = scalar();
  const Q n = t * t + s * s + Q(1);
  return {Q(2) * t / n, Q(2) * s / n, (t * t + s * s - Q(1)) / n};
}

AlmostComplexStructure<Q> RandomRationals::complex_structure(Side side) {
  return AlmostComplexStructure<Q>(bivector_to_endo(from_side_coords(unit3(), side)));
}

Matrix<Q> RandomRationals::rotation() {
  Matrix<Q> a(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      a(i, j) = scalar(1, 2);
      a(j, i) = -a(i, j);
    }
  const Matrix<Q> id = Matrix<Q>::identity(4);
  return (id - a) * *solve(Matrix<Q>(id + a), id);
}

MetricLieAlgebra<Q> RandomRationals::algebra() {
  std::uniform_int_distribution<int> pick(0, 5);
  MetricLieAlgebra<Q> g;
  switch (pick(rng_)) {
    case 0: g = abelian<Q>(); break;
    case 1: g = type2<Q>(nonzero(3, 2)); break;
    case 2: {
      Q alpha = scalar(3, 2);
      g = type3<Q>(alpha < Q(0) ? -alpha : alpha);
      break;
    }
    case 3: g = type4<Q>(scalar(3, 2), scalar(3, 2)); break;
    case 4: g = type6<Q>(); break;
    default: g = gab<Q>(scalar(3, 2), scalar(3, 2)); break;
  }
  return change_frame(g, rotation());
}

IdentityResult check_adjoint(RandomRationals& rr, std::size_t trials) {
  std::uniform_int_distribution<int> grade(1, 4);
  return run("adjoint", trials, [&]() -> std::string {
    const int k = grade(rr.engine());
    const Form<Q> a = rr.form(k), b = rr.form(k - 1);
    const Vector4<Q> x = rr.vector();
    if (inner(interior(x, a), b) != inner(a, wedge(Form<Q>::vector(x), b))) return "grade " + std::to_string(k);
    return {};
  });
}

IdentityResult check_dual(RandomRationals& rr, std::size_t trials) {
  std::uniform_int_distribution<int> grade(0, 4);
  return run("dual", trials, [&]() -> std::string {
    const int k = grade(rr.engine());
    const Form<Q> a = rr.form(k);
    const Vector4<Q> x = rr.vector();
    const Form<Q> xf = Form<Q>::vector(x);
    const Q sign1(k % 2 == 0 ? 1 : -1);
    if (interior(x, hodge(a)) != sign1 * hodge(wedge(xf, a))) return "interior form, grade " + std::to_string(k);
    if (wedge(xf, hodge(a)) != Q(-1) * sign1 * hodge(interior(x, a)))
      return "exterior form, grade " + std::to_string(k);
    return {};
  });
}

IdentityResult check_sum(RandomRationals& rr, std::size_t trials) {
  std::uniform_int_distribution<int> grade(0, 4);
  return run("sum", trials, [&]() -> std::string {
    const int k = grade(rr.engine());
    const Form<Q> a = rr.form(k);
    if (k >= 1) {
      Form<Q> s(k);
      for (int i = 0; i < 4; ++i) s += wedge(Form<Q>::vector(e(i)), interior(e(i), a));
      if (s != Q(k) * a) return "e_i ^ (e_i _| a), grade " + std::to_string(k);
    }
    if (k <= 3) {
      Form<Q> s(k);
      for (int i = 0; i < 4; ++i) s += interior(e(i), wedge(Form<Q>::vector(e(i)), a));
      if (s != Q(4 - k) * a) return "e_i _| (e_i ^ a), grade " + std::to_string(k);
    }
    return {};
  });
}

IdentityResult check_commutator(RandomRationals& rr, std::size_t trials) {
  return run("commutator", trials, [&]() -> std::string {
    const Bivector<Q> alpha = rr.bivector();
    const Vector4<Q> x = rr.vector(), y = rr.vector();
    const Bivector<Q> lhs = bivector_commutator(alpha, wedge(x, y));
    const Bivector<Q> rhs = wedge(apply(alpha, x), y) + wedge(x, apply(alpha, y));
    if (lhs != rhs) return "alpha = " + alpha.str();
    return {};
  });
}

IdentityResult check_side_preserved(RandomRationals& rr, std::size_t trials) {
  return run("side-preserved", trials, [&]() -> std::string {
    for (Side side : {Side::plus, Side::minus}) {
      const Bivector<Q> alpha = from_side_coords(Vec3<Q>{rr.scalar(), rr.scalar(), rr.scalar()}, side);
      const Vector4<Q> x = rr.vector(), y = rr.vector();
      const Bivector<Q> r = wedge(apply(alpha, x), y) + wedge(x, apply(alpha, y));
      if (!from_side_coords(side_coords(r, opposite(side)), opposite(side)).is_zero())
        return std::string("leaves L2 ") + side_name(side);
    }
    return {};
  });
}

IdentityResult check_sides_commute(RandomRationals& rr, std::size_t trials) {
  return run("sides-commute", trials, [&]() -> std::string {
    auto rand3 = [&] { return Vec3<Q>{rr.scalar(), rr.scalar(), rr.scalar()}; };
    const Bivector<Q> p1 = from_side_coords(rand3(), Side::plus), p2 = from_side_coords(rand3(), Side::plus);
    const Bivector<Q> m1 = from_side_coords(rand3(), Side::minus), m2 = from_side_coords(rand3(), Side::minus);
    if (!bivector_commutator(p1, m1).is_zero()) return "[L2+, L2-] != 0";
    if (project(bivector_commutator(p1, p2), Side::minus) != Bivector<Q>{}) return "[L2+, L2+] leaves L2+";
    if (project(bivector_commutator(m1, m2), Side::plus) != Bivector<Q>{}) return "[L2-, L2-] leaves L2-";
    return {};
  });
}

IdentityResult check_cyclic_projection(RandomRationals& rr, std::size_t trials) {
  return run("cyclic-projection", trials, [&]() -> std::string {
    const Vector4<Q> x = rr.vector(), y = rr.vector(), th = rr.vector();
    auto p = [](const Vector4<Q>& a, const Vector4<Q>& b) { return project(wedge(a, b), Side::plus); };
    // Genuinely cyclic in (X, Y, theta): the third term is (theta ^ X)_+(Y).
    const Vector4<Q> lhs = apply(p(x, y), th) + apply(p(y, th), x) + apply(p(th, x), y);
    const Vector4<Q> rhs = Q(3, 2) * interior(th, hodge(wedge(x, y).to_form())).as_vector();
    if (lhs != rhs) return "residual " + Form<Q>::vector(lhs - rhs).str();
    return {};
  });
}

IdentityResult check_complex_structure_star(RandomRationals& rr, std::size_t trials) {
  return run("complex-structure-star", trials, [&]() -> std::string {
    const auto j = rr.complex_structure(Side::minus);
    const Bivector<Q> omega = j.fundamental_form();
    const Vector4<Q> x = rr.vector(), y = rr.vector();
    const Bivector<Q> r = hodge(wedge(x, y)) - wedge(j(x), j(y)) + evaluate(omega, x, y) * omega;
    if (!r.is_zero()) return "Omega = " + omega.str() + ", residual " + r.str();
    return {};
  });
}

IdentityResult check_decomposable_norm(RandomRationals& rr, std::size_t trials) {
  return run("decomposable-norm", trials, [&]() -> std::string {
    const Bivector<Q> b = wedge(rr.vector(), rr.vector());
    const Bivector<Q> p = project(b, Side::plus), m = project(b, Side::minus);
    if (inner(p, p) != inner(m, m)) return "X^theta = " + b.str();
    return {};
  });
}

IdentityResult check_bianchi(RandomRationals& rr, std::size_t trials) {
  return run("bianchi", trials, [&]() -> std::string {
    const auto g = rr.algebra();
    const auto cd = riemann(g);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
          const Vector4<Q> b = apply(cd.endo[z(i)][z(j)], e(k)) + apply(cd.endo[z(j)][z(k)], e(i)) +
                               apply(cd.endo[z(k)][z(i)], e(j));
          if (!b.is_zero()) return g.label() + " at (" + std::to_string(i + 1) + std::to_string(j + 1) +
                                   std::to_string(k + 1) + ")";
        }
    if (cd.curvature_operator != cd.curvature_operator.transpose()) return g.label() + ": operator not symmetric";
    return {};
  });
}

IdentityResult check_reconstruction(RandomRationals& rr, std::size_t trials, Fault fault) {
  return run("reconstruction", trials, [&]() -> std::string {
    const auto g = rr.algebra();
    const auto cd = riemann(g);
    Matrix<Q> rebuilt = curvature_decomposition(cd);
    if (fault == Fault::reconstruction_sign) rebuilt -= tilde_map(cd.ric0);
    if (rebuilt != cd.curvature_operator) return g.label() + ": S/12 + Ric0~/2 + W+ + W- differs";
    if (cd.w_plus.trace() != Q(0) || cd.w_minus.trace() != Q(0)) return g.label() + ": Weyl block not trace-free";
    if (!cd.w_plus.is_symmetric() || !cd.w_minus.is_symmetric()) return g.label() + ": Weyl block not symmetric";
    return {};
  });
}

IdentityResult check_curvature_sign(RandomRationals& rr, std::size_t trials) {
  return run("curvature-sign", trials, [&]() -> std::string {
    const auto g = rr.algebra();
    const std::string err = curvature_sign_selftest(riemann(g));
    return err.empty() ? std::string{} : g.label() + ": " + err;
  });
}

template <Scalar S>
Bivector<S> d_theta_derivative_residual(const CurvatureData<S>& cd, const Vector4<S>& theta, int i) {
  const auto& gam = cd.connection.gamma;
  Endo4<S> a(4, 4);
  for (int k = 0; k < 4; ++k) {
    const Vector4<S> col = apply(gam[z(k)], theta);
    for (int r = 0; r < 4; ++r) a(z(r), z(k)) = col[r];
  }
  const Endo4<S> q = (a + a.transpose()) * S(S(1) / S(2));
  const Endo4<S> d = a - a.transpose();
  const Vector4<S> ei = Vector4<S>::basis(i);
  Bivector<S> dq;
  for (int j = 0; j < 4; ++j) dq += wedge(Vector4<S>::basis(j), apply(commutator(gam[z(j)], q), ei));
  return endo_to_bivector(commutator(gam[z(i)], d)) - S(2) * dq - S(2) * endo_to_bivector(cd.curvature(ei, theta));
}

IdentityResult check_d_theta_derivative(RandomRationals& rr, std::size_t trials) {
  return run("d-theta-derivative", trials, [&]() -> std::string {
    const auto g = rr.algebra();
    const auto cd = riemann(g);
    const Vector4<Q> theta = rr.vector();
    // The skew part of nabla theta is half of d theta.
    Endo4<Q> a(4, 4);
    for (int k = 0; k < 4; ++k) {
      const Vector4<Q> col = cd.connection.nabla(k, theta);
      for (int r = 0; r < 4; ++r) a(z(r), z(k)) = col[r];
    }
    if (endo_to_bivector(Endo4<Q>(a - a.transpose())).to_form() != ce_d(Form<Q>::vector(theta), g))
      return g.label() + ": d theta != 2 skew(nabla theta)";
    for (int i = 0; i < 4; ++i)
      if (!d_theta_derivative_residual(cd, theta, i).is_zero())
        return g.label() + ": residual at e" + std::to_string(i + 1);
    return {};
  });
}

IdentityResult check_d_squared(RandomRationals& rr, std::size_t trials) {
  return run("d-squared", trials, [&]() -> std::string {
    const auto g = rr.algebra();
    for (int k = 0; k <= 2; ++k)
      if (!ce_d(ce_d(rr.form(k), g), g).is_zero()) return g.label() + ": grade " + std::to_string(k);
    return {};
  });
}

IdentityResult check_weyl_eigenstructure(RandomRationals& rr, std::size_t trials) {
  return run("weyl-eigenstructure", trials, [&]() -> std::string {
    const Q a = rr.scalar(3, 3), b = rr.scalar(3, 3);
    const auto g = gab<Q>(a, b);
    const auto rep = weyl_eigenstructure_check(riemann(g), gab_complex_structure<Q>(1).fundamental_form());
    if (!rep.holds) return "gab(" + a.str() + "," + b.str() + ")";
    return {};
  });
}

IdentityResult check_kahler_weyl(RandomRationals& rr, std::size_t trials) {
  return run("kahler-weyl", trials, [&]() -> std::string {
    const Q b = rr.scalar();
    const auto g = gab<Q>(Q(1, 2), b);
    const auto cd = riemann(g);
    const auto j = gab_complex_structure<Q>(-1);
    const Bivector<Q> omega = j.fundamental_form();
    const Side side = j.side();
    const Vector4<Q> x = rr.vector(), y = rr.vector();
    const Bivector<Q> xy = wedge(x, y);
    const Bivector<Q> lhs = apply6(embed_side_block(cd.weyl(side), side), xy);
    const Bivector<Q> rhs =
        Q(-cd.scalar / Q(12)) * project(xy, side) + Q(cd.scalar / Q(8) * evaluate(omega, x, y)) * omega;
    if (lhs != rhs) return "gab(1/2," + b.str() + ")";
    return {};
  });
}

std::vector<IdentityResult> run_identity_suite(std::uint64_t seed, std::size_t trials, Fault fault) {
  RandomRationals rr(seed);
  return {check_adjoint(rr, trials),
          check_dual(rr, trials),
          check_sum(rr, trials),
          check_commutator(rr, trials),
          check_side_preserved(rr, trials),
          check_sides_commute(rr, trials),
          check_cyclic_projection(rr, trials),
          check_complex_structure_star(rr, trials),
          check_decomposable_norm(rr, trials),
          check_bianchi(rr, trials),
          check_reconstruction(rr, trials, fault),
          check_curvature_sign(rr, trials),
          check_d_theta_derivative(rr, trials),
          check_d_squared(rr, trials),
          check_weyl_eigenstructure(rr, trials),
          check_kahler_weyl(rr, trials)};
}

template Bivector<Rational> d_theta_derivative_residual(const CurvatureData<Rational>&, const Vector4<Rational>&,
                                                        int);
template Bivector<double> d_theta_derivative_residual(const CurvatureData<double>&, const Vector4<double>&, int);

}  // namespace ckf
