#include "ckforms/curvature.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ckf {

namespace {

constexpr std::size_t z(int i) { return static_cast<std::size_t>(i); }

}  // namespace

template <Scalar S>
ConnectionCoeffs<S> levi_civita(const MetricLieAlgebra<S>& g) {
  ConnectionCoeffs<S> conn;
  for (int i = 0; i < 4; ++i) {
    Endo4<S> m(4, 4);
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        const S v = g.structure(i, j, k) - g.structure(j, k, i) + g.structure(k, i, j);
        m(z(k), z(j)) = v / S(2);
      }
    if (!m.is_skew({}, g.scale())) throw std::logic_error("Levi-Civita coefficients are not skew");
    conn.gamma[z(i)] = std::move(m);
  }
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const Vector4<S> torsion =
          conn.nabla(i, Vector4<S>::basis(j)) - conn.nabla(j, Vector4<S>::basis(i)) - g.bracket(i, j);
      if (!torsion.is_zero({}, g.scale())) throw std::logic_error("Levi-Civita connection has torsion");
    }
  return conn;
}

template <Scalar S>
Endo4<S> CurvatureData<S>::curvature(const Vector4<S>& x, const Vector4<S>& y) const {
  Endo4<S> out(4, 4);
  for (int i = 0; i < 4; ++i) {
    if (exactly_zero(x[i])) continue;
    for (int j = 0; j < 4; ++j) {
      if (i == j || exactly_zero(y[j])) continue;
      Endo4<S> term = endo[z(i)][z(j)];
      term *= S(x[i] * y[j]);
      out += term;
    }
  }
  return out;
}

template <Scalar S>
CurvatureData<S> riemann(const MetricLieAlgebra<S>& g) {
  CurvatureData<S> cd;
  cd.connection = levi_civita(g);
  const auto& gam = cd.connection.gamma;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Endo4<S> r = commutator(gam[z(i)], gam[z(j)]);
      for (int k = 0; k < 4; ++k) {
        const S& c = g.structure(i, j, k);
        if (exactly_zero(c)) continue;
        Endo4<S> t = gam[z(k)];
        t *= c;
        r -= t;
      }
      cd.endo[z(i)][z(j)] = std::move(r);
    }

  cd.curvature_operator = Matrix<S>(6, 6);
  for (int p = 0; p < 6; ++p) {
    const auto [i, j] = pair_at(p);
    const Bivector<S> col = endo_to_bivector(Endo4<S>(-cd.endo[z(i)][z(j)]));
    for (int q = 0; q < 6; ++q) cd.curvature_operator(z(q), z(p)) = col[q];
  }

  cd.ric = Matrix<S>(4, 4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      S s(0);
      for (int i = 0; i < 4; ++i) s += cd.endo[z(i)][z(a)](z(i), z(b));
      cd.ric(z(a), z(b)) = s;
    }
  cd.scalar = cd.ric.trace();
  cd.ric0 = cd.ric - Matrix<S>::identity(4) * S(cd.scalar / S(4));
  auto w = weyl_blocks(cd.curvature_operator, cd.scalar);
  cd.w_plus = std::move(w.plus);
  cd.w_minus = std::move(w.minus);
  cd.scale = std::max(1.0, cd.curvature_operator.max_abs());
  return cd;
}

template <Scalar S>
WeylBlocks<S> weyl_blocks(const Matrix<S>& op, const S& scalar) {
  const Matrix<S> shift = Matrix<S>::identity(3) * S(scalar / S(12));
  return {side_block(op, Side::plus, Side::plus) - shift, side_block(op, Side::minus, Side::minus) - shift};
}

template <Scalar S>
Matrix<S> curvature_decomposition(const CurvatureData<S>& cd) {
  Matrix<S> out = Matrix<S>::identity(6) * S(cd.scalar / S(12));
  out += tilde_map(cd.ric0) * S(S(1) / S(2));
  out += embed_side_block(cd.w_plus, Side::plus);
  out += embed_side_block(cd.w_minus, Side::minus);
  return out;
}

template <Scalar S>
GeometryFlags flags(const CurvatureData<S>& cd, const Tolerance& tol) {
  GeometryFlags f;
  f.flat = std::all_of(cd.endo.begin(), cd.endo.end(), [&](const auto& row) {
    return std::all_of(row.begin(), row.end(), [&](const Endo4<S>& m) { return m.is_zero(tol, cd.scale); });
  });
  f.einstein = cd.ric0.is_zero(tol, ScalarTraits<S>::magnitude(cd.scalar));
  f.half_cf_plus = cd.w_plus.is_zero(tol, cd.scale);
  f.half_cf_minus = cd.w_minus.is_zero(tol, cd.scale);
  f.conformally_flat = f.half_cf_plus && f.half_cf_minus;
  return f;
}

template <Scalar S>
std::array<Endo4<S>, 4> cov_deriv_endo(const Endo4<S>& a, const ConnectionCoeffs<S>& conn) {
  std::array<Endo4<S>, 4> out;
  for (int i = 0; i < 4; ++i) out[z(i)] = commutator(conn.gamma[z(i)], a);
  return out;
}

template <Scalar S>
std::array<Matrix<S>, 4> cov_deriv_side(const Matrix<S>& w, Side side, const ConnectionCoeffs<S>& conn) {
  std::array<Matrix<S>, 4> out;
  for (int i = 0; i < 4; ++i) out[z(i)] = commutator(side_adjoint(conn.gamma[z(i)], side), w);
  return out;
}

template <Scalar S>
std::string curvature_sign_selftest(const CurvatureData<S>& cd, const Tolerance& tol) {
  std::ostringstream err;
  const Vector4<S> x{{S(1), S(2), S(-1), S(3)}};
  const Vector4<S> y{{S(0), S(1), S(1), S(-2)}};
  const Bivector<S> xy = wedge(x, y);
  std::vector<S> xy6(xy.c.begin(), xy.c.end());
  const auto image = cd.curvature_operator.apply(xy6);
  Bivector<S> rxy;
  for (int k = 0; k < 6; ++k) rxy[k] = image[z(k)];
  const double sc = cd.scale * 100.0;
  if (!(cd.curvature(x, y) + bivector_to_endo(rxy)).is_zero(tol, sc))
    err << "R_{X,Y} != -R(X^Y) on a generic pair; ";
  // g(R(X^Y), Z^V) = g(R_{Y,X} Z, V) on frame bivectors.
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q) {
      const auto [i, j] = pair_at(p);
      const auto [k, l] = pair_at(q);
      const S& lhs = cd.curvature_operator(z(q), z(p));
      const S& rhs = cd.endo[z(j)][z(i)](z(l), z(k));
      if (!is_zero(S(lhs - rhs), tol, cd.scale)) {
        err << "g(R(X^Y),Z^V) != g(R_{Y,X}Z,V) at e" << i + 1 << j + 1 << ", e" << k + 1 << l + 1 << "; ";
        p = q = 6;
      }
    }
  if (!(cd.curvature_operator - cd.curvature_operator.transpose()).is_zero(tol, cd.scale))
    err << "curvature operator not symmetric; ";
  if (!(curvature_decomposition(cd) - cd.curvature_operator).is_zero(tol, cd.scale))
    err << "curvature operator != S/12 + Ric0~/2 + W; ";
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        const Vector4<S> ek = Vector4<S>::basis(k), ei = Vector4<S>::basis(i), ej = Vector4<S>::basis(j);
        const Vector4<S> b = apply(cd.endo[z(i)][z(j)], ek) + apply(cd.endo[z(j)][z(k)], ei) +
                             apply(cd.endo[z(k)][z(i)], ej);
        if (!b.is_zero(tol, cd.scale)) {
          err << "first Bianchi identity fails at (" << i + 1 << "," << j + 1 << "," << k + 1 << "); ";
          return err.str();
        }
      }
  return err.str();
}

#define CKF_INSTANTIATE_CURVATURE(S)                                                                  \
  template struct CurvatureData<S>;                                                                   \
  template ConnectionCoeffs<S> levi_civita(const MetricLieAlgebra<S>&);                               \
  template CurvatureData<S> riemann(const MetricLieAlgebra<S>&);                                      \
  template WeylBlocks<S> weyl_blocks(const Matrix<S>&, const S&);                                     \
  template Matrix<S> curvature_decomposition(const CurvatureData<S>&);                                \
  template GeometryFlags flags(const CurvatureData<S>&, const Tolerance&);                            \
  template std::array<Endo4<S>, 4> cov_deriv_endo(const Endo4<S>&, const ConnectionCoeffs<S>&);       \
  template std::array<Matrix<S>, 4> cov_deriv_side(const Matrix<S>&, Side, const ConnectionCoeffs<S>&); \
  template std::string curvature_sign_selftest(const CurvatureData<S>&, const Tolerance&);

CKF_INSTANTIATE_CURVATURE(Rational)
CKF_INSTANTIATE_CURVATURE(double)

}  // namespace ckf
