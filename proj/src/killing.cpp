#include "ckforms/killing.hpp"

#include <algorithm>

namespace ckf {

namespace {

constexpr std::size_t z(int i) { return static_cast<std::size_t>(i); }

template <Scalar S>
std::vector<S> flatten(const Matrix<S>& m) {
  return m.flat();
}

template <Scalar S>
Matrix<S> unflatten(const std::vector<S>& v, std::size_t n) {
  return Matrix<S>::from_flat(n, n, v);
}

template <Scalar S>
Bivector<S> wedge_side(int i, const Vector4<S>& theta, Side side) {
  return project(wedge(Vector4<S>::basis(i), theta), side);
}

/// Curvature derivatives shared by the rows of the Killing connection.
template <Scalar S>
struct RowContext {
  const CurvatureData<S>& cd;
  Side side;
  Side other;
  std::array<Endo4<S>, 4> d_ric0;
  std::array<Matrix<S>, 4> d_weyl;
  std::array<Matrix<S>, 4> ad_side;
  std::array<Matrix<S>, 4> ad_other;

  RowContext(const CurvatureData<S>& c, Side s)
      : cd(c),
        side(s),
        other(opposite(s)),
        d_ric0(cov_deriv_endo(c.ric0, c.connection)),
        d_weyl(cov_deriv_side(c.weyl(s), s, c.connection)) {
    for (int i = 0; i < 4; ++i) {
      ad_side[z(i)] = side_adjoint(c.connection.gamma[z(i)], side);
      ad_other[z(i)] = side_adjoint(c.connection.gamma[z(i)], other);
    }
  }

  Bivector<S> sigma_source(int i, const CKSection<S>& s) const {
    const Vector4<S> ei = Vector4<S>::basis(i);
    const Endo4<S> om = bivector_to_endo(from_side_coords(s.omega, side));
    const Matrix<S>& w = cd.weyl(side);
    Bivector<S> e;
    for (int j = 0; j < 4; ++j) {
      const Vector4<S> ej = Vector4<S>::basis(j);
      e += wedge(ej, apply(commutator(d_ric0[z(j)], om), ei));
      e += wedge(ej, apply(commutator(cd.ric0, bivector_to_endo(wedge_side(j, s.theta, side))), ei));
    }
    e += S(2) * endo_to_bivector(cd.curvature(ei, s.theta));
    const Bivector<S> eith = wedge_side(i, s.theta, side);
    e += S(cd.scalar / S(6)) * eith;
    e -= from_side_coords(apply3(d_weyl[z(i)], s.omega), side);
    e -= from_side_coords(apply3(w, side_coords(eith, side)), side);
    return e;
  }

  CKSection<S> apply_row(int i, const CKSection<S>& s) const {
    const Endo4<S>& gi = cd.connection.gamma[z(i)];
    const Vector4<S> ei = Vector4<S>::basis(i);
    const Bivector<S> om = from_side_coords(s.omega, side);
    const Bivector<S> sg = from_side_coords(s.sigma, other);
    CKSection<S> out;

    const Vec3<S> a = apply3(ad_side[z(i)], s.omega);
    const Vec3<S> b = side_coords(wedge(ei, s.theta), side);
    for (std::size_t k = 0; k < 3; ++k) out.omega[k] = a[k] - b[k];

    const Bivector<S> t = S(-cd.scalar / S(6)) * om + from_side_coords(apply3(cd.weyl(side), s.omega), side);
    const Vector4<S> pull =
        apply(commutator(cd.ric0, bivector_to_endo(om)), ei) + apply(t, ei) + apply(sg, ei);
    out.theta = apply(gi, s.theta) - S(S(1) / S(2)) * pull;

    const Vec3<S> c = apply3(ad_other[z(i)], s.sigma);
    const Vec3<S> d = side_coords(sigma_source(i, s), other);
    for (std::size_t k = 0; k < 3; ++k) out.sigma[k] = c[k] - d[k];
    return out;
  }
};

}  // namespace

template <Scalar S>
std::vector<S> CKSection<S>::stack() const {
  std::vector<S> v;
  v.reserve(kSectionDim);
  v.insert(v.end(), omega.begin(), omega.end());
  v.insert(v.end(), theta.c.begin(), theta.c.end());
  v.insert(v.end(), sigma.begin(), sigma.end());
  return v;
}

template <Scalar S>
CKSection<S> CKSection<S>::unstack(const std::vector<S>& v) {
  if (v.size() != kSectionDim) throw std::invalid_argument("section vector must have 10 entries");
  CKSection s;
  for (std::size_t k = 0; k < 3; ++k) s.omega[k] = v[k];
  for (int k = 0; k < 4; ++k) s.theta[k] = v[3 + z(k)];
  for (std::size_t k = 0; k < 3; ++k) s.sigma[k] = v[7 + k];
  return s;
}

template <Scalar S>
KillingConnection<S> build_killing_connection(const MetricLieAlgebra<S>& g, const CurvatureData<S>& cd, Side side) {
  KillingConnection<S> kc{side, {}, g};
  const RowContext<S> ctx(cd, side);
  for (int i = 0; i < 4; ++i) {
    Matrix<S> m(kSectionDim, kSectionDim);
    for (std::size_t col = 0; col < kSectionDim; ++col) {
      std::vector<S> unit(kSectionDim, S(0));
      unit[col] = S(1);
      const auto image = ctx.apply_row(i, CKSection<S>::unstack(unit)).stack();
      for (std::size_t r = 0; r < kSectionDim; ++r) m(r, col) = image[r];
    }
    kc.gamma[z(i)] = std::move(m);
  }
  return kc;
}

template <Scalar S>
Bivector<S> sigma_row_source(const CurvatureData<S>& cd, Side side, int i, const CKSection<S>& s) {
  return RowContext<S>(cd, side).sigma_source(i, s);
}

template <Scalar S>
HolonomyResult<S> holonomy_parallel_dim(const std::array<Matrix<S>, 4>& gamma, const MetricLieAlgebra<S>& g,
                                        const Tolerance& tol) {
  const std::size_t n = gamma[0].rows();
  SpanBuilder<S> span(n * n, tol);
  std::vector<Matrix<S>> frontier;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      Matrix<S> k = commutator(gamma[z(i)], gamma[z(j)]);
      for (int l = 0; l < 4; ++l)
        if (!exactly_zero(g.structure(i, j, l))) k -= gamma[z(l)] * g.structure(i, j, l);
      if (const auto* p = span.insert(flatten(k))) frontier.push_back(unflatten(*p, n));
    }

  HolonomyResult<S> out;
  constexpr std::size_t kMaxRounds = 100;
  while (!frontier.empty()) {
    if (++out.iterations > kMaxRounds) throw std::logic_error("holonomy closure did not stabilize");
    std::vector<Matrix<S>> next;
    for (const auto& a : frontier)
      for (int l = 0; l < 4; ++l)
        if (const auto* p = span.insert(flatten(commutator(gamma[z(l)], a)))) next.push_back(unflatten(*p, n));
    frontier = std::move(next);
  }
  if (span.dim() > n * n) throw std::logic_error("holonomy span exceeds the matrix space");

  for (const auto& v : span.basis()) out.generators.push_back(unflatten(v, n));
  out.low_confidence = span.low_confidence();
  if (out.generators.empty()) {
    out.parallel_dim = n;
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<S> e(n, S(0));
      e[k] = S(1);
      out.kernel.push_back(std::move(e));
    }
    return out;
  }
  auto ker = kernel(vstack(out.generators, n), tol);
  out.parallel_dim = n - ker.rank;
  out.kernel = std::move(ker.kernel);
  out.low_confidence = out.low_confidence || ker.low_confidence;
  return out;
}

template <Scalar S>
std::size_t invariant_kernel_dim(const std::array<Matrix<S>, 4>& gamma, const MetricLieAlgebra<S>& g,
                                 const Tolerance& tol) {
  const std::size_t n = gamma[0].rows();
  SpanBuilder<S> rows(n, tol);
  std::vector<std::vector<S>> frontier;
  auto add_row = [&](std::vector<S> r) {
    if (const auto* p = rows.insert(std::move(r))) frontier.push_back(*p);
  };
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      Matrix<S> k = commutator(gamma[z(i)], gamma[z(j)]);
      for (int l = 0; l < 4; ++l)
        if (!exactly_zero(g.structure(i, j, l))) k -= gamma[z(l)] * g.structure(i, j, l);
      for (std::size_t r = 0; r < n; ++r) {
        std::vector<S> row(n);
        for (std::size_t c = 0; c < n; ++c) row[c] = k(r, c);
        add_row(std::move(row));
      }
    }
  // A constraint c on V also constrains every gamma_l v for v in V.
  while (!frontier.empty()) {
    auto current = std::move(frontier);
    frontier.clear();
    for (const auto& c : current)
      for (int l = 0; l < 4; ++l) {
        std::vector<S> row(n, S(0));
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) row[b] += c[a] * gamma[z(l)](a, b);
        add_row(std::move(row));
      }
  }
  return n - rows.dim();
}

template <Scalar S>
CkDims ck_dims(const MetricLieAlgebra<S>& g, const CurvatureData<S>& cd, const Tolerance& tol) {
  CkDims d;
  for (Side side : {Side::plus, Side::minus}) {
    const auto h = holonomy_parallel_dim(build_killing_connection(g, cd, side), tol);
    (side == Side::plus ? d.plus : d.minus) = h.parallel_dim;
    d.low_confidence = d.low_confidence || h.low_confidence;
  }
  return d;
}

template <Scalar S>
CkDims ck_dims(const MetricLieAlgebra<S>& g, const Tolerance& tol) {
  return ck_dims(g, riemann(g), tol);
}

template <Scalar S>
InvariantCkResult<S> invariant_ck_solve(const MetricLieAlgebra<S>& g, Side side, const Tolerance& tol) {
  const auto conn = levi_civita(g);
  Matrix<S> sys(12, 7);
  for (int i = 0; i < 4; ++i) {
    const Matrix<S> ad = side_adjoint(conn.gamma[z(i)], side);
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = 0; b < 3; ++b) sys(z(i) * 3 + a, b) = ad(a, b);
    }
    for (int k = 0; k < 4; ++k) {
      const Vec3<S> w = side_coords(wedge(Vector4<S>::basis(i), Vector4<S>::basis(k)), side);
      for (std::size_t a = 0; a < 3; ++a) sys(z(i) * 3 + a, 3 + z(k)) = -w[a];
    }
  }
  InvariantCkResult<S> out;
  out.side = side;
  for (const auto& v : kernel(sys, tol).kernel) {
    InvariantSolution<S> s;
    for (std::size_t a = 0; a < 3; ++a) s.omega[a] = v[a];
    for (int k = 0; k < 4; ++k) s.theta[k] = v[3 + z(k)];
    if (!s.theta.is_zero(tol)) out.all_theta_zero = false;
    out.basis.push_back(s);
  }
  return out;
}

const char* hypothesis_name(TsdHypothesis h) {
  switch (h) {
    case TsdHypothesis::not_einstein: return "einstein";
    case TsdHypothesis::not_kahler: return "kahler";
    case TsdHypothesis::weyl_nonzero: return "weyl_vanishing";
  }
  return "unknown";
}

TsdHypothesisError::TsdHypothesisError(TsdHypothesis h, const std::string& detail)
    : std::runtime_error(std::string("hypothesis '") + hypothesis_name(h) + "' fails: " + detail), h_(h) {}

template <Scalar S>
TsdConnection<S> tsd_connection(const MetricLieAlgebra<S>& g, const AlmostComplexStructure<S>& j,
                                const Tolerance& tol) {
  const CurvatureData<S> cd = riemann(g);
  const GeometryFlags fl = flags(cd, tol);
  if (!fl.einstein) throw TsdHypothesisError(TsdHypothesis::not_einstein, "Ric0 is nonzero");
  const LckReport<S> lck = lck_check(j, g, tol);
  if (!lck.integrable) throw TsdHypothesisError(TsdHypothesis::not_kahler, "J is not integrable");
  if (!lck.is_kahler) throw TsdHypothesisError(TsdHypothesis::not_kahler, "dOmega = " + lck.d_omega.str());
  TsdConnection<S> t;
  t.side = opposite(j.side());
  if (!cd.weyl(t.side).is_zero(tol, cd.scale))
    throw TsdHypothesisError(TsdHypothesis::weyl_nonzero,
                             std::string("W") + (t.side == Side::plus ? "+" : "-") + " is nonzero");

  const Bivector<S> omega_k = j.fundamental_form();
  const S quarter = cd.scalar / S(4), twelfth = cd.scalar / S(12);
  for (int i = 0; i < 4; ++i) {
    const Endo4<S>& gi = cd.connection.gamma[z(i)];
    const Matrix<S> ad = side_adjoint(gi, t.side);
    const Vector4<S> ei = Vector4<S>::basis(i);
    const Vector4<S> jei = j(ei);
    Matrix<S> m(8, 8);
    for (std::size_t b = 0; b < 3; ++b) {
      Vec3<S> w{S(0), S(0), S(0)};
      w[b] = S(1);
      for (std::size_t a = 0; a < 3; ++a) m(a, b) = ad(a, b);
      const Vector4<S> v = apply(from_side_coords(w, t.side), ei);
      for (int r = 0; r < 4; ++r) m(3 + z(r), b) = twelfth * v[r];
    }
    for (int k = 0; k < 4; ++k) {
      const Vector4<S> ek = Vector4<S>::basis(k);
      const Vec3<S> w = side_coords(wedge(ei, ek), t.side);
      for (std::size_t a = 0; a < 3; ++a) m(a, 3 + z(k)) = -w[a];
      for (int r = 0; r < 4; ++r) m(3 + z(r), 3 + z(k)) = gi(z(r), z(k));
      m(7, 3 + z(k)) = quarter * evaluate(omega_k, ei, ek);
    }
    for (int r = 0; r < 4; ++r) m(3 + z(r), 7) = -jei[r] / S(2);
    t.gamma[z(i)] = std::move(m);
  }

  t.flat = true;
  for (int i = 0; i < 4; ++i)
    for (int k = i + 1; k < 4; ++k) {
      Matrix<S> c = commutator(t.gamma[z(i)], t.gamma[z(k)]);
      for (int l = 0; l < 4; ++l)
        if (!exactly_zero(g.structure(i, k, l))) c -= t.gamma[z(l)] * g.structure(i, k, l);
      if (!c.is_zero(tol, cd.scale * g.scale())) t.flat = false;
      t.curvature.push_back(std::move(c));
    }
  t.parallel_dim = holonomy_parallel_dim(t.gamma, g, tol).parallel_dim;
  t.metric_flat = fl.flat;
  if (t.metric_flat)
    t.note = "metric is flat (S = 0); the non-flat hypothesis is not met and the count is degenerate";
  return t;
}

template <Scalar S>
WeylEigenReport<S> weyl_eigenstructure_check(const CurvatureData<S>& cd, const Bivector<S>& omega,
                                             const Tolerance& tol) {
  const auto split = sd_asd_split(omega);
  auto zero3 = [&](const Vec3<S>& v) {
    return std::all_of(v.begin(), v.end(), [&](const S& x) { return is_zero(x, tol); });
  };
  const bool plus_zero = zero3(split.sd), minus_zero = zero3(split.asd);
  if (plus_zero == minus_zero)
    throw std::invalid_argument("omega must be a nonzero form on exactly one side");
  WeylEigenReport<S> r;
  r.side = plus_zero ? Side::minus : Side::plus;
  const Vec3<S>& w = plus_zero ? split.asd : split.sd;
  const Matrix<S>& weyl = cd.weyl(r.side);
  const Vec3<S> ww = apply3(weyl, w);
  S n2(0), q(0);
  for (std::size_t a = 0; a < 3; ++a) {
    n2 += w[a] * w[a];
    q += ww[a] * w[a];
  }
  r.lambda = q / n2;
  const double sc = cd.scale * std::max(1.0, ScalarTraits<S>::magnitude(n2));
  r.is_eigenvector = true;
  for (std::size_t a = 0; a < 3; ++a)
    if (!is_zero(S(ww[a] - r.lambda * w[a]), tol, sc)) r.is_eigenvector = false;
  r.holds = true;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      const S lhs = S(2) * n2 * weyl(a, b);
      const S rhs = r.lambda * (S(3) * w[a] * w[b] - (a == b ? n2 : S(0)));
      if (!is_zero(S(lhs - rhs), tol, sc * ScalarTraits<S>::magnitude(n2))) r.holds = false;
    }
  return r;
}

const char* case_name(TheoremCase c) {
  switch (c) {
    case TheoremCase::case1: return "1";
    case TheoremCase::case2: return "2";
    case TheoremCase::case3: return "3";
    case TheoremCase::none: return "none";
  }
  return "none";
}

template <Scalar S>
Classification<S> classify_theorem_main(const MetricLieAlgebra<S>& g, const CurvatureData<S>& cd, const CkDims& dims,
                                        const Tolerance& tol) {
  Classification<S> c;
  c.dims = dims;
  c.flags = flags(cd, tol);
  const auto candidates = frame_complex_structures<S>();
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    auto rep = lck_check(candidates[k], g, tol);
    if (rep.is_lck) c.lck.push_back({k, candidates[k], std::move(rep)});
  }

  const bool some = dims.plus > 0 || dims.minus > 0;
  const bool wp = c.flags.half_cf_plus, wm = c.flags.half_cf_minus;
  if (c.flags.conformally_flat)
    c.theorem_case = TheoremCase::case1;
  else if (wp != wm && some)
    c.theorem_case = TheoremCase::case2;
  else if (!wp && !wm && some)
    c.theorem_case = TheoremCase::case3;
  else
    c.theorem_case = TheoremCase::none;

  if (c.theorem_case == TheoremCase::case1 && !(dims.plus == 10 && dims.minus == 10))
    c.notes.push_back("conformally flat but the conformal Killing dimensions are not (10,10)");
  if (c.theorem_case == TheoremCase::case2 && c.flags.einstein && cd.scalar < S(0)) {
    const Side flat_side = wp ? Side::plus : Side::minus;
    const bool kahler = std::any_of(c.lck.begin(), c.lck.end(), [&](const LckCandidate<S>& l) {
      return l.report.is_kahler && l.j.side() == opposite(flat_side);
    });
    if (kahler) c.notes.push_back("isometric to the complex hyperbolic plane");
  }
  if (c.theorem_case == TheoremCase::case3) {
    if (c.lck.empty()) c.notes.push_back("no invariant lcK structure among the frame candidates");
    if (dims.plus > 1 || dims.minus > 1) c.notes.push_back("a conformal Killing space has dimension > 1");
  }
  for (Side s : {Side::plus, Side::minus})
    if (dims.on(s) >= 2 && !cd.weyl(s).is_zero(tol, cd.scale))
      c.notes.push_back(std::string("dimension >= 2 on side ") + side_name(s) + " but its Weyl half is nonzero");
  return c;
}

template <Scalar S>
Classification<S> classify_theorem_main(const MetricLieAlgebra<S>& g, const Tolerance& tol) {
  const auto cd = riemann(g);
  return classify_theorem_main(g, cd, ck_dims(g, cd, tol), tol);
}

#define CKF_INSTANTIATE_KILLING(S)                                                                               \
  template struct CKSection<S>;                                                                                  \
  template KillingConnection<S> build_killing_connection(const MetricLieAlgebra<S>&, const CurvatureData<S>&,    \
                                                         Side);                                                  \
  template Bivector<S> sigma_row_source(const CurvatureData<S>&, Side, int, const CKSection<S>&);               \
  template HolonomyResult<S> holonomy_parallel_dim(const std::array<Matrix<S>, 4>&, const MetricLieAlgebra<S>&, \
                                                   const Tolerance&);                                            \
  template std::size_t invariant_kernel_dim(const std::array<Matrix<S>, 4>&, const MetricLieAlgebra<S>&,         \
                                            const Tolerance&);                                                   \
  template CkDims ck_dims(const MetricLieAlgebra<S>&, const Tolerance&);                                         \
  template CkDims ck_dims(const MetricLieAlgebra<S>&, const CurvatureData<S>&, const Tolerance&);                \
  template InvariantCkResult<S> invariant_ck_solve(const MetricLieAlgebra<S>&, Side, const Tolerance&);          \
  template TsdConnection<S> tsd_connection(const MetricLieAlgebra<S>&, const AlmostComplexStructure<S>&,         \
                                           const Tolerance&);                                                    \
  template WeylEigenReport<S> weyl_eigenstructure_check(const CurvatureData<S>&, const Bivector<S>&,             \
                                                        const Tolerance&);                                       \
  template Classification<S> classify_theorem_main(const MetricLieAlgebra<S>&, const Tolerance&);                \
  template Classification<S> classify_theorem_main(const MetricLieAlgebra<S>&, const CurvatureData<S>&,         \
                                                   const CkDims&, const Tolerance&);

CKF_INSTANTIATE_KILLING(Rational)
CKF_INSTANTIATE_KILLING(double)

}  // namespace ckf
