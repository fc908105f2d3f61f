#include "ckforms/liealg.hpp"

#include <algorithm>
#include <stdexcept>

namespace ckf {

namespace {

template <Scalar S>
Vector4<S> vec(const S& a, const S& b, const S& c, const S& d) {
  Vector4<S> v;
  v[0] = a;
  v[1] = b;
  v[2] = c;
  v[3] = d;
  return v;
}

template <Scalar S>
Vector4<S> e(int i) {
  return Vector4<S>::basis(i);
}

void check_index(int i) {
  if (i < 0 || i > 3) throw std::out_of_range("frame index must be in 0..3");
}

}  // namespace

template <Scalar S>
MetricLieAlgebra<S>::MetricLieAlgebra(std::string label) : label_(std::move(label)) {}

template <Scalar S>
void MetricLieAlgebra<S>::set_bracket(int i, int j, const Vector4<S>& v) {
  check_index(i);
  check_index(j);
  if (i == j) throw std::invalid_argument("bracket of a frame vector with itself is zero");
  table_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
  table_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = -v;
}

template <Scalar S>
Vector4<S> MetricLieAlgebra<S>::bracket(const Vector4<S>& x, const Vector4<S>& y) const {
  Vector4<S> out;
  for (int i = 0; i < 4; ++i) {
    if (exactly_zero(x[i])) continue;
    for (int j = 0; j < 4; ++j) {
      if (i == j || exactly_zero(y[j])) continue;
      out += (x[i] * y[j]) * bracket(i, j);
    }
  }
  return out;
}

template <Scalar S>
Endo4<S> MetricLieAlgebra<S>::ad(int i) const {
  Endo4<S> m(4, 4);
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) m(static_cast<std::size_t>(k), static_cast<std::size_t>(j)) = structure(i, j, k);
  return m;
}

template <Scalar S>
double MetricLieAlgebra<S>::scale() const {
  double m = 1.0;
  for (const auto& row : table_)
    for (const auto& v : row)
      for (const auto& x : v.c) m = std::max(m, ScalarTraits<S>::magnitude(x));
  return m;
}

template <Scalar S>
std::vector<JacobiViolation<S>> validate(const MetricLieAlgebra<S>& g, const Tolerance& tol) {
  std::vector<JacobiViolation<S>> out;
  const double scale = g.scale() * g.scale();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k) {
        const Vector4<S> d = g.bracket(g.bracket(i, j), e<S>(k)) + g.bracket(g.bracket(j, k), e<S>(i)) +
                             g.bracket(g.bracket(k, i), e<S>(j));
        if (!d.is_zero(tol, scale)) out.push_back({{i, j, k}, d});
      }
  return out;
}

template <Scalar S>
Form<S> ce_d(const Form<S>& a, const MetricLieAlgebra<S>& g) {
  const int p = a.grade();
  if (p < 0 || p > 3) throw std::invalid_argument("ce_d expects a form of grade 0..3");
  Form<S> out(p + 1);
  if (p == 0) return out;

  // d e^k = -sum_{i<j} c_ij^k e^ij
  std::array<Form<S>, 4> d1{Form<S>(2), Form<S>(2), Form<S>(2), Form<S>(2)};
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        const S& c = g.structure(i, j, k);
        if (!exactly_zero(c)) d1[static_cast<std::size_t>(k)].coeff(static_cast<std::uint8_t>((1u << i) | (1u << j))) -= c;
      }

  for (std::size_t idx = 0; idx < a.size(); ++idx) {
    if (exactly_zero(a[idx])) continue;
    const std::uint8_t mask = mask_at(p, static_cast<int>(idx));
    std::vector<int> ind;
    for (int i = 0; i < 4; ++i)
      if (mask & (1u << i)) ind.push_back(i);
    for (std::size_t m = 0; m < ind.size(); ++m) {
      Form<S> term = Form<S>::scalar(S(m % 2 == 0 ? 1 : -1));
      for (std::size_t r = 0; r < ind.size(); ++r) {
        const Form<S> factor = r == m ? d1[static_cast<std::size_t>(ind[r])]
                                      : Form<S>::basis(static_cast<std::uint8_t>(1u << ind[r]));
        term = wedge(term, factor);
      }
      out += a[idx] * term;
    }
  }
  return out;
}

template <Scalar S>
MetricLieAlgebra<S> change_frame(const MetricLieAlgebra<S>& g, const Matrix<S>& q, const Tolerance& tol) {
  if (q.rows() != 4 || q.cols() != 4) throw std::invalid_argument("frame change must be 4x4");
  if (!(q.transpose() * q - Matrix<S>::identity(4)).is_zero(tol))
    throw std::invalid_argument("frame change is not orthogonal");
  std::array<Vector4<S>, 4> f;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) f[static_cast<std::size_t>(i)][k] = q(static_cast<std::size_t>(k), static_cast<std::size_t>(i));
  MetricLieAlgebra<S> out(g.label());
  for (const auto& p : g.parameters()) out.add_parameter(p.name, p.value);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const Vector4<S> b = g.bracket(f[static_cast<std::size_t>(i)], f[static_cast<std::size_t>(j)]);
      Vector4<S> v;
      for (int k = 0; k < 4; ++k) v[k] = dot(b, f[static_cast<std::size_t>(k)]);
      out.set_bracket(i, j, v);
    }
  return out;
}

template <Scalar S>
AlmostComplexStructure<S>::AlmostComplexStructure(Endo4<S> j, const Tolerance& tol) : j_(std::move(j)) {
  if (j_.rows() != 4 || j_.cols() != 4) throw std::invalid_argument("complex structure must be 4x4");
  if (!(j_ * j_ + Matrix<S>::identity(4)).is_zero(tol))
    throw std::invalid_argument("J^2 != -Id");
  if (!(j_.transpose() * j_ - Matrix<S>::identity(4)).is_zero(tol))
    throw std::invalid_argument("J is not orthogonal");
  omega_ = endo_to_bivector(j_, tol);
  const auto split = sd_asd_split(omega_);
  const bool plus_zero = std::all_of(split.sd.begin(), split.sd.end(), [&](const S& x) { return is_zero(x, tol); });
  side_ = plus_zero ? Side::minus : Side::plus;
}

template <Scalar S>
AlmostComplexStructure<S> frame_complex_structure(int to, int sign, int sign2) {
  if (to < 1 || to > 3) throw std::invalid_argument("J e1 must be one of e2, e3, e4");
  if ((sign != 1 && sign != -1) || (sign2 != 1 && sign2 != -1)) throw std::invalid_argument("signs must be +-1");
  int p = -1, q = -1;
  for (int i = 1; i < 4; ++i) {
    if (i == to) continue;
    (p < 0 ? p : q) = i;
  }
  Endo4<S> j(4, 4);
  auto set = [&](int from, int image, int s) {
    j(static_cast<std::size_t>(image), static_cast<std::size_t>(from)) = S(s);
    j(static_cast<std::size_t>(from), static_cast<std::size_t>(image)) = S(-s);
  };
  set(0, to, sign);
  set(p, q, sign2);
  return AlmostComplexStructure<S>(j);
}

template <Scalar S>
std::vector<AlmostComplexStructure<S>> frame_complex_structures() {
  std::vector<AlmostComplexStructure<S>> out;
  for (int to = 1; to < 4; ++to)
    for (int s : {1, -1})
      for (int s2 : {1, -1}) out.push_back(frame_complex_structure<S>(to, s, s2));
  return out;
}

template <Scalar S>
NijenhuisTensor<S> nijenhuis(const AlmostComplexStructure<S>& j, const MetricLieAlgebra<S>& g) {
  NijenhuisTensor<S> n{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const Vector4<S> x = e<S>(a), y = e<S>(b);
      const Vector4<S> jx = j(x), jy = j(y);
      n[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          g.bracket(jx, jy) - j(g.bracket(jx, y)) - j(g.bracket(x, jy)) - g.bracket(x, y);
    }
  return n;
}

template <Scalar S>
bool is_zero(const NijenhuisTensor<S>& n, const Tolerance& tol, double scale) {
  for (const auto& row : n)
    for (const auto& v : row)
      if (!v.is_zero(tol, scale)) return false;
  return true;
}

template <Scalar S>
LckReport<S> lck_check(const AlmostComplexStructure<S>& j, const MetricLieAlgebra<S>& g, const Tolerance& tol) {
  LckReport<S> r;
  const double scale = g.scale();
  r.fundamental_form = j.fundamental_form();
  const Form<S> omega = r.fundamental_form.to_form();
  r.d_omega = ce_d(omega, g);
  r.integrable = is_zero(nijenhuis(j, g), tol, scale);
  if (!r.integrable) return r;

  // theta ^ Omega = dOmega; the map theta -> theta ^ Omega is injective
  // because Omega is nondegenerate.
  Matrix<S> sys(4, 5);
  for (int k = 0; k < 4; ++k) {
    const Form<S> w = wedge(Form<S>::basis(static_cast<std::uint8_t>(1u << k)), omega);
    for (std::size_t row = 0; row < 4; ++row) sys(row, static_cast<std::size_t>(k)) = w[row];
  }
  for (std::size_t row = 0; row < 4; ++row) sys(row, 4) = -r.d_omega[row];
  const auto ker = kernel(sys, tol);
  const std::vector<S>* best = nullptr;
  for (const auto& v : ker.kernel)
    if (!best || ScalarTraits<S>::magnitude(v[4]) > ScalarTraits<S>::magnitude((*best)[4])) best = &v;
  if (!best || is_zero((*best)[4], tol)) return r;
  for (int k = 0; k < 4; ++k) r.lee_form[k] = (*best)[static_cast<std::size_t>(k)] / (*best)[4];

  const Form<S> theta = Form<S>::vector(r.lee_form);
  const bool solved = (wedge(theta, omega) - r.d_omega).is_zero(tol, scale);
  r.is_lck = solved && ce_d(theta, g).is_zero(tol, scale * scale);
  r.is_kahler = r.d_omega.is_zero(tol, scale);
  return r;
}

template <Scalar S>
MetricLieAlgebra<S> abelian() {
  return MetricLieAlgebra<S>("abelian");
}

template <Scalar S>
MetricLieAlgebra<S> type2(const S& c) {
  if (exactly_zero(c)) throw std::invalid_argument("type2 requires c != 0");
  MetricLieAlgebra<S> g("type2");
  g.add_parameter("c", c);
  const S z(0);
  g.set_bracket(0, 1, vec(z, z, c, z));
  g.set_bracket(1, 2, vec(c, z, z, z));
  g.set_bracket(2, 0, vec(z, c, z, z));
  return g;
}

template <Scalar S>
MetricLieAlgebra<S> type3(const S& alpha) {
  if (alpha < S(0)) throw std::invalid_argument("type3 requires alpha >= 0");
  MetricLieAlgebra<S> g("type3");
  g.add_parameter("alpha", alpha);
  const S z(0), one(1);
  g.set_bracket(3, 0, vec(one, alpha, z, z));
  g.set_bracket(3, 1, vec(S(-alpha), one, z, z));
  g.set_bracket(3, 2, vec(z, z, one, z));
  return g;
}

template <Scalar S>
MetricLieAlgebra<S> type4(const S& a, const S& b) {
  MetricLieAlgebra<S> g("type4");
  g.add_parameter("a", a);
  g.add_parameter("b", b);
  const S z(0), one(1);
  g.set_bracket(0, 2, vec(z, z, one, a));
  g.set_bracket(0, 3, vec(z, z, S(-a), one));
  g.set_bracket(1, 2, vec(z, z, z, b));
  g.set_bracket(1, 3, vec(z, z, S(-b), z));
  return g;
}

template <Scalar S>
MetricLieAlgebra<S> type6() {
  MetricLieAlgebra<S> g("type6");
  g.set_bracket(0, 1, e<S>(2));
  g.set_bracket(0, 2, -e<S>(1));
  return g;
}

template <Scalar S>
MetricLieAlgebra<S> gab(const S& a, const S& b) {
  MetricLieAlgebra<S> g("gab");
  g.add_parameter("a", a);
  g.add_parameter("b", b);
  const S z(0);
  g.set_bracket(0, 1, vec(z, a, S(-b), z));
  g.set_bracket(0, 2, vec(z, b, a, z));
  g.set_bracket(0, 3, vec(z, z, z, S(S(2) * a)));
  g.set_bracket(1, 2, vec(z, z, z, S(-1)));
  return g;
}

template <Scalar S>
AlmostComplexStructure<S> gab_complex_structure(int eps) {
  return frame_complex_structure<S>(3, 1, eps);
}

#define CKF_INSTANTIATE_LIEALG(S)                                                                          \
  template class MetricLieAlgebra<S>;                                                                      \
  template class AlmostComplexStructure<S>;                                                                \
  template std::vector<JacobiViolation<S>> validate(const MetricLieAlgebra<S>&, const Tolerance&);         \
  template Form<S> ce_d(const Form<S>&, const MetricLieAlgebra<S>&);                                       \
  template MetricLieAlgebra<S> change_frame(const MetricLieAlgebra<S>&, const Matrix<S>&, const Tolerance&); \
  template AlmostComplexStructure<S> frame_complex_structure(int, int, int);                               \
  template std::vector<AlmostComplexStructure<S>> frame_complex_structures();                              \
  template NijenhuisTensor<S> nijenhuis(const AlmostComplexStructure<S>&, const MetricLieAlgebra<S>&);     \
  template bool is_zero(const NijenhuisTensor<S>&, const Tolerance&, double);                              \
  template LckReport<S> lck_check(const AlmostComplexStructure<S>&, const MetricLieAlgebra<S>&,            \
                                  const Tolerance&);                                                       \
  template MetricLieAlgebra<S> abelian();                                                                  \
  template MetricLieAlgebra<S> type2(const S&);                                                            \
  template MetricLieAlgebra<S> type3(const S&);                                                            \
  template MetricLieAlgebra<S> type4(const S&, const S&);                                                  \
  template MetricLieAlgebra<S> type6();                                                                    \
  template MetricLieAlgebra<S> gab(const S&, const S&);                                                    \
  template AlmostComplexStructure<S> gab_complex_structure(int);

CKF_INSTANTIATE_LIEALG(Rational)
CKF_INSTANTIATE_LIEALG(double)

}  // namespace ckf
