#include "ckforms/exterior4.hpp"

#include <bit>
#include <stdexcept>

namespace ckf {

namespace {

struct MaskTables {
  std::array<std::vector<std::uint8_t>, 5> by_grade;
  std::array<int, 16> index{};

  MaskTables() {
    // Lexicographic order of index tuples within each grade.
    for (int g = 0; g <= 4; ++g) {
      std::vector<std::uint8_t> masks;
      for (unsigned m = 0; m < 16; ++m)
        if (std::popcount(m) == g) masks.push_back(static_cast<std::uint8_t>(m));
      std::sort(masks.begin(), masks.end(), [](std::uint8_t a, std::uint8_t b) {
        for (int bit = 0; bit < 4; ++bit) {
          const bool ia = a & (1u << bit), ib = b & (1u << bit);
          if (ia != ib) return ia;
        }
        return false;
      });
      for (std::size_t i = 0; i < masks.size(); ++i) index[masks[i]] = static_cast<int>(i);
      by_grade[static_cast<std::size_t>(g)] = std::move(masks);
    }
  }
};

const MaskTables& tables() {
  static const MaskTables t;
  return t;
}

/// Sign of e_A ^ e_B for disjoint masks: (-1)^{#{(i in A, j in B) : i > j}}.
int wedge_sign(std::uint8_t a, std::uint8_t b) {
  int inversions = 0;
  for (int i = 0; i < 4; ++i) {
    if (!(a & (1u << i))) continue;
    inversions += std::popcount(static_cast<unsigned>(b & ((1u << i) - 1u)));
  }
  return inversions % 2 ? -1 : 1;
}

template <Scalar S>
S signed_value(int sign, const S& x) {
  return sign > 0 ? x : S(-x);
}

}  // namespace

int binomial4(int k) {
  static constexpr std::array<int, 5> b{1, 4, 6, 4, 1};
  if (k < 0 || k > 4) return 0;
  return b[static_cast<std::size_t>(k)];
}

std::uint8_t mask_at(int grade, int idx) {
  return tables().by_grade.at(static_cast<std::size_t>(grade)).at(static_cast<std::size_t>(idx));
}

int index_of(std::uint8_t mask) { return tables().index.at(mask & 0xF); }

std::string mask_label(std::uint8_t mask) {
  if (mask == 0) return "1";
  std::string s = "e";
  for (int i = 0; i < 4; ++i)
    if (mask & (1u << i)) s += static_cast<char>('1' + i);
  return s;
}

// ---------------------------------------------------------------------------

template <Scalar S>
Form<S>::Form(int grade) : grade_(grade) {
  if (grade < 0 || grade > 4) throw std::invalid_argument("form grade must lie in 0..4");
  comp_.assign(static_cast<std::size_t>(binomial4(grade)), S(0));
}

template <Scalar S>
Form<S> Form<S>::basis(std::uint8_t mask) {
  Form f(std::popcount(static_cast<unsigned>(mask)));
  f.coeff(mask) = S(1);
  return f;
}

template <Scalar S>
Form<S> Form<S>::scalar(const S& s) {
  Form f(0);
  f.comp_[0] = s;
  return f;
}

template <Scalar S>
Form<S> Form<S>::vector(const Vector4<S>& v) {
  Form f(1);
  for (int i = 0; i < 4; ++i) f.coeff(static_cast<std::uint8_t>(1u << i)) = v[i];
  return f;
}

template <Scalar S>
Form<S> Form<S>::vol() {
  return basis(0xF);
}

template <Scalar S>
const S& Form<S>::coeff(std::uint8_t mask) const {
  if (std::popcount(static_cast<unsigned>(mask)) != grade_) throw std::invalid_argument("mask grade mismatch");
  return comp_[static_cast<std::size_t>(index_of(mask))];
}

template <Scalar S>
S& Form<S>::coeff(std::uint8_t mask) {
  if (std::popcount(static_cast<unsigned>(mask)) != grade_) throw std::invalid_argument("mask grade mismatch");
  return comp_[static_cast<std::size_t>(index_of(mask))];
}

template <Scalar S>
Form<S>& Form<S>::operator+=(const Form& o) {
  if (grade_ != o.grade_) throw std::invalid_argument("adding forms of different grade");
  for (std::size_t i = 0; i < comp_.size(); ++i) comp_[i] += o.comp_[i];
  return *this;
}

template <Scalar S>
Form<S>& Form<S>::operator-=(const Form& o) {
  if (grade_ != o.grade_) throw std::invalid_argument("subtracting forms of different grade");
  for (std::size_t i = 0; i < comp_.size(); ++i) comp_[i] -= o.comp_[i];
  return *this;
}

template <Scalar S>
Form<S>& Form<S>::operator*=(const S& s) {
  for (auto& x : comp_) x *= s;
  return *this;
}

template <Scalar S>
bool Form<S>::is_zero(const Tolerance& tol, double scale) const {
  for (const auto& x : comp_)
    if (!ckf::is_zero(x, tol, scale)) return false;
  return true;
}

template <Scalar S>
Vector4<S> Form<S>::as_vector() const {
  if (grade_ != 1) throw std::invalid_argument("as_vector on a form of grade != 1");
  Vector4<S> v;
  for (int i = 0; i < 4; ++i) v[i] = coeff(static_cast<std::uint8_t>(1u << i));
  return v;
}

template <Scalar S>
std::string Form<S>::str() const {
  std::string out;
  for (std::size_t i = 0; i < comp_.size(); ++i) {
    if (ckf::is_zero(comp_[i])) continue;
    std::string v = to_string(comp_[i]);
    const bool negative = v.front() == '-';
    if (negative) v.erase(0, 1);
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    const std::string label = mask_label(mask_at(grade_, static_cast<int>(i)));
    if (label == "1")
      out += v;
    else
      out += (v == "1" ? "" : v + " ") + label;
  }
  return out.empty() ? "0" : out;
}

template <Scalar S>
Form<S> wedge(const Form<S>& a, const Form<S>& b) {
  const int g = a.grade() + b.grade();
  if (g > 4) return Form<S>(4);
  Form<S> out(g);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (exactly_zero(a[i])) continue;
    const auto ma = mask_at(a.grade(), static_cast<int>(i));
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (exactly_zero(b[j])) continue;
      const auto mb = mask_at(b.grade(), static_cast<int>(j));
      if (ma & mb) continue;
      out.coeff(static_cast<std::uint8_t>(ma | mb)) += signed_value(wedge_sign(ma, mb), S(a[i] * b[j]));
    }
  }
  return out;
}

template <Scalar S>
Form<S> interior(const Vector4<S>& x, const Form<S>& a) {
  if (a.grade() == 0) return Form<S>(0);
  Form<S> out(a.grade() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (exactly_zero(a[i])) continue;
    const auto m = mask_at(a.grade(), static_cast<int>(i));
    for (int k = 0; k < 4; ++k) {
      if (!(m & (1u << k))) continue;
      const int position = std::popcount(static_cast<unsigned>(m & ((1u << k) - 1u)));
      const auto rest = static_cast<std::uint8_t>(m & ~(1u << k));
      out.coeff(rest) += signed_value(position % 2 ? -1 : 1, S(x[k] * a[i]));
    }
  }
  return out;
}

template <Scalar S>
Form<S> hodge(const Form<S>& a) {
  Form<S> out(4 - a.grade());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto m = mask_at(a.grade(), static_cast<int>(i));
    const auto comp = static_cast<std::uint8_t>(~m & 0xF);
    out.coeff(comp) = signed_value(wedge_sign(m, comp), a[i]);
  }
  return out;
}

template <Scalar S>
S inner(const Form<S>& a, const Form<S>& b) {
  if (a.grade() != b.grade()) return S(0);
  S s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// ---------------------------------------------------------------------------

int pair_index(int i, int j) {
  if (i == j || i < 0 || j < 0 || i > 3 || j > 3) throw std::invalid_argument("invalid bivector pair");
  if (i > j) std::swap(i, j);
  return index_of(static_cast<std::uint8_t>((1u << i) | (1u << j)));
}

std::array<int, 2> pair_at(int k) {
  const auto m = mask_at(2, k);
  std::array<int, 2> out{};
  int n = 0;
  for (int i = 0; i < 4; ++i)
    if (m & (1u << i)) out[static_cast<std::size_t>(n++)] = i;
  return out;
}

template <Scalar S>
Bivector<S> Bivector<S>::basis(int i, int j) {
  if (i >= j) throw std::invalid_argument("Bivector::basis expects i < j");
  Bivector b;
  b[pair_index(i, j)] = S(1);
  return b;
}

template <Scalar S>
Bivector<S> Bivector<S>::from_form(const Form<S>& f) {
  if (f.grade() != 2) throw std::invalid_argument("bivector from a form of grade != 2");
  Bivector b;
  for (int k = 0; k < 6; ++k) b[k] = f[static_cast<std::size_t>(k)];
  return b;
}

template <Scalar S>
Form<S> Bivector<S>::to_form() const {
  Form<S> f(2);
  for (int k = 0; k < 6; ++k) f[static_cast<std::size_t>(k)] = (*this)[k];
  return f;
}

template <Scalar S>
Bivector<S> wedge(const Vector4<S>& x, const Vector4<S>& y) {
  Bivector<S> b;
  for (int k = 0; k < 6; ++k) {
    const auto [i, j] = pair_at(k);
    b[k] = x[i] * y[j] - x[j] * y[i];
  }
  return b;
}

template <Scalar S>
S inner(const Bivector<S>& a, const Bivector<S>& b) {
  S s(0);
  for (int k = 0; k < 6; ++k) s += a[k] * b[k];
  return s;
}

template <Scalar S>
Bivector<S> hodge(const Bivector<S>& b) {
  return Bivector<S>::from_form(hodge(b.to_form()));
}

template <Scalar S>
Vector4<S> apply(const Bivector<S>& b, const Vector4<S>& x) {
  // (e_i ^ e_j)(x) = x_i e_j - x_j e_i
  Vector4<S> out;
  for (int k = 0; k < 6; ++k) {
    if (exactly_zero(b[k])) continue;
    const auto [i, j] = pair_at(k);
    out[j] += b[k] * x[i];
    out[i] -= b[k] * x[j];
  }
  return out;
}

template <Scalar S>
S evaluate(const Bivector<S>& b, const Vector4<S>& x, const Vector4<S>& y) {
  return dot(apply(b, x), y);
}

template <Scalar S>
Bivector<S> side_basis(Side side, int k) {
  const S sign = side == Side::plus ? S(1) : S(-1);
  Bivector<S> b;
  switch (k) {
    case 0:  // e12 +- e34
      b[0] = S(1);
      b[5] = sign;
      break;
    case 1:  // e13 -+ e24
      b[1] = S(1);
      b[4] = -sign;
      break;
    case 2:  // e14 +- e23
      b[2] = S(1);
      b[3] = sign;
      break;
    default:
      throw std::invalid_argument("side basis index must be 0..2");
  }
  return b;
}

template <Scalar S>
Vec3<S> side_coords(const Bivector<S>& b, Side side) {
  const S half = S(1) / S(2);
  if (side == Side::plus) return {half * (b[0] + b[5]), half * (b[1] - b[4]), half * (b[2] + b[3])};
  return {half * (b[0] - b[5]), half * (b[1] + b[4]), half * (b[2] - b[3])};
}

template <Scalar S>
Bivector<S> from_side_coords(const Vec3<S>& v, Side side) {
  Bivector<S> b;
  for (int k = 0; k < 3; ++k) b += v[static_cast<std::size_t>(k)] * side_basis<S>(side, k);
  return b;
}

template <Scalar S>
Endo4<S> bivector_to_endo(const Bivector<S>& b) {
  Endo4<S> m(4, 4);
  for (int k = 0; k < 6; ++k) {
    const auto [i, j] = pair_at(k);
    m(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) += b[k];
    m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) -= b[k];
  }
  return m;
}

template <Scalar S>
Bivector<S> endo_to_bivector(const Endo4<S>& m, const Tolerance& tol) {
  if (m.rows() != 4 || m.cols() != 4) throw std::invalid_argument("endomorphism must be 4x4");
  if (!m.is_skew(tol, m.max_abs())) throw std::invalid_argument("endomorphism is not skew-symmetric");
  Bivector<S> b;
  for (int k = 0; k < 6; ++k) {
    const auto [i, j] = pair_at(k);
    b[k] = m(static_cast<std::size_t>(j), static_cast<std::size_t>(i));
  }
  return b;
}

template <Scalar S>
Bivector<S> bivector_commutator(const Bivector<S>& a, const Bivector<S>& b) {
  return endo_to_bivector(commutator(bivector_to_endo(a), bivector_to_endo(b)));
}

template <Scalar S>
Matrix<S> tilde_map(const Endo4<S>& a, const Tolerance& tol) {
  if (a.rows() != 4 || a.cols() != 4) throw std::invalid_argument("tilde_map expects a 4x4 matrix");
  if (!a.is_symmetric(tol, a.max_abs())) throw std::invalid_argument("tilde_map expects a symmetric endomorphism");
  Matrix<S> out(6, 6);
  for (int col = 0; col < 6; ++col) {
    const auto [i, j] = pair_at(col);
    const auto x = Vector4<S>::basis(i), y = Vector4<S>::basis(j);
    const Bivector<S> img = wedge(apply(a, x), y) + wedge(x, apply(a, y));
    for (int r = 0; r < 6; ++r) out(static_cast<std::size_t>(r), static_cast<std::size_t>(col)) = img[r];
  }
  return out;
}

template <Scalar S>
Matrix<S> side_block(const Matrix<S>& op6, Side to, Side from) {
  Matrix<S> out(3, 3);
  for (int b = 0; b < 3; ++b) {
    const Bivector<S> v = side_basis<S>(from, b);
    Bivector<S> img;
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 6; ++c) img[r] += op6(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) * v[c];
    const auto coords = side_coords(img, to);
    for (int a = 0; a < 3; ++a) out(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) = coords[static_cast<std::size_t>(a)];
  }
  return out;
}

template <Scalar S>
Matrix<S> embed_side_block(const Matrix<S>& m3, Side side) {
  Matrix<S> out(6, 6);
  for (int col = 0; col < 6; ++col) {
    Bivector<S> e;
    e[col] = S(1);
    const Bivector<S> img = from_side_coords(apply3(m3, side_coords(e, side)), side);
    for (int r = 0; r < 6; ++r) out(static_cast<std::size_t>(r), static_cast<std::size_t>(col)) = img[r];
  }
  return out;
}

template <Scalar S>
Matrix<S> side_adjoint(const Endo4<S>& g, Side side) {
  Matrix<S> out(3, 3);
  for (int b = 0; b < 3; ++b) {
    const Endo4<S> img = commutator(g, bivector_to_endo(side_basis<S>(side, b)));
    const auto coords = side_coords(endo_to_bivector(img), side);
    for (int a = 0; a < 3; ++a) out(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) = coords[static_cast<std::size_t>(a)];
  }
  return out;
}

#define CKF_INSTANTIATE_EXTERIOR(S)                                                               \
  template class Form<S>;                                                                       \
  template struct Bivector<S>;                                                                  \
  template Form<S> wedge(const Form<S>&, const Form<S>&);                                       \
  template Form<S> interior(const Vector4<S>&, const Form<S>&);                                 \
  template Form<S> hodge(const Form<S>&);                                                       \
  template S inner(const Form<S>&, const Form<S>&);                                             \
  template Bivector<S> wedge(const Vector4<S>&, const Vector4<S>&);                             \
  template S inner(const Bivector<S>&, const Bivector<S>&);                                     \
  template Bivector<S> hodge(const Bivector<S>&);                                               \
  template Vector4<S> apply(const Bivector<S>&, const Vector4<S>&);                             \
  template S evaluate(const Bivector<S>&, const Vector4<S>&, const Vector4<S>&);                \
  template Bivector<S> side_basis(Side, int);                                                   \
  template Vec3<S> side_coords(const Bivector<S>&, Side);                                       \
  template Bivector<S> from_side_coords(const Vec3<S>&, Side);                                  \
  template Endo4<S> bivector_to_endo(const Bivector<S>&);                                       \
  template Bivector<S> endo_to_bivector(const Endo4<S>&, const Tolerance&);                     \
  template Bivector<S> bivector_commutator(const Bivector<S>&, const Bivector<S>&);             \
  template Matrix<S> tilde_map(const Endo4<S>&, const Tolerance&);                              \
  template Matrix<S> side_block(const Matrix<S>&, Side, Side);                                  \
  template Matrix<S> embed_side_block(const Matrix<S>&, Side);                                  \
  template Matrix<S> side_adjoint(const Endo4<S>&, Side);

CKF_INSTANTIATE_EXTERIOR(Rational)
CKF_INSTANTIATE_EXTERIOR(double)

}  // namespace ckf
