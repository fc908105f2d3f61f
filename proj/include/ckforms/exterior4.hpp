#pragma once

// Exterior algebra of an oriented Euclidean R^4 in a fixed orthonormal basis
// e1..e4 (stored 0-based), with vol = e1^e2^e3^e4.
//
// Bivectors double as skew-symmetric endomorphisms through
//   (X^Y)(Z) = <X,Z> Y - <Y,Z> X.
// The self-dual / anti-self-dual planes use the unnormalized bases
//   L2+ : e12+e34, e13-e24, e14+e23
//   L2- : e12-e34, e13+e24, e14-e23
// whose Gram matrix is 2*Id. All 3-vector coordinates refer to these bases.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ckforms/matrix.hpp"

namespace ckf {

/// Orientation side. Reversing the orientation negates the Hodge star, which
/// swaps the roles of L2+ and L2-.
enum class Side { plus, minus };

constexpr Side opposite(Side s) { return s == Side::plus ? Side::minus : Side::plus; }
constexpr const char* side_name(Side s) { return s == Side::plus ? "plus" : "minus"; }

template <Scalar S>
struct Vector4 {
  std::array<S, 4> c{S(0), S(0), S(0), S(0)};

  static Vector4 basis(int i) {
    Vector4 v;
    v.c[static_cast<std::size_t>(i)] = S(1);
    return v;
  }
  S& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  const S& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

  Vector4& operator+=(const Vector4& o) {
    for (int i = 0; i < 4; ++i) (*this)[i] += o[i];
    return *this;
  }
  Vector4& operator-=(const Vector4& o) {
    for (int i = 0; i < 4; ++i) (*this)[i] -= o[i];
    return *this;
  }
  Vector4& operator*=(const S& s) {
    for (auto& x : c) x *= s;
    return *this;
  }
  friend Vector4 operator+(Vector4 a, const Vector4& b) { return a += b; }
  friend Vector4 operator-(Vector4 a, const Vector4& b) { return a -= b; }
  friend Vector4 operator*(const S& s, Vector4 a) { return a *= s; }
  friend Vector4 operator-(Vector4 a) { return a *= S(-1); }
  friend bool operator==(const Vector4&, const Vector4&) = default;

  bool is_zero(const Tolerance& tol = {}, double scale = 1.0) const {
    for (const auto& x : c)
      if (!ckf::is_zero(x, tol, scale)) return false;
    return true;
  }
};

template <Scalar S>
S dot(const Vector4<S>& a, const Vector4<S>& b) {
  S s(0);
  for (int i = 0; i < 4; ++i) s += a[i] * b[i];
  return s;
}

template <Scalar S>
using Vec3 = std::array<S, 3>;

/// 4x4 endomorphism of the frame; column j is the image of e_j.
template <Scalar S>
using Endo4 = Matrix<S>;

template <Scalar S>
Vector4<S> apply(const Endo4<S>& a, const Vector4<S>& v) {
  Vector4<S> out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[r] += a(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) * v[c];
  return out;
}

// ---------------------------------------------------------------------------
// Multi-index bookkeeping. A basis form e_{i1..ik} is a 4-bit mask.

int binomial4(int k);
/// Mask of the idx-th basis k-form in lexicographic order of index tuples.
std::uint8_t mask_at(int grade, int idx);
/// Inverse of mask_at.
int index_of(std::uint8_t mask);
/// "e13", "e234", "1", "vol" spellings use 1-based indices.
std::string mask_label(std::uint8_t mask);

/// Homogeneous form of a fixed grade.
template <Scalar S>
class Form {
 public:
  explicit Form(int grade = 0);

  static Form basis(std::uint8_t mask);
  static Form scalar(const S& s);
  static Form vector(const Vector4<S>& v);
  static Form vol();

  int grade() const { return grade_; }
  std::size_t size() const { return comp_.size(); }
  const S& operator[](std::size_t idx) const { return comp_[idx]; }
  S& operator[](std::size_t idx) { return comp_[idx]; }
  const S& coeff(std::uint8_t mask) const;
  S& coeff(std::uint8_t mask);

  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  Form& operator*=(const S& s);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const S& s, Form a) { return a *= s; }
  friend Form operator-(Form a) { return a *= S(-1); }
  friend bool operator==(const Form&, const Form&) = default;

  bool is_zero(const Tolerance& tol = {}, double scale = 1.0) const;
  Vector4<S> as_vector() const;
  std::string str() const;

 private:
  int grade_;
  std::vector<S> comp_;
};

/// Exterior product; grades above 4 clip to the zero 4-form.
template <Scalar S>
Form<S> wedge(const Form<S>& a, const Form<S>& b);

/// Interior product x _| a. Grade-0 input gives the zero 0-form.
template <Scalar S>
Form<S> interior(const Vector4<S>& x, const Form<S>& a);

/// Hodge star defined by a ^ *b = <a,b> vol.
template <Scalar S>
Form<S> hodge(const Form<S>& a);

template <Scalar S>
S inner(const Form<S>& a, const Form<S>& b);

// ---------------------------------------------------------------------------
// Bivectors (grade 2) on e12, e13, e14, e23, e24, e34.

template <Scalar S>
struct Bivector {
  std::array<S, 6> c{S(0), S(0), S(0), S(0), S(0), S(0)};

  /// e_i ^ e_j for 0-based i < j.
  static Bivector basis(int i, int j);
  static Bivector from_form(const Form<S>& f);
  Form<S> to_form() const;

  S& operator[](int k) { return c[static_cast<std::size_t>(k)]; }
  const S& operator[](int k) const { return c[static_cast<std::size_t>(k)]; }

  Bivector& operator+=(const Bivector& o) {
    for (int k = 0; k < 6; ++k) (*this)[k] += o[k];
    return *this;
  }
  Bivector& operator-=(const Bivector& o) {
    for (int k = 0; k < 6; ++k) (*this)[k] -= o[k];
    return *this;
  }
  Bivector& operator*=(const S& s) {
    for (auto& x : c) x *= s;
    return *this;
  }
  friend Bivector operator+(Bivector a, const Bivector& b) { return a += b; }
  friend Bivector operator-(Bivector a, const Bivector& b) { return a -= b; }
  friend Bivector operator*(const S& s, Bivector a) { return a *= s; }
  friend Bivector operator-(Bivector a) { return a *= S(-1); }
  friend bool operator==(const Bivector&, const Bivector&) = default;

  bool is_zero(const Tolerance& tol = {}, double scale = 1.0) const {
    for (const auto& x : c)
      if (!ckf::is_zero(x, tol, scale)) return false;
    return true;
  }
  std::string str() const { return to_form().str(); }
};

/// Position of e_i ^ e_j (0-based, i < j) in the bivector basis.
int pair_index(int i, int j);
/// Inverse of pair_index.
std::array<int, 2> pair_at(int k);

template <Scalar S>
Bivector<S> wedge(const Vector4<S>& x, const Vector4<S>& y);

template <Scalar S>
S inner(const Bivector<S>& a, const Bivector<S>& b);

template <Scalar S>
Bivector<S> hodge(const Bivector<S>& b);

/// Bivector evaluated as an endomorphism on a vector.
template <Scalar S>
Vector4<S> apply(const Bivector<S>& b, const Vector4<S>& x);

/// b(X,Y) as a 2-form, i.e. <b(X),Y>.
template <Scalar S>
S evaluate(const Bivector<S>& b, const Vector4<S>& x, const Vector4<S>& y);

/// k-th unnormalized basis element of L2(side).
template <Scalar S>
Bivector<S> side_basis(Side side, int k);

/// Coordinates of the L2(side) part of b in the side basis.
template <Scalar S>
Vec3<S> side_coords(const Bivector<S>& b, Side side);

template <Scalar S>
Bivector<S> from_side_coords(const Vec3<S>& v, Side side);

/// Orthogonal projection onto L2(side), i.e. (1 +- *)/2.
template <Scalar S>
Bivector<S> project(const Bivector<S>& b, Side side) {
  return from_side_coords(side_coords(b, side), side);
}

template <Scalar S>
struct SdAsdSplit {
  Vec3<S> sd;
  Vec3<S> asd;
};

template <Scalar S>
SdAsdSplit<S> sd_asd_split(const Bivector<S>& b) {
  return {side_coords(b, Side::plus), side_coords(b, Side::minus)};
}

template <Scalar S>
Endo4<S> bivector_to_endo(const Bivector<S>& b);

/// Reads a skew-symmetric endomorphism back as a bivector. Throws
/// std::invalid_argument on non-skew input.
template <Scalar S>
Bivector<S> endo_to_bivector(const Endo4<S>& m, const Tolerance& tol = {});

/// Commutator of the endomorphism images, pulled back.
template <Scalar S>
Bivector<S> bivector_commutator(const Bivector<S>& a, const Bivector<S>& b);

/// A~ on L2 as a 6x6 matrix in the e_ij basis, A~(X^Y) = A(X)^Y + X^A(Y).
/// Throws std::invalid_argument on non-symmetric A.
template <Scalar S>
Matrix<S> tilde_map(const Endo4<S>& a, const Tolerance& tol = {});

/// 3x3 block of a 6x6 operator on L2: L2(from) -> L2(to), in side coordinates.
template <Scalar S>
Matrix<S> side_block(const Matrix<S>& op6, Side to, Side from);

/// 6x6 operator on L2 acting as m on L2(side) coordinates and zero elsewhere.
template <Scalar S>
Matrix<S> embed_side_block(const Matrix<S>& m3, Side side);

/// Action of a skew endomorphism g on L2(side) by b -> [g, b], as a 3x3 matrix.
template <Scalar S>
Matrix<S> side_adjoint(const Endo4<S>& g, Side side);

template <Scalar S>
Vec3<S> apply3(const Matrix<S>& m, const Vec3<S>& v) {
  Vec3<S> out{S(0), S(0), S(0)};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) out[r] += m(r, c) * v[c];
  return out;
}

}  // namespace ckf
