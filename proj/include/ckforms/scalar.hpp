#pragma once

// Scalar backends: exact rationals (GMP) and IEEE doubles with an explicit
// comparison tolerance. Every geometric routine in the library is a template
// over one of these two types.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <compare>
#include <concepts>
#include <optional>
#include <string>
#include <string_view>

namespace ckf {

/// Exact rational number. Thin value wrapper over mpq_class so that generic
/// code never sees GMP expression templates.
class Rational {
 public:
  Rational() = default;
  Rational(int n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long n, long d);
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "p", "-p", "p/q" (integers of any length). Returns nullopt on
  /// anything else, including q == 0.
  static std::optional<Rational> parse(std::string_view text);

  /// "p" for integers, "p/q" otherwise.
  std::string str() const;
  double to_double() const { return q_.get_d(); }
  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  const mpq_class& raw() const { return q_; }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

/// Comparison policy for the floating backend. Ignored by the exact backend.
struct Tolerance {
  double rel = 1e-9;
};

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";
  static bool is_zero(const Rational& x, const Tolerance&, double = 1.0) { return x.is_zero(); }
  static double to_double(const Rational& x) { return x.to_double(); }
  static std::string str(const Rational& x) { return x.str(); }
  static double magnitude(const Rational& x) { return std::fabs(x.to_double()); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
  static bool is_zero(double x, const Tolerance& tol, double scale = 1.0) {
    return std::fabs(x) <= tol.rel * std::max(1.0, scale);
  }
  static double to_double(double x) { return x; }
  static std::string str(double x);
  static double magnitude(double x) { return std::fabs(x); }
};

/// The two supported scalar fields.
template <class S>
concept Scalar = std::same_as<S, Rational> || std::same_as<S, double>;

template <Scalar S>
bool is_zero(const S& x, const Tolerance& tol = {}, double scale = 1.0) {
  return ScalarTraits<S>::is_zero(x, tol, scale);
}

/// Structural zero (no tolerance); used to skip work in sparse loops.
inline bool exactly_zero(const Rational& x) { return x.is_zero(); }
inline bool exactly_zero(double x) { return x == 0.0; }

template <Scalar S>
std::string to_string(const S& x) {
  return ScalarTraits<S>::str(x);
}

/// Parses a scalar literal for the given backend. Rationals accept "p/q";
/// doubles additionally accept any strtod-style literal.
template <Scalar S>
std::optional<S> parse_scalar(std::string_view text);

/// True when the literal is an exact rational ("p" or "p/q").
bool is_rational_literal(std::string_view text);

}  // namespace ckf
