#pragma once

#include "ckforms/report.hpp"

namespace ckt {

using Q = ckf::Rational;

inline ckf::Vector4<Q> e(int i) { return ckf::Vector4<Q>::basis(i - 1); }
inline ckf::Form<Q> f(int i) { return ckf::Form<Q>::vector(e(i)); }
/// e_i ^ e_j with 1-based indices, as in the printed bivector names.
inline ckf::Bivector<Q> bv(int i, int j) { return ckf::wedge(e(i), e(j)); }
inline Q q(long n, long d = 1) { return Q(n, d); }

}  // namespace ckt
