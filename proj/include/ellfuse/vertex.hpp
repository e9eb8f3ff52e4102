#pragma once

// The eight-vertex R-matrix: the scalar normalization R0(u) built from
// (.; x^4, p)_inf triple products, the stable quotient R0(u)/[1+u] with the
// shared zero cancelled analytically, and the normalized 4x4 matrix R(u).

#include "ellfuse/core.hpp"
#include "ellfuse/tensor.hpp"

namespace ellfuse {

namespace detail {

// (a; q1, q2)_inf with the (m,n) = (0,0) factor removed.
template <class T>
cx<T> triple_product_skip00(cx<T> a, cx<T> q1, cx<T> q2, int cutoff) {
  cx<T> val(T(1));
  cx<T> aq1 = a;
  for (int m = 0; m < cutoff; ++m) {
    cx<T> term = aq1;
    for (int n = 0; n < cutoff; ++n) {
      if (!(m == 0 && n == 0)) val *= T(1) - term;
      term *= q2;
    }
    aq1 *= q1;
  }
  return val;
}

// (a; q)_inf with the n = 0 factor removed.
template <class T>
cx<T> q_product_skip0(cx<T> a, cx<T> q, int cutoff) {
  cx<T> val(T(1));
  cx<T> aq = a * q;
  for (int n = 1; n < cutoff; ++n) {
    val *= T(1) - aq;
    aq *= q;
  }
  return val;
}

}  // namespace detail

// R0(u) = z^{-(r-1)/(2r) * 2u-exponent} *
//   (p x^2 z) (x^2 z) (p/z) (x^4/z) / [ (p x^2/z) (x^2/z) (p z) (x^4 z) ]
// with every factor a (.; x^4, p)_inf triple product and z = x^{2u}.
template <class T>
cx<T> r0_scalar(cx<T> u, const EllipticContext<T>& ctx) {
  const cx<T> z = std::exp(T(2) * u * ctx.log_x);
  const cx<T> x2 = ctx.x * ctx.x;
  const cx<T> x4 = x2 * x2;
  const int n = ctx.cutoff;
  const cx<T> num = triple_product(ctx.p * x2 * z, x4, ctx.p, n) *
                    triple_product(x2 * z, x4, ctx.p, n) *
                    triple_product(ctx.p / z, x4, ctx.p, n) *
                    triple_product(x4 / z, x4, ctx.p, n);
  const cx<T> den = triple_product(ctx.p * x2 / z, x4, ctx.p, n) *
                    triple_product(x2 / z, x4, ctx.p, n) *
                    triple_product(ctx.p * z, x4, ctx.p, n) *
                    triple_product(x4 * z, x4, ctx.p, n);
  if (std::abs(den) < T(pole_threshold))
    throw pole_error("r0_scalar: denominator product vanishes");
  const cx<T> pref =
      std::exp(-(ctx.r - T(1)) / (T(2) * ctx.r) * T(2) * u * ctx.log_x);
  return pref * num / den;
}

// R0(u) / [1+u], with the common zero factor (1 - x^2 z) cancelled
// analytically: it is dropped from the (x^2 z; x^4, p) numerator product and
// from the n = 0 term of Theta_p(x^{2(1+u)}) in the bracket.  The quotient is
// finite at u = -1, where both R0 and [1+u] vanish.
template <class T>
cx<T> r0_over_bracket_1u(cx<T> u, const EllipticContext<T>& ctx) {
  const cx<T> z = std::exp(T(2) * u * ctx.log_x);
  const cx<T> x2 = ctx.x * ctx.x;
  const cx<T> x4 = x2 * x2;
  const int n = ctx.cutoff;
  const cx<T> v = u + T(1);
  const cx<T> num = triple_product(ctx.p * x2 * z, x4, ctx.p, n) *
                    detail::triple_product_skip00(x2 * z, x4, ctx.p, n) *
                    triple_product(ctx.p / z, x4, ctx.p, n) *
                    triple_product(x4 / z, x4, ctx.p, n);
  const cx<T> den = triple_product(ctx.p * x2 / z, x4, ctx.p, n) *
                    triple_product(x2 / z, x4, ctx.p, n) *
                    triple_product(ctx.p * z, x4, ctx.p, n) *
                    triple_product(x4 * z, x4, ctx.p, n);
  const cx<T> pref =
      std::exp(-(ctx.r - T(1)) / (T(2) * ctx.r) * T(2) * u * ctx.log_x);
  const cx<T> xv = std::exp((v * v / ctx.r - v) * ctx.log_x);
  const cx<T> zv = std::exp(T(2) * v * ctx.log_x);
  const cx<T> theta_rest = detail::q_product_skip0(zv, ctx.p, n) *
                           q_product(ctx.p / zv, ctx.p, n) *
                           q_product(ctx.p, ctx.p, n);
  const cx<T> full_den = den * xv * theta_rest;
  if (std::abs(full_den) < T(pole_threshold))
    throw pole_error("r0_over_bracket_1u: denominator vanishes");
  return pref * num / full_den;
}

// The symmetric eight-vertex R-matrix on V (x) V in the (++, +-, -+, --)
// basis, rows = outgoing indices, columns = incoming:
//
//   [ a 0 0 d ]        a = t2(1) t2(u) / (t2(0) t2(1+u))
//   [ 0 b c 0 ]        b = t2(1) t1(u) / (t2(0) t1(1+u))
//   [ 0 c b 0 ]        c = t1(1) t2(u) / (t2(0) t1(1+u))
//   [ d 0 0 a ]        d = -t1(1) t1(u) / (t2(0) t2(1+u))
//
// where tk(w) = theta_k(w/(2r) | tau/2).  `normalized` multiplies by R0(u).
template <class T>
Matrix<T> baxter_r(cx<T> u, const EllipticContext<T>& ctx,
                   bool normalized = true) {
  const cx<T> zero(T(0)), one(T(1));
  const cx<T> t20 = ctx.vth(2, zero);
  const cx<T> t1_1u = ctx.vth(1, one + u);
  const cx<T> t2_1u = ctx.vth(2, one + u);
  const T scale = std::abs(t20);
  if (std::abs(t1_1u) < T(pole_threshold) * scale)
    throw pole_error("baxter_r: theta_1((1+u)/2r) vanishes");
  if (std::abs(t2_1u) < T(pole_threshold) * scale)
    throw pole_error("baxter_r: theta_2((1+u)/2r) vanishes");
  const cx<T> a = ctx.vth(2, one) * ctx.vth(2, u) / (t20 * t2_1u);
  const cx<T> b = ctx.vth(2, one) * ctx.vth(1, u) / (t20 * t1_1u);
  const cx<T> c = ctx.vth(1, one) * ctx.vth(2, u) / (t20 * t1_1u);
  const cx<T> d = -ctx.vth(1, one) * ctx.vth(1, u) / (t20 * t2_1u);
  Matrix<T> m(4, 4);
  m(0, 0) = a;
  m(3, 3) = a;
  m(1, 1) = b;
  m(2, 2) = b;
  m(1, 2) = c;
  m(2, 1) = c;
  m(0, 3) = d;
  m(3, 0) = d;
  if (normalized) m = r0_scalar(u, ctx) * m;
  m.set_factors({2, 2}, {2, 2});
  return m;
}

}  // namespace ellfuse
