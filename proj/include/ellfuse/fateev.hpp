#pragma once

// The 21-vertex R-matrix of the spin-1 vertex model built from Jacobi
// function combinations, its scalar prefactor with two functional equations,
// and the gauge transformation identifying it with the fused 9x9 matrix.

#include "ellfuse/core.hpp"
#include "ellfuse/fusion.hpp"
#include "ellfuse/tensor.hpp"

namespace ellfuse {

// Scalar prefactor: [u+1]/[u-1] * theta_0(2/r) theta_1(u/r) /
// (theta_0(0) theta_1((u+2)/r)), all at modular parameter tau.
template <class T>
cx<T> ftilde(cx<T> u, const EllipticContext<T>& ctx) {
  const cx<T> zero(T(0)), one(T(1)), two(T(2));
  const cx<T> bum = ctx.bracket(u - one);
  const cx<T> den = ctx.vt(1, u + two);
  const T scale = std::abs(theta(0, zero, ctx.tau, ctx.cutoff));
  if (std::abs(bum) < T(pole_threshold) * std::abs(ctx.bracket(one)))
    throw pole_error("ftilde: bracket(u-1) vanishes");
  if (std::abs(den) < T(pole_threshold) * scale)
    throw pole_error("ftilde: theta_1((u+2)/r) vanishes");
  return ctx.bracket(u + one) / bum * ctx.vt(0, two) * ctx.vt(1, u) /
         (theta(0, zero, ctx.tau, ctx.cutoff) * den);
}

// The 21-vertex 9x9 matrix in the row-major (i,j) basis over a 3-element
// space; rows = outgoing, columns = incoming.  `with_prefactor` multiplies by
// ftilde(u).
template <class T>
Matrix<T> fateev_r(cx<T> u, const EllipticContext<T>& ctx,
                   bool with_prefactor = true) {
  const auto sn = [&](cx<T> w) { return jacobi_sn(w, ctx); };
  const auto cn = [&](cx<T> w) { return jacobi_cn(w, ctx); };
  const auto dn = [&](cx<T> w) { return jacobi_dn(w, ctx); };
  const cx<T> one(T(1)), two(T(2));
  const cx<T> snu = sn(u);
  const cx<T> snu1 = sn(u + one);
  if (std::abs(snu) < T(pole_threshold))
    throw pole_error("fateev_r: sn(u) vanishes");
  if (std::abs(snu1) < T(pole_threshold))
    throw pole_error("fateev_r: sn(u+1) vanishes");
  const cx<T> sn2 = sn(two), cn2 = cn(two), dn2 = dn(two);
  const cx<T> sn1 = sn(one);
  const cx<T> shared = sn1 * sn2 / (snu * snu1);
  const cx<T> s1 = cn2 + shared;
  const cx<T> s2 = cn2 + dn2 - one + shared;
  const cx<T> s3 = dn2 + shared;
  const cx<T> tt(T(1));
  const cx<T> t = cn2;
  const cx<T> a = dn2;
  const cx<T> rr = cn(u) * sn2 / snu;
  const cx<T> mu = -cn(u + one) * sn2 / snu1;
  const cx<T> rr_cap = sn2 / snu;
  const cx<T> nu = -sn2 / snu1;
  const cx<T> q = dn(u) * sn2 / snu;
  const cx<T> rho = -dn(u + one) * sn2 / snu1;
  Matrix<T> m(9, 9);
  m(0, 0) = s1;
  m(0, 4) = mu;
  m(0, 8) = nu;
  m(1, 1) = t;
  m(1, 3) = rr;
  m(2, 2) = tt;
  m(2, 6) = rr_cap;
  m(3, 1) = rr;
  m(3, 3) = t;
  m(4, 0) = mu;
  m(4, 4) = s2;
  m(4, 8) = rho;
  m(5, 5) = a;
  m(5, 7) = q;
  m(6, 2) = rr_cap;
  m(6, 6) = tt;
  m(7, 5) = q;
  m(7, 7) = a;
  m(8, 0) = nu;
  m(8, 4) = rho;
  m(8, 8) = s3;
  if (with_prefactor) m = ftilde(u, ctx) * m;
  m.set_factors({3, 3}, {3, 3});
  return m;
}

// Gauge data: U = diag(1, x, y) H with H the fixed 1/sqrt(2) Hadamard-like
// 3x3 block, and
//   x^2 = -1/2 * theta_0(0|tau) theta_3(1/r|tau) /
//               (theta_0(1/r|tau) theta_3(0|tau)),
//   y^2 =      - theta_2(0|tau) theta_3(1/r|tau) /
//               (theta_2(1/r|tau) theta_3(0|tau)).
// sign_x / sign_y select the branch of each square root.
template <class T = double>
struct GaugePair {
  Matrix<T> u_matrix;
  cx<T> x2, y2;
  int sign_x, sign_y;
};

template <class T>
GaugePair<T> gauge_pair(const EllipticContext<T>& ctx, int sign_x = 1,
                        int sign_y = 1) {
  const cx<T> zero(T(0)), one(T(1));
  const cx<T> th00 = theta(0, zero, ctx.tau, ctx.cutoff);
  const cx<T> th30 = theta(3, zero, ctx.tau, ctx.cutoff);
  const cx<T> th01 = ctx.vt(0, one);
  const cx<T> th21 = ctx.vt(2, one);
  const T scale = std::abs(th30);
  if (std::abs(th01) < T(pole_threshold) * scale ||
      std::abs(th21) < T(pole_threshold) * scale)
    throw pole_error("gauge_pair: theta denominator vanishes");
  const cx<T> x2 = -T(0.5) * th00 * ctx.vt(3, one) / (th01 * th30);
  const cx<T> y2 = -theta(2, zero, ctx.tau, ctx.cutoff) * ctx.vt(3, one) /
                   (th21 * th30);
  const cx<T> x = T(sign_x) * std::sqrt(x2);
  const cx<T> y = T(sign_y) * std::sqrt(y2);
  const T rh(std::numbers::sqrt2_v<T> / T(2));
  Matrix<T> h(3, 3);
  h(0, 0) = rh;
  h(0, 2) = rh;
  h(1, 1) = one;
  h(2, 0) = rh;
  h(2, 2) = -rh;
  Matrix<T> d(3, 3);
  d(0, 0) = one;
  d(1, 1) = x;
  d(2, 2) = y;
  return GaugePair<T>{d * h, x2, y2, sign_x, sign_y};
}

// Q = U^t U, and its closed form
//   1/2 [ 1+y^2  0    1-y^2 ]
//       [ 0      2x^2 0     ]
//       [ 1-y^2  0    1+y^2 ].
template <class T>
Matrix<T> q_matrix(const GaugePair<T>& gauge) {
  return gauge.u_matrix.transpose() * gauge.u_matrix;
}

template <class T>
Matrix<T> q_closed(const GaugePair<T>& gauge) {
  const cx<T> half(T(0.5));
  Matrix<T> q(3, 3);
  q(0, 0) = half * (T(1) + gauge.y2);
  q(0, 2) = half * (T(1) - gauge.y2);
  q(2, 0) = half * (T(1) - gauge.y2);
  q(2, 2) = half * (T(1) + gauge.y2);
  q(1, 1) = gauge.x2;
  return q;
}

// Residual of the fused crossing relation
//   R^(22)(-u-1) = (Q^{-1} (x) 1) (P^(2) R^(22)(u) P^(2))^{t1} (Q (x) 1).
template <class T>
T crossing22_residual(cx<T> u, const EllipticContext<T>& ctx) {
  const Matrix<T> r22 = fuse22(u, ctx);
  const Matrix<T> lhs = fuse22(-u - T(1), ctx);
  const Matrix<T> p2 = flip_matrix<T>(3, 3);
  const Matrix<T> inner = partial_transpose_first(p2 * r22 * p2, 3, 3);
  const GaugePair<T> g = gauge_pair(ctx);
  const Matrix<T> q = q_matrix(g);
  const Matrix<T> id3 = Matrix<T>::identity(3);
  const Matrix<T> rhs = kron(inverse(q), id3) * inner * kron(q, id3);
  return residual(lhs, rhs);
}

}  // namespace ellfuse
