#pragma once

// Intertwining vectors between the vertex and face pictures: the 2-component
// psi and its dual covector, their level-2 fusions (by construction and in
// closed form), inversion relations, the four vertex-face correspondences,
// and the gauge relation expressing the fused dual through the fused vector.

#include <array>
#include <optional>

#include "ellfuse/core.hpp"
#include "ellfuse/face.hpp"
#include "ellfuse/fateev.hpp"
#include "ellfuse/fusion.hpp"
#include "ellfuse/tensor.hpp"
#include "ellfuse/vertex.hpp"

namespace ellfuse {

// psi_eps(u)^a_b with |a-b| = 1: components
//   psi_+ = theta_0(((a-b)u + a)/(2r) | tau/2)
//   psi_- = theta_3(((a-b)u + a)/(2r) | tau/2)
template <class T = double>
struct Intertwiner {
  cx<T> u;
  int a, b;
  cx<T> plus, minus;
};

template <class T = double>
struct DualIntertwiner {
  cx<T> u;
  int a, b;
  cx<T> plus, minus;
};

template <class T>
Intertwiner<T> psi(cx<T> u, int a, int b, const EllipticContext<T>& ctx) {
  if (std::abs(a - b) != 1)
    throw argument_error("psi: heights must satisfy |a - b| = 1");
  const cx<T> arg = T(a - b) * u + T(a);
  return Intertwiner<T>{u, a, b, ctx.vth(0, arg), ctx.vth(3, arg)};
}

// psi*_eps(u)^a_b = -eps (a-b) / (2 [b][u]) C^2 psi_{-eps}(u-1)^a_b.
template <class T>
DualIntertwiner<T> psi_dual(cx<T> u, int a, int b,
                            const EllipticContext<T>& ctx) {
  if (std::abs(a - b) != 1)
    throw argument_error("psi_dual: heights must satisfy |a - b| = 1");
  const cx<T> bb = ctx.bracket(b);
  const cx<T> bu = ctx.bracket(u);
  const T scale = std::abs(ctx.bracket(1));
  if (std::abs(bb) < T(pole_threshold) * scale)
    throw pole_error("psi_dual: bracket(b) vanishes");
  if (std::abs(bu) < T(pole_threshold) * scale)
    throw pole_error("psi_dual: bracket(u) vanishes");
  const Intertwiner<T> base = psi(u - T(1), a, b, ctx);
  const cx<T> pref = T(a - b) / (T(2) * bb * bu) * ctx.C * ctx.C;
  return DualIntertwiner<T>{u, a, b, -pref * base.minus, pref * base.plus};
}

// ---------------------------------------------------------------------------
// Level-2 fusion.
// ---------------------------------------------------------------------------

template <class T = double>
struct FusedIntertwiner {
  cx<T> u;
  int a, b;
  std::array<cx<T>, 3> mu;  // components at mu = (+2, 0, -2)
};

template <class T = double>
struct FusedDualIntertwiner {
  cx<T> u;
  int a, b;
  std::array<cx<T>, 3> mu;
};

// Which epsilon-split realizes the mu = 0 component of the fused dual;
// the choices agree identically.
enum class DualSplit { average, plus_minus, minus_plus };

namespace detail {

// First c adjacent to both a and b (for a - b in {0, +-2}).
inline std::optional<int> fusion_mid(int a, int b) {
  if (std::abs((a - 1) - b) == 1) return a - 1;
  if (std::abs((a + 1) - b) == 1) return a + 1;
  return std::nullopt;
}

}  // namespace detail

// psi^(2)(u)^a_b = Pi (psi(u+1)^a_c (x) psi(u)^c_b), components in the
// (v_2, v_0, v_-2) basis; independent of the admissible intermediate c.
template <class T>
FusedIntertwiner<T> psi2(cx<T> u, int a, int b, const EllipticContext<T>& ctx,
                         FusionMethod method = FusionMethod::by_definition,
                         std::optional<int> c = std::nullopt) {
  if (method == FusionMethod::closed_form) {
    if (c)
      throw argument_error("psi2: intermediate height applies only to the "
                           "definitional method");
    const int n = a;
    const cx<T> one(T(1)), two(T(2));
    std::array<cx<T>, 3> v;
    if (b == n + 2) {
      v = {ctx.vth(0, u - T(n) + one) * ctx.vth(0, u - T(n) - one),
           two * ctx.vt(0, u - T(n)) * ctx.vt(0, one),
           ctx.vth(3, u - T(n) + one) * ctx.vth(3, u - T(n) - one)};
    } else if (b == n) {
      v = {ctx.vth(0, u - T(n) + one) * ctx.vth(0, u + T(n) + one),
           two * ctx.vt(0, cx<T>(T(n))) * ctx.vt(0, u + one),
           ctx.vth(3, u - T(n) + one) * ctx.vth(3, u + T(n) + one)};
    } else if (b == n - 2) {
      v = {ctx.vth(0, u + T(n) + one) * ctx.vth(0, u + T(n) - one),
           two * ctx.vt(0, u + T(n)) * ctx.vt(0, one),
           ctx.vth(3, u + T(n) + one) * ctx.vth(3, u + T(n) - one)};
    } else {
      throw argument_error("psi2: heights must satisfy a - b in {0, +-2}");
    }
    return FusedIntertwiner<T>{u, a, b, v};
  }
  int cc;
  if (c) {
    if (std::abs(a - *c) != 1 || std::abs(*c - b) != 1)
      throw argument_error("psi2: supplied c is not adjacent to both heights");
    cc = *c;
  } else {
    const auto cand = detail::fusion_mid(a, b);
    if (!cand)
      throw admissibility_error("psi2: no admissible intermediate height");
    cc = *cand;
  }
  const Intertwiner<T> p = psi(u + T(1), a, cc, ctx);
  const Intertwiner<T> q = psi(u, cc, b, ctx);
  return FusedIntertwiner<T>{
      u, a, b,
      {p.plus * q.plus, p.plus * q.minus + p.minus * q.plus,
       p.minus * q.minus}};
}

// The 4-component covector sum_{c = b+-1, |c-a|=1}
// psi*(u+1)^c_b (x) psi*(u)^a_c (slot 1 carries the u+1 factor).
template <class T>
std::array<cx<T>, 4> psi2_dual_covector(cx<T> u, int a, int b,
                                        const EllipticContext<T>& ctx) {
  std::array<cx<T>, 4> w{};
  bool any = false;
  for (const int c : {b - 1, b + 1}) {
    if (std::abs(c - a) != 1) continue;
    any = true;
    const DualIntertwiner<T> s1 = psi_dual(u + T(1), c, b, ctx);
    const DualIntertwiner<T> s2 = psi_dual(u, a, c, ctx);
    const cx<T> f1[2] = {s1.plus, s1.minus};
    const cx<T> f2[2] = {s2.plus, s2.minus};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) w[2 * i + j] += f1[i] * f2[j];
  }
  if (!any)
    throw admissibility_error("psi2_dual: no admissible intermediate height");
  return w;
}

// psi*^(2)(u)^a_b: mu = (+2, 0, -2) components; the mu = 0 entry may be read
// off either mixed split (they coincide identically).
template <class T>
FusedDualIntertwiner<T> psi2_dual(
    cx<T> u, int a, int b, const EllipticContext<T>& ctx,
    FusionMethod method = FusionMethod::by_definition,
    DualSplit split = DualSplit::average) {
  if (method == FusionMethod::closed_form) {
    const int n = a;
    const cx<T> one(T(1));
    const cx<T> c2 = ctx.C * ctx.C;
    const cx<T> c4 = c2 * c2;
    const cx<T> buu = ctx.bracket(u) * ctx.bracket(u + one);
    if (std::abs(buu) < T(pole_threshold))
      throw pole_error("psi2_dual: bracket(u) bracket(u+1) vanishes");
    std::array<cx<T>, 3> v;
    if (b == n + 2) {
      const cx<T> pref =
          c4 / (T(4) * ctx.bracket(n + 1) * ctx.bracket(n + 2) * buu);
      const cx<T> t3 = ctx.vth(3, u - T(n) - one);
      const cx<T> t0 = ctx.vth(0, u - T(n) - one);
      v = {pref * t3 * t3, -pref * t3 * t0, pref * t0 * t0};
    } else if (b == n) {
      const cx<T> bn = ctx.bracket(n) * ctx.bracket(n + 1) * ctx.bracket(n - 1);
      if (std::abs(bn) < T(pole_threshold))
        throw pole_error("psi2_dual: bracket product at heights n, n+-1 "
                         "vanishes");
      const cx<T> pref = -c4 * ctx.C / (T(4) * bn * buu);
      const cx<T> top = ctx.vth(3, u + T(n) + one) * ctx.vth(3, u - T(n) - one) *
                            ctx.vt(1, cx<T>(T(n - 1))) +
                        ctx.vth(3, u - T(n) + one) * ctx.vth(3, u + T(n) - one) *
                            ctx.vt(1, cx<T>(T(n + 1)));
      const cx<T> mid = -theta(1, cx<T>(T(n)) / ctx.r, ctx.tau / T(2),
                               ctx.cutoff) *
                        theta(2, cx<T>(one) / ctx.r, ctx.tau / T(2),
                              ctx.cutoff) *
                        ctx.vt(0, u);
      const cx<T> bot = ctx.vth(0, u + T(n) + one) * ctx.vth(0, u - T(n) - one) *
                            ctx.vt(1, cx<T>(T(n - 1))) +
                        ctx.vth(0, u - T(n) + one) * ctx.vth(0, u + T(n) - one) *
                            ctx.vt(1, cx<T>(T(n + 1)));
      v = {pref * top, pref * mid, pref * bot};
    } else if (b == n - 2) {
      const cx<T> pref =
          c4 / (T(4) * ctx.bracket(n - 1) * ctx.bracket(n - 2) * buu);
      const cx<T> t3 = ctx.vth(3, u + T(n) - one);
      const cx<T> t0 = ctx.vth(0, u + T(n) - one);
      v = {pref * t3 * t3, -pref * t3 * t0, pref * t0 * t0};
    } else {
      throw argument_error("psi2_dual: heights must satisfy a - b in "
                           "{0, +-2}");
    }
    return FusedDualIntertwiner<T>{u, a, b, v};
  }
  const auto w = psi2_dual_covector(u, a, b, ctx);
  cx<T> mid;
  switch (split) {
    case DualSplit::plus_minus:
      mid = w[1];
      break;
    case DualSplit::minus_plus:
      mid = w[2];
      break;
    default:
      mid = (w[1] + w[2]) / T(2);
  }
  return FusedDualIntertwiner<T>{u, a, b, {w[0], mid, w[3]}};
}

// ---------------------------------------------------------------------------
// Inversion relations.
// ---------------------------------------------------------------------------

// Worst deviation of sum_eps psi*_eps(u)^a_b psi_eps(u)^b_c from delta_{a,c},
// over a, c adjacent to b.
template <class T>
T inversion_level1_orthogonality(cx<T> u, int b,
                                 const EllipticContext<T>& ctx) {
  T worst(0);
  for (const int a : {b - 1, b + 1})
    for (const int c : {b - 1, b + 1}) {
      const DualIntertwiner<T> d = psi_dual(u, a, b, ctx);
      const Intertwiner<T> v = psi(u, b, c, ctx);
      const cx<T> s = d.plus * v.plus + d.minus * v.minus;
      worst = std::max(worst, std::abs(s - cx<T>(a == c ? T(1) : T(0))));
    }
  return worst;
}

// Worst deviation of sum_a psi*_{eps'}(u)^a_b psi_eps(u)^b_a from
// delta_{eps,eps'}.
template <class T>
T inversion_level1_completeness(cx<T> u, int b,
                                const EllipticContext<T>& ctx) {
  T worst(0);
  for (int ep = 0; ep < 2; ++ep)
    for (int e = 0; e < 2; ++e) {
      cx<T> s(T(0));
      for (const int a : {b - 1, b + 1}) {
        const DualIntertwiner<T> d = psi_dual(u, a, b, ctx);
        const Intertwiner<T> v = psi(u, b, a, ctx);
        const cx<T> dc = ep == 0 ? d.plus : d.minus;
        const cx<T> vc = e == 0 ? v.plus : v.minus;
        s += dc * vc;
      }
      worst = std::max(worst, std::abs(s - cx<T>(e == ep ? T(1) : T(0))));
    }
  return worst;
}

// Level-2 versions over heights a, c in {b-2, b, b+2} within (0, r).
template <class T>
T inversion_level2_orthogonality(cx<T> u, int b,
                                 const EllipticContext<T>& ctx) {
  T worst(0);
  for (const int a : {b - 2, b, b + 2}) {
    if (!(a > 0 && T(a) < ctx.r)) continue;
    for (const int c : {b - 2, b, b + 2}) {
      if (!(c > 0 && T(c) < ctx.r)) continue;
      const auto d = psi2_dual(u, a, b, ctx);
      const auto v = psi2(u, b, c, ctx);
      cx<T> s(T(0));
      for (int k = 0; k < 3; ++k) s += d.mu[k] * v.mu[k];
      worst = std::max(worst, std::abs(s - cx<T>(a == c ? T(1) : T(0))));
    }
  }
  return worst;
}

template <class T>
T inversion_level2_completeness(cx<T> u, int b,
                                const EllipticContext<T>& ctx) {
  T worst(0);
  for (int ep = 0; ep < 3; ++ep)
    for (int e = 0; e < 3; ++e) {
      cx<T> s(T(0));
      for (const int a : {b - 2, b, b + 2}) {
        if (!(a > 0 && T(a) < ctx.r)) continue;
        const auto d = psi2_dual(u, a, b, ctx);
        const auto v = psi2(u, b, a, ctx);
        s += d.mu[ep] * v.mu[e];
      }
      worst = std::max(worst, std::abs(s - cx<T>(e == ep ? T(1) : T(0))));
    }
  return worst;
}

// ---------------------------------------------------------------------------
// Vertex-face correspondences.  Residuals compare the R-matrix acting on a
// tensor product of (dual) intertwiners against the face-weight-weighted sum
// over the intermediate height b'.
// ---------------------------------------------------------------------------

template <class T>
T vertex_face_residual(cx<T> u, cx<T> v, int a, int b, int c,
                       const EllipticContext<T>& ctx) {
  const Matrix<T> m = baxter_r(u - v, ctx);
  const Intertwiner<T> p1 = psi(u, a, b, ctx);
  const Intertwiner<T> p2 = psi(v, b, c, ctx);
  const Vector<T> lhs =
      mat_vec(m, Vector<T>{p1.plus * p2.plus, p1.plus * p2.minus,
                           p1.minus * p2.plus, p1.minus * p2.minus});
  Vector<T> rhs(4, cx<T>(T(0)));
  for (const int bp : {a - 1, a + 1}) {
    if (std::abs(bp - c) != 1) continue;
    const cx<T> wgt = w_face(a, b, bp, c, u - v, ctx);
    const Intertwiner<T> q1 = psi(u, bp, c, ctx);
    const Intertwiner<T> q2 = psi(v, a, bp, ctx);
    const cx<T> f1[2] = {q1.plus, q1.minus};
    const cx<T> f2[2] = {q2.plus, q2.minus};
    for (int e1 = 0; e1 < 2; ++e1)
      for (int e2 = 0; e2 < 2; ++e2) rhs[2 * e1 + e2] += f2[e2] * f1[e1] * wgt;
  }
  return vec_residual(lhs, rhs);
}

// Dual version: the R-matrix acts through its transpose (the summed indices
// are the lower ones) and the face weight appears with reflected corners.
template <class T>
T vertex_face_dual_residual(cx<T> u, cx<T> v, int a, int b, int c,
                            const EllipticContext<T>& ctx) {
  const Matrix<T> m = baxter_r(u - v, ctx);
  const DualIntertwiner<T> p1 = psi_dual(u, a, b, ctx);
  const DualIntertwiner<T> p2 = psi_dual(v, b, c, ctx);
  const Vector<T> lhs =
      mat_tvec(m, Vector<T>{p1.plus * p2.plus, p1.plus * p2.minus,
                            p1.minus * p2.plus, p1.minus * p2.minus});
  Vector<T> rhs(4, cx<T>(T(0)));
  for (const int bp : {a - 1, a + 1}) {
    if (std::abs(bp - c) != 1) continue;
    const cx<T> wgt = w_face(c, bp, b, a, u - v, ctx);
    const DualIntertwiner<T> q1 = psi_dual(u, bp, c, ctx);
    const DualIntertwiner<T> q2 = psi_dual(v, a, bp, ctx);
    const cx<T> f1[2] = {q1.plus, q1.minus};
    const cx<T> f2[2] = {q2.plus, q2.minus};
    for (int e1 = 0; e1 < 2; ++e1)
      for (int e2 = 0; e2 < 2; ++e2) rhs[2 * e1 + e2] += f2[e2] * f1[e1] * wgt;
  }
  return vec_residual(lhs, rhs);
}

namespace detail {

// Heights reachable between a and c at level 2, within (0, r).
template <class T>
std::vector<int> level2_mids(int a, int c, const EllipticContext<T>& ctx) {
  std::vector<int> out;
  for (const int bp : {a - 2, a, a + 2})
    if ((std::abs(bp - c) == 0 || std::abs(bp - c) == 2) && bp > 0 &&
        T(bp) < ctx.r)
      out.push_back(bp);
  return out;
}

}  // namespace detail

template <class T>
T fused_vertex_face_residual(cx<T> u, cx<T> v, int a, int b, int c,
                             const EllipticContext<T>& ctx) {
  const Matrix<T> m = fuse22(u - v, ctx);
  const auto p1 = psi2(u, a, b, ctx);
  const auto p2 = psi2(v, b, c, ctx);
  Vector<T> in(9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) in[3 * i + j] = p1.mu[i] * p2.mu[j];
  const Vector<T> lhs = mat_vec(m, in);
  Vector<T> rhs(9, cx<T>(T(0)));
  for (const int bp : detail::level2_mids(a, c, ctx)) {
    const cx<T> wgt = w22(a, b, bp, c, u - v, ctx);
    const auto q1 = psi2(u, bp, c, ctx);
    const auto q2 = psi2(v, a, bp, ctx);
    for (int m1 = 0; m1 < 3; ++m1)
      for (int m2 = 0; m2 < 3; ++m2)
        rhs[3 * m1 + m2] += q2.mu[m2] * q1.mu[m1] * wgt;
  }
  return vec_residual(lhs, rhs);
}

// Fused dual version; like the unfused dual, the fused matrix acts through
// its transpose (summed indices are the lower ones).
template <class T>
T fused_vertex_face_dual_residual(cx<T> u, cx<T> v, int a, int b, int c,
                                  const EllipticContext<T>& ctx) {
  const Matrix<T> m = fuse22(u - v, ctx);
  const auto p1 = psi2_dual(u, a, b, ctx);
  const auto p2 = psi2_dual(v, b, c, ctx);
  Vector<T> in(9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) in[3 * i + j] = p1.mu[i] * p2.mu[j];
  const Vector<T> lhs = mat_tvec(m, in);
  Vector<T> rhs(9, cx<T>(T(0)));
  for (const int bp : detail::level2_mids(a, c, ctx)) {
    const cx<T> wgt = w22(c, bp, b, a, u - v, ctx);
    const auto q1 = psi2_dual(u, bp, c, ctx);
    const auto q2 = psi2_dual(v, a, bp, ctx);
    for (int m1 = 0; m1 < 3; ++m1)
      for (int m2 = 0; m2 < 3; ++m2)
        rhs[3 * m1 + m2] += q2.mu[m2] * q1.mu[m1] * wgt;
  }
  return vec_residual(lhs, rhs);
}

// ---------------------------------------------------------------------------
// Gauge relation: the fused dual vector equals
//   -C^4 / (4 [u][u+1]) * theta_3(0|tau)/theta_3(1/r|tau)
//   * g_a / (g_b (a,b)_2) * Q psi^(2)(u-1)^a_b
// with Q = U^t U from the gauge pair.
// ---------------------------------------------------------------------------

template <class T>
T gauge_duality_residual(cx<T> u, int a, int b,
                         const EllipticContext<T>& ctx) {
  const GaugePair<T> g = gauge_pair(ctx);
  const Matrix<T> q = q_matrix(g);
  const auto lhs = psi2_dual(u, a, b, ctx);
  const auto pv = psi2(u - T(1), a, b, ctx);
  const cx<T> zero(T(0)), one(T(1));
  const cx<T> c2 = ctx.C * ctx.C;
  const cx<T> pref = -c2 * c2 / (T(4) * ctx.bracket(u) * ctx.bracket(u + one)) *
                     theta(3, zero, ctx.tau, ctx.cutoff) / ctx.vt(3, one) *
                     g_height(a, ctx) /
                     (g_height(b, ctx) * pairing(a, b, 2, ctx));
  Vector<T> rhs(3, cx<T>(T(0)));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) rhs[i] += pref * q(i, j) * pv.mu[j];
  return vec_residual(Vector<T>{lhs.mu[0], lhs.mu[1], lhs.mu[2]}, rhs);
}

}  // namespace ellfuse
