#pragma once

// SOS face weights: the level-1 weight W(a b / d c | u) with NW height n = a,
// its row fusion W21 and full fusion W22 (sums over intermediate heights,
// choice-independent), and the crossing factors g_a and (a,b)_M.

#include <cmath>
#include <optional>

#include "ellfuse/core.hpp"
#include "ellfuse/vertex.hpp"

namespace ellfuse {

// Level-1 face weight.  Corners: a = NW, b = NE, d = SW, c = SE; all four
// adjacent differences must be +-1, otherwise the weight is 0 by convention.
// The three admissible patterns evaluate to
//   b = d, c = a + 2(b-a):  R0(u)
//   b = d, c = a:           rho(u) [n - (b-a) u][1] / [n]
//   b != d (then c = a):    rho(u) [n + (b-a)][u] / [n]
// with rho(u) = R0(u)/[1+u] in its analytically cancelled form.
template <class T>
cx<T> w_face(int a, int b, int d, int c, cx<T> u,
             const EllipticContext<T>& ctx) {
  if (std::abs(a - b) != 1 || std::abs(a - d) != 1 || std::abs(b - c) != 1 ||
      std::abs(d - c) != 1)
    return cx<T>(T(0));
  const int n = a;
  const int s = b - a;
  if (b == d && c - a == 2 * s) return r0_scalar(u, ctx);
  const cx<T> bn = ctx.bracket(n);
  if (std::abs(bn) < T(pole_threshold) * std::abs(ctx.bracket(1)))
    throw pole_error("w_face: bracket(n) vanishes at the NW height");
  const cx<T> rho = r0_over_bracket_1u(u, ctx);
  if (b == d)  // c == a
    return rho * ctx.bracket(cx<T>(T(n)) - T(s) * u) * ctx.bracket(1) / bn;
  // b != d forces c == a at level 1.
  return rho * ctx.bracket(n + s) * ctx.bracket(u) / bn;
}

namespace detail {

// First a' in (a-1, a+1) adjacent to b, if any.
inline std::optional<int> first_mid(int a, int b) {
  if (std::abs((a - 1) - b) == 1) return a - 1;
  if (std::abs((a + 1) - b) == 1) return a + 1;
  return std::nullopt;
}

inline bool admissible1(int a, int b, int d, int c) {
  return std::abs(a - b) == 1 && std::abs(a - d) == 1 && std::abs(b - c) == 1 &&
         std::abs(d - c) == 1;
}

// W21 with an explicit a'; callers must have validated a'.  Terms where
// either corner square is non-admissible are structural zeros and are
// skipped before evaluation, so a singular factor paired with a structural
// zero never poisons the sum.
template <class T>
cx<T> w21_sum(int a, int b, int d, int c, cx<T> u, int aprime,
              const EllipticContext<T>& ctx) {
  cx<T> total(T(0));
  for (const int dp : {d - 1, d + 1}) {
    if (!admissible1(a, aprime, d, dp) || !admissible1(aprime, b, dp, c))
      continue;
    total += w_face(a, aprime, d, dp, u + T(1), ctx) *
             w_face(aprime, b, dp, c, u, ctx);
  }
  return total;
}

// W21 for use inside fused sums: configurations without a valid a' are
// formal zeros of the sum, not errors.
template <class T>
cx<T> w21_or_zero(int a, int b, int d, int c, cx<T> u,
                  const EllipticContext<T>& ctx) {
  const auto ap = first_mid(a, b);
  if (!ap) return cx<T>(T(0));
  return w21_sum(a, b, d, c, u, *ap, ctx);
}

}  // namespace detail

// Row-fused weight W21(a b / d c | u) = sum_{d'} W(a a' / d d' | u+1)
// W(a' b / d' c | u); independent of the admissible choice of a'.
template <class T>
cx<T> w21(int a, int b, int d, int c, cx<T> u, const EllipticContext<T>& ctx,
          std::optional<int> aprime = std::nullopt) {
  if (aprime) {
    if (std::abs(a - *aprime) != 1 || std::abs(*aprime - b) != 1)
      throw argument_error("w21: supplied a' is not adjacent to both a and b");
    return detail::w21_sum(a, b, d, c, u, *aprime, ctx);
  }
  const auto ap = detail::first_mid(a, b);
  if (!ap)
    throw admissibility_error("w21: no height adjacent to both a and b");
  return detail::w21_sum(a, b, d, c, u, *ap, ctx);
}

// Fully fused weight W22(a b / d c | u) = sum_{a'} W21(a b / a' b' | u-1)
// W21(a' b' / d c | u); independent of the admissible choice of b'.
template <class T>
cx<T> w22(int a, int b, int d, int c, cx<T> u, const EllipticContext<T>& ctx,
          std::optional<int> bprime = std::nullopt) {
  int bp;
  if (bprime) {
    if (std::abs(b - *bprime) != 1 || std::abs(*bprime - c) != 1)
      throw argument_error("w22: supplied b' is not adjacent to both b and c");
    bp = *bprime;
  } else {
    const auto cand = detail::first_mid(b, c);
    if (!cand)
      throw admissibility_error("w22: no height adjacent to both b and c");
    bp = *cand;
  }
  cx<T> total(T(0));
  for (const int ap : {a - 1, a + 1})
    total += detail::w21_or_zero(a, b, ap, bp, u - T(1), ctx) *
             detail::w21_or_zero(ap, bp, d, c, u, ctx);
  return total;
}

// ---------------------------------------------------------------------------
// Crossing factors.
// ---------------------------------------------------------------------------

// epsilon_a = (-1)^floor(a/2); satisfies epsilon_a epsilon_{a+1} = (-1)^a.
inline int eps_height(int a) {
  if (a < 0) throw domain_error("eps_height: height must be >= 0");
  return (a / 2) % 2 == 0 ? 1 : -1;
}

// g_a = epsilon_a sqrt([a]); requires 0 < a < r.
template <class T>
cx<T> g_height(int a, const EllipticContext<T>& ctx) {
  if (!(a > 0 && T(a) < ctx.r))
    throw domain_error("g_height: height must satisfy 0 < a < r");
  return T(eps_height(a)) * std::sqrt(ctx.bracket(a));
}

// [A, B] = [A][A+1]...[B]; empty (B < A) gives 1.
template <class T>
cx<T> bracket_range(int a, int b, const EllipticContext<T>& ctx) {
  cx<T> val(T(1));
  for (int k = a; k <= b; ++k) val *= ctx.bracket(k);
  return val;
}

// q-binomial [A choose B] = [A][A-1]...[A-B+1] / ([B][B-1]...[1]).
template <class T>
cx<T> q_binomial(int a, int b, const EllipticContext<T>& ctx) {
  if (b < 0) throw argument_error("q_binomial: B must be >= 0");
  cx<T> num(T(1)), den(T(1));
  for (int i = 0; i < b; ++i) num *= ctx.bracket(a - i);
  for (int i = 1; i <= b; ++i) den *= ctx.bracket(i);
  if (std::abs(den) < T(pole_threshold))
    throw pole_error("q_binomial: denominator bracket product vanishes");
  return num / den;
}

// (a,b)_M = [ (a+b-M)/2 , (a+b+M)/2 ] / ( [M choose (a-b+M)/2] sqrt([a][b]) ).
// Symmetric in (a, b).
template <class T>
cx<T> pairing(int a, int b, int m, const EllipticContext<T>& ctx) {
  if (!(a > 0 && T(a) < ctx.r) || !(b > 0 && T(b) < ctx.r))
    throw domain_error("pairing: heights must satisfy 0 < h < r");
  if ((a - b + m) % 2 != 0)
    throw argument_error("pairing: (a - b + M) must be even");
  const int k = (a - b + m) / 2;
  if (k < 0 || k > m)
    throw domain_error("pairing: (a - b + M)/2 must lie in [0, M]");
  if ((a + b - m) / 2 < 1)
    throw domain_error("pairing: (a + b - M)/2 must be >= 1");
  const cx<T> bn = q_binomial(m, k, ctx);
  return bracket_range((a + b - m) / 2, (a + b + m) / 2, ctx) /
         (bn * std::sqrt(ctx.bracket(a) * ctx.bracket(b)));
}

}  // namespace ellfuse
