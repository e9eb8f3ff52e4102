#pragma once

// Elliptic building blocks: Jacobi theta functions via their defining
// products, the parameter context shared by every higher-level object,
// theta quotients (sn/cn/dn), the bracket two-form, and q-series utilities.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ellfuse {

template <class T>
using cx = std::complex<T>;

// ---------------------------------------------------------------------------
// Error taxonomy.
//
//  * domain_error        -- parameters outside the analytic domain
//                           (Im tau <= 0, |q| >= 1, heights out of range, ...)
//  * argument_error      -- structurally invalid call (cutoff < 1, shape
//                           mismatch, parity violation, bad theta index, ...)
//  * pole_error          -- evaluation lands on (or numerically too close to)
//                           a pole / vanishing denominator
//  * admissibility_error -- no admissible intermediate height exists
//  * sampling_error      -- the guarded sampler exhausted its redraw budget
//  * consistency_error   -- two internally equivalent computations disagree
// ---------------------------------------------------------------------------

struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct argument_error : std::runtime_error {
  explicit argument_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct pole_error : std::runtime_error {
  explicit pole_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct admissibility_error : std::runtime_error {
  explicit admissibility_error(const std::string& msg)
      : std::runtime_error(msg) {}
};

struct sampling_error : std::runtime_error {
  explicit sampling_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct consistency_error : std::runtime_error {
  explicit consistency_error(const std::string& msg)
      : std::runtime_error(msg) {}
};

// Relative size below which a denominator counts as a pole hit.
inline constexpr double pole_threshold = 1e-12;

// ---------------------------------------------------------------------------
// Theta functions.
//
// theta(1, u, tau) is the defining product
//
//   2 q^{1/8} (q;q)_inf sin(pi u) prod_{n>=1} (1 - 2 q^n cos(2 pi u) + q^{2n})
//
// with nome q = exp(2 pi i tau).  The companions are fixed by the shifts
//
//   theta_0(u|tau) = -i exp(i pi (u + tau/4)) theta_1(u + tau/2 | tau)
//   theta_2(u|tau) =                          theta_1(u + 1/2   | tau)
//   theta_3(u|tau) =    exp(i pi (u + tau/4)) theta_1(u + (tau+1)/2 | tau)
//
// so theta_0 here is the convention usually written theta_4.
// ---------------------------------------------------------------------------

template <class T>
cx<T> theta(int k, cx<T> u, cx<T> tau, int cutoff) {
  if (cutoff < 1) throw argument_error("theta: cutoff must be >= 1");
  if (!(tau.imag() > T(0))) throw domain_error("theta: Im(tau) must be > 0");
  const T pi = std::numbers::pi_v<T>;
  const cx<T> i(T(0), T(1));
  switch (k) {
    case 1: {
      const cx<T> q = std::exp(T(2) * pi * i * tau);
      cx<T> euler(T(1));
      cx<T> qn(T(1));
      for (int n = 1; n < cutoff; ++n) {
        qn *= q;
        euler *= T(1) - qn;
      }
      cx<T> val = T(2) * std::pow(q, T(0.125)) * euler * std::sin(pi * u);
      const cx<T> c2u = std::cos(T(2) * pi * u);
      cx<T> qm(T(1));
      for (int n = 1; n < cutoff; ++n) {
        qm *= q;
        val *= T(1) - T(2) * qm * c2u + qm * qm;
      }
      return val;
    }
    case 0:
      return -i * std::exp(pi * i * (u + tau / T(4))) *
             theta(1, u + tau / T(2), tau, cutoff);
    case 2:
      return theta(1, u + T(0.5), tau, cutoff);
    case 3:
      return std::exp(pi * i * (u + tau / T(4))) *
             theta(1, u + (tau + T(1)) / T(2), tau, cutoff);
    default:
      throw argument_error("theta: index must be one of 0,1,2,3");
  }
}

// ---------------------------------------------------------------------------
// q-series utilities.
// ---------------------------------------------------------------------------

// (a; q)_inf truncated after `cutoff` factors.
template <class T>
cx<T> q_product(cx<T> a, cx<T> q, int cutoff) {
  if (cutoff < 1) throw argument_error("q_product: cutoff must be >= 1");
  if (!(std::abs(q) < T(1))) throw domain_error("q_product: |q| must be < 1");
  cx<T> val(T(1));
  cx<T> aq = a;
  for (int n = 0; n < cutoff; ++n) {
    val *= T(1) - aq;
    aq *= q;
  }
  return val;
}

// (a; q1, q2)_inf = prod_{m,n >= 0} (1 - a q1^m q2^n), truncated.
template <class T>
cx<T> triple_product(cx<T> a, cx<T> q1, cx<T> q2, int cutoff) {
  if (cutoff < 1) throw argument_error("triple_product: cutoff must be >= 1");
  if (!(std::abs(q1) < T(1)) || !(std::abs(q2) < T(1)))
    throw domain_error("triple_product: |q1|, |q2| must be < 1");
  cx<T> val(T(1));
  cx<T> aq1 = a;
  for (int m = 0; m < cutoff; ++m) {
    cx<T> term = aq1;
    for (int n = 0; n < cutoff; ++n) {
      val *= T(1) - term;
      term *= q2;
    }
    aq1 *= q1;
  }
  return val;
}

// Theta_q(z) = (z; q)_inf (q/z; q)_inf (q; q)_inf.
template <class T>
cx<T> theta_q(cx<T> z, cx<T> q, int cutoff) {
  return q_product(z, q, cutoff) * q_product(q / z, q, cutoff) *
         q_product(q, q, cutoff);
}

// ---------------------------------------------------------------------------
// EllipticContext: fixes (r, tau, cutoff, tol) and the derived constants
//
//   log_x = -i pi / (r tau),  x = exp(log_x),  p = x^{2r},
//   nome  = exp(2 pi i tau),
//   C     = x^{-r/4} e^{-i pi/4} sqrt(tau)   (principal branch),
//
// so that the bracket is [u] = C theta_1(u/r | tau).
// ---------------------------------------------------------------------------

template <class T = double>
struct EllipticContext {
  T r;
  cx<T> tau;
  int cutoff;
  T tol;

  cx<T> log_x;
  cx<T> x;
  cx<T> p;
  cx<T> nome;
  cx<T> C;

  explicit EllipticContext(T r_, cx<T> tau_, int cutoff_ = 32,
                           T tol_ = T(1e-9))
      : r(r_), tau(tau_), cutoff(cutoff_), tol(tol_) {
    if (!(r > T(2))) throw domain_error("EllipticContext: r must be > 2");
    if (!(tau.imag() > T(0)))
      throw domain_error("EllipticContext: Im(tau) must be > 0");
    if (cutoff < 1)
      throw argument_error("EllipticContext: cutoff must be >= 1");
    if (!(tol > T(0))) throw argument_error("EllipticContext: tol must be > 0");
    const T pi = std::numbers::pi_v<T>;
    const cx<T> i(T(0), T(1));
    log_x = -pi * i / (r * tau);
    x = std::exp(log_x);
    p = std::exp(T(2) * r * log_x);
    nome = std::exp(T(2) * pi * i * tau);
    C = std::exp(-(r / T(4)) * log_x) * std::exp(-pi * i / T(4)) *
        std::sqrt(tau);
    if (!(std::abs(p) < T(1)))
      throw domain_error("EllipticContext: |p| = |x^(2r)| must be < 1");
    if (!(std::abs(nome) < T(1)))
      throw domain_error("EllipticContext: |nome| must be < 1");
  }

  // theta_k(u/r | tau)
  cx<T> vt(int k, cx<T> u) const { return theta(k, u / r, tau, cutoff); }
  // theta_k(u/(2r) | tau/2)
  cx<T> vth(int k, cx<T> u) const {
    return theta(k, u / (T(2) * r), tau / T(2), cutoff);
  }

  cx<T> bracket(cx<T> u) const { return C * vt(1, u); }
  cx<T> bracket(T u) const { return bracket(cx<T>(u, T(0))); }
  cx<T> bracket(int u) const { return bracket(cx<T>(T(u), T(0))); }
};

// Bracket as the single-variable theta series:
// [u] = x^{u^2/r - u} Theta_p(x^{2u}).
template <class T>
cx<T> bracket_product(cx<T> u, const EllipticContext<T>& ctx) {
  const cx<T> z = std::exp(T(2) * u * ctx.log_x);
  const cx<T> pref = std::exp((u * u / ctx.r - u) * ctx.log_x);
  return pref * theta_q(z, ctx.p, ctx.cutoff);
}

// ---------------------------------------------------------------------------
// Jacobi elliptic functions as theta quotients at argument u/r:
//
//   sn u = theta_3(0) theta_1(u/r) / (theta_2(0) theta_0(u/r))
//   cn u = theta_0(0) theta_2(u/r) / (theta_2(0) theta_0(u/r))
//   dn u = theta_0(0) theta_3(u/r) / (theta_3(0) theta_0(u/r))
// ---------------------------------------------------------------------------

enum class JacobiKind { sn, cn, dn };

template <class T>
cx<T> jacobi(JacobiKind kind, cx<T> u, const EllipticContext<T>& ctx) {
  const cx<T> zero(T(0));
  const cx<T> den = ctx.vt(0, u);
  const cx<T> scale = theta(0, cx<T>(T(0)), ctx.tau, ctx.cutoff);
  if (std::abs(den) < T(pole_threshold) * std::abs(scale))
    throw pole_error("jacobi: theta_0(u/r) vanishes");
  switch (kind) {
    case JacobiKind::sn:
      return theta(3, zero, ctx.tau, ctx.cutoff) * ctx.vt(1, u) /
             (theta(2, zero, ctx.tau, ctx.cutoff) * den);
    case JacobiKind::cn:
      return scale * ctx.vt(2, u) /
             (theta(2, zero, ctx.tau, ctx.cutoff) * den);
    case JacobiKind::dn:
      return scale * ctx.vt(3, u) /
             (theta(3, zero, ctx.tau, ctx.cutoff) * den);
  }
  throw argument_error("jacobi: unknown kind");
}

template <class T>
cx<T> jacobi_sn(cx<T> u, const EllipticContext<T>& ctx) {
  return jacobi(JacobiKind::sn, u, ctx);
}
template <class T>
cx<T> jacobi_cn(cx<T> u, const EllipticContext<T>& ctx) {
  return jacobi(JacobiKind::cn, u, ctx);
}
template <class T>
cx<T> jacobi_dn(cx<T> u, const EllipticContext<T>& ctx) {
  return jacobi(JacobiKind::dn, u, ctx);
}

// Residual convention shared across the library:
// max|a - b| / max(1, |a|, |b|), extended entrywise for matrices.
template <class T>
T scalar_residual(cx<T> a, cx<T> b) {
  const T scale = std::max(T(1), std::max(std::abs(a), std::abs(b)));
  return std::abs(a - b) / scale;
}

}  // namespace ellfuse
