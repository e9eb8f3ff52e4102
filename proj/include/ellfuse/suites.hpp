#pragma once

// Verification suites.  Each suite evaluates one or more named identities at
// deterministically sampled parameter points and records a residual report
// per evaluation.  Residuals are scale-free: |A - B| / max(1, |A|, |B|).

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "ellfuse/core.hpp"
#include "ellfuse/face.hpp"
#include "ellfuse/fateev.hpp"
#include "ellfuse/fusion.hpp"
#include "ellfuse/intertwiner.hpp"
#include "ellfuse/report.hpp"
#include "ellfuse/sampling.hpp"
#include "ellfuse/tensor.hpp"
#include "ellfuse/vertex.hpp"

namespace ellfuse {

struct SuiteConfig {
  double r = 6.0;
  double tau_im = 1.2;
  int cutoff = 32;
  int points = 25;
  std::uint64_t seed = 42;
  double tol = 0.0;  // 0 means per-identity default thresholds.
  std::vector<std::string> suites;  // empty means all suites.
};

struct RunResult {
  std::vector<IdentityReport> reports;
  std::vector<std::string> warnings;
  long excluded = 0;
  long evaluated = 0;

  bool all_pass() const {
    for (const auto& r : reports)
      if (!r.pass) return false;
    return true;
  }
};

namespace detail {

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(
             clock::now().time_since_epoch())
      .count();
}

class SuiteRunner {
 public:
  SuiteRunner(const SuiteConfig& cfg, RunResult& out)
      : cfg_(cfg),
        ctx_(cfg.r, cx<double>(0.0, cfg.tau_im), cfg.cutoff,
             cfg.tol > 0 ? cfg.tol : 1e-9),
        out_(out) {}

  // --- generic drivers ------------------------------------------------

  // One evaluation at a fixed parameter set (no sampling).
  void fixed(const std::string& id, double def_thr, Params params,
             const std::function<double()>& eval) {
    const double thr = threshold(def_thr);
    const double t0 = now_ms();
    try {
      const double resid = eval();
      record(id, std::move(params), resid, thr, now_ms() - t0);
      ++out_.evaluated;
    } catch (const pole_error&) {
      exclude(id);
    } catch (const domain_error&) {
      exclude(id);
    } catch (const admissibility_error&) {
      exclude(id);
    }
  }

  // One evaluation per sampled point.  The callback may attach extra
  // parameters (heights, sign choices); u/v are prepended automatically
  // when used ("uses_v" controls whether the identity consumes v).
  void sampled(const std::string& id, double def_thr, bool uses_v,
               const std::function<double(const SamplePoint&, Params&)>& eval) {
    const double thr = threshold(def_thr);
    PointSampler sampler(cfg_.seed ^ fnv1a64(id), ctx_);
    int got = 0;
    long tries = 0;
    const long max_tries = 20L * cfg_.points + 100;
    while (got < cfg_.points && tries < max_tries) {
      ++tries;
      SamplePoint pt;
      try {
        pt = sampler.next();
      } catch (const sampling_error& e) {
        out_.warnings.push_back(id + ": " + e.what());
        break;
      }
      Params params;
      params.emplace_back("u", ParamValue::complex_number(pt.u));
      if (uses_v) params.emplace_back("v", ParamValue::complex_number(pt.v));
      const double t0 = now_ms();
      try {
        const double resid = eval(pt, params);
        record(id, std::move(params), resid, thr, now_ms() - t0);
        ++out_.evaluated;
        ++got;
      } catch (const pole_error&) {
        exclude(id);
      } catch (const domain_error&) {
        exclude(id);
      } catch (const admissibility_error&) {
        exclude(id);
      }
    }
    if (got < cfg_.points)
      out_.warnings.push_back(id + ": collected " + std::to_string(got) +
                              " of " + std::to_string(cfg_.points) +
                              " points before giving up");
  }

  // --- suites ----------------------------------------------------------

  void theta_core() {
    const cx<double> tau = ctx_.tau;
    sampled("theta-quasiperiodicity", 1e-10, false,
            [&](const SamplePoint& pt, Params&) {
              const cx<double> w = pt.u / ctx_.r;
              const cx<double> base = theta(1, w, tau, ctx_.cutoff);
              const cx<double> lhs_u = theta(1, w + 1.0, tau, ctx_.cutoff);
              const double r1 = scalar_residual(lhs_u, -base);
              const cx<double> lhs_t = theta(1, w + tau, tau, ctx_.cutoff);
              const cx<double> phase = -std::exp(
                  cx<double>(0.0, -std::numbers::pi_v<double>) * (tau + 2.0 * w));
              const double r2 = scalar_residual(lhs_t, phase * base);
              return std::max(r1, r2);
            });
    sampled("theta-duplication", 1e-10, false,
            [&](const SamplePoint& pt, Params&) {
              const cx<double> w = pt.u / (2.0 * ctx_.r);
              const cx<double> lhs = theta(1, w, tau / 2.0, ctx_.cutoff) *
                                     theta(2, w, tau / 2.0, ctx_.cutoff);
              const cx<double> rhs = theta(0, cx<double>(0.0), tau, ctx_.cutoff) *
                                     theta(1, 2.0 * w, tau, ctx_.cutoff);
              return scalar_residual(lhs, rhs);
            });
    sampled("bracket-two-form", 1e-10, false,
            [&](const SamplePoint& pt, Params&) {
              return scalar_residual(ctx_.bracket(pt.u),
                                     bracket_product(pt.u, ctx_));
            });
  }

  void vertex_unitarity() {
    const auto p = flip_matrix<double>(2, 2);
    const auto id4 = Matrix<double>::identity(4);
    sampled("vertex-unitarity", 1e-9, false,
            [&](const SamplePoint& pt, Params&) {
              const auto lhs =
                  baxter_r(pt.u, ctx_) * p * baxter_r(-pt.u, ctx_) * p;
              return residual(lhs, id4);
            });
  }

  void vertex_crossing() {
    const auto p = flip_matrix<double>(2, 2);
    const auto sy2 = kron(sigma_y<double>(), Matrix<double>::identity(2));
    sampled("vertex-crossing", 1e-9, false,
            [&](const SamplePoint& pt, Params&) {
              const auto lhs = baxter_r(-pt.u - 1.0, ctx_);
              const auto mid =
                  partial_transpose_first(p * baxter_r(pt.u, ctx_) * p, 2, 2);
              const auto rhs = -(sy2 * mid * sy2);
              return residual(lhs, rhs);
            });
  }

  void vertex_initial() {
    const auto p = flip_matrix<double>(2, 2);
    fixed("vertex-initial-value", 1e-12, {}, [&]() {
      return residual(baxter_r(cx<double>(0.0), ctx_), p);
    });
    const cx<double> u(-1.0 + 1e-6, 0.0);
    Params params;
    params.emplace_back("u", ParamValue::complex_number(u));
    fixed("vertex-degeneration", 1e-4, std::move(params), [&]() {
      const auto lhs = baxter_r(u, ctx_);
      const auto rhs = p - Matrix<double>::identity(4);
      return residual(lhs, rhs);
    });
  }

  void vertex_ybe() {
    const auto id2 = Matrix<double>::identity(2);
    sampled("vertex-ybe", 1e-8, true,
            [&](const SamplePoint& pt, Params&) {
              const auto r12 = kron(baxter_r(pt.u - pt.v, ctx_), id2);
              const auto r23 = kron(id2, baxter_r(pt.v, ctx_));
              const auto r13 = detail::lift_to_13(baxter_r(pt.u, ctx_));
              const auto lhs = r12 * r13 * r23;
              const auto rhs = r23 * r13 * r12;
              return residual(lhs, rhs);
            });
  }

  void fusion21_agreement() {
    sampled("fusion21-agreement", 1e-9, false,
            [&](const SamplePoint& pt, Params&) {
              const auto def = fuse21(pt.u, ctx_, FusionMethod::by_definition);
              const auto clo = fuse21(pt.u, ctx_, FusionMethod::closed_form);
              return residual(def, clo);
            });
    sampled("fusion21-prefactor", 1e-9, false,
            [&](const SamplePoint& pt, Params&) {
              const cx<double> lhs =
                  r0_scalar(pt.u + 1.0, ctx_) * r0_scalar(pt.u, ctx_);
              const cx<double> rhs =
                  -ctx_.bracket(pt.u + 1.0) / ctx_.bracket(pt.u);
              return scalar_residual(lhs, rhs);
            });
  }

  void fusion22_agreement() {
    sampled("fusion22-agreement", 1e-9, false,
            [&](const SamplePoint& pt, Params&) {
              const auto def = fuse22(pt.u, ctx_, FusionMethod::by_definition);
              const auto clo = fuse22(pt.u, ctx_, FusionMethod::closed_form);
              return residual(def, clo);
            });
  }

  void fusion_projector() {
    const auto id2 = Matrix<double>::identity(2);
    const auto pim = kron(sym_restrict_matrix<double>(), id2);
    const auto proj = kron(symmetrizer<double>(), id2);
    sampled("fusion-projector", 1e-10, false,
            [&](const SamplePoint& pt, Params&) {
              const auto a = pim * detail::lift_to_13(baxter_r(pt.u + 1.0, ctx_)) *
                             kron(id2, baxter_r(pt.u, ctx_));
              return residual(a * proj, a);
            });
  }

  void fusion_invariance() {
    const auto p2 = flip_matrix<double>(3, 3);
    Matrix<double> refl(3, 3);
    refl(0, 2) = 1.0;
    refl(1, 1) = 1.0;
    refl(2, 0) = 1.0;
    const auto jj = kron(refl, refl);
    sampled("fusion22-flip-invariance", 1e-10, false,
            [&](const SamplePoint& pt, Params&) {
              const auto r22 = fuse22(pt.u, ctx_, FusionMethod::closed_form);
              return residual(p2 * r22 * p2, r22);
            });
    sampled("fusion22-spin-reflection", 1e-10, false,
            [&](const SamplePoint& pt, Params&) {
              const auto r22 = fuse22(pt.u, ctx_, FusionMethod::closed_form);
              return residual(jj * r22 * jj, r22);
            });
  }

  void fusion_ybe() {
    const auto id3 = Matrix<double>::identity(3);
    const auto flip23 = kron(id3, flip_matrix<double>(3, 3));
    sampled("fusion-ybe", 1e-8, true,
            [&](const SamplePoint& pt, Params&) {
              const auto r12 = kron(
                  fuse22(pt.u - pt.v, ctx_, FusionMethod::closed_form), id3);
              const auto r23 =
                  kron(id3, fuse22(pt.v, ctx_, FusionMethod::closed_form));
              const auto r13 =
                  flip23 *
                  kron(fuse22(pt.u, ctx_, FusionMethod::closed_form), id3) *
                  flip23;
              const auto lhs = r12 * r13 * r23;
              const auto rhs = r23 * r13 * r12;
              return residual(lhs, rhs);
            });
  }

  void gauge_equivalence() {
    // Sign scan at a fixed spectral point: every branch choice of the gauge
    // must conjugate the fused weights into the 21-vertex form.
    const cx<double> u0(0.37, 0.0);
    for (const int sx : {1, -1}) {
      for (const int sy : {1, -1}) {
        Params params;
        params.emplace_back("u", ParamValue::complex_number(u0));
        params.emplace_back("sign_x", ParamValue::integer(sx));
        params.emplace_back("sign_y", ParamValue::integer(sy));
        fixed("gauge-sign-scan", 1e-9, std::move(params), [&, sx, sy]() {
          return gauge_residual(u0, sx, sy);
        });
      }
    }
    sampled("gauge-equivalence", 1e-9, false,
            [&](const SamplePoint& pt, Params&) {
              return gauge_residual(pt.u, 1, 1);
            });
  }

  void gauge_q() {
    fixed("gauge-q-closed-form", 1e-12, {}, [&]() {
      const auto gauge = gauge_pair(ctx_);
      return residual(q_matrix(gauge), q_closed(gauge));
    });
  }

  void fusion22_crossing() {
    sampled("fusion22-crossing", 1e-8, false,
            [&](const SamplePoint& pt, Params&) {
              return crossing22_residual(pt.u, ctx_);
            });
    const cx<double> u0(-0.5, 0.0);
    Params params;
    params.emplace_back("u", ParamValue::complex_number(u0));
    fixed("fusion22-crossing-selfdual", 1e-8, std::move(params),
          [&]() { return crossing22_residual(u0, ctx_); });
  }

  void fateev_functional() {
    sampled("ftilde-reflection", 1e-10, false,
            [&](const SamplePoint& pt, Params&) {
              return scalar_residual(ftilde(pt.u, ctx_),
                                     ftilde(-pt.u - 1.0, ctx_));
            });
    sampled("ftilde-product", 1e-9, false,
            [&](const SamplePoint& pt, Params&) {
              const cx<double> lhs = ftilde(pt.u, ctx_) * ftilde(-pt.u, ctx_);
              const cx<double> snu = jacobi_sn(pt.u, ctx_);
              const cx<double> sn2 = jacobi_sn(cx<double>(2.0), ctx_);
              const cx<double> rhs = snu * snu / (snu * snu - sn2 * sn2);
              return scalar_residual(lhs, rhs);
            });
    sampled("fateev-transpose-symmetry", 1e-12, false,
            [&](const SamplePoint& pt, Params&) {
              const auto rf = fateev_r(pt.u, ctx_);
              return residual(rf.transpose(), rf);
            });
    const auto p2 = flip_matrix<double>(3, 3);
    sampled("fateev-flip-invariance", 1e-12, false,
            [&](const SamplePoint& pt, Params&) {
              const auto rf = fateev_r(pt.u, ctx_);
              return residual(p2 * rf * p2, rf);
            });
    sampled("fateev-crossing", 1e-9, false,
            [&](const SamplePoint& pt, Params&) {
              const auto a = fateev_r(pt.u, ctx_);
              const auto b = fateev_r(-pt.u - 1.0, ctx_);
              const double scale =
                  std::max({1.0, a.max_abs(), b.max_abs()});
              double worst = 0.0;
              for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                  for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                      worst = std::max(
                          worst, std::abs(a(3 * k + l, 3 * i + j) -
                                          b(3 * i + l, 3 * k + j)) /
                                     scale);
              return worst;
            });
  }

  void face_initial() {
    fixed("face-initial-condition", 1e-12, {}, [&]() {
      double worst = 0.0;
      for (int a = 1; a <= 5; ++a)
        for (const int b : {a - 1, a + 1})
          for (const int d : {a - 1, a + 1})
            for (const int c : {b - 1, b + 1}) {
              if (b < 1 || b > 5 || d < 1 || d > 5 || c < 1 || c > 5) continue;
              if (std::abs(d - c) != 1) continue;
              const cx<double> w =
                  w_face(a, b, d, c, cx<double>(0.0), ctx_);
              const double expect = (b == d) ? 1.0 : 0.0;
              worst = std::max(worst, std::abs(w - expect));
            }
      return worst;
    });
  }

  void face_w21_vanishing() {
    fixed("face-w21-vanishing", 1e-9, {}, [&]() {
      double worst0 = 0.0;
      double scale = 0.0;
      const cx<double> probe(0.37, 0.0);
      for (int a = 1; a <= 5; ++a)
        for (const int b : {a - 2, a, a + 2})
          for (const int d : {a - 1, a + 1})
            for (const int c : {b - 1, b + 1}) {
              if (b < 1 || b > 5 || d < 1 || d > 5 || c < 1 || c > 5) continue;
              if (std::abs(d - c) != 0 && std::abs(d - c) != 2) continue;
              if (!detail::first_mid(a, b)) continue;
              worst0 = std::max(
                  worst0, std::abs(w21(a, b, d, c, cx<double>(-1.0), ctx_)));
              scale = std::max(scale,
                               std::abs(w21(a, b, d, c, probe, ctx_)));
            }
      return worst0 / std::max(1.0, scale);
    });
  }

  void face_choice() {
    sampled("face-choice-independence", 1e-10, false,
            [&](const SamplePoint& pt, Params&) {
              const cx<double> a2 = w21(3, 3, 4, 4, pt.u, ctx_, 2);
              const cx<double> a4 = w21(3, 3, 4, 4, pt.u, ctx_, 4);
              double worst = scalar_residual(a2, a4);
              const cx<double> b2 = w21(3, 3, 2, 2, pt.u, ctx_, 2);
              const cx<double> b4 = w21(3, 3, 2, 2, pt.u, ctx_, 4);
              worst = std::max(worst, scalar_residual(b2, b4));
              const cx<double> c2 = w22(3, 3, 3, 3, pt.u, ctx_, 2);
              const cx<double> c4 = w22(3, 3, 3, 3, pt.u, ctx_, 4);
              worst = std::max(worst, scalar_residual(c2, c4));
              return worst;
            });
  }

  void face_unitarity() {
    static const std::vector<std::array<int, 4>> configs = {
        {3, 5, 3, 3}, {3, 3, 3, 3}, {2, 4, 2, 2}, {4, 2, 4, 4}, {3, 1, 3, 3}};
    sampled("face-unitarity", 1e-8, false,
            [&](const SamplePoint& pt, Params&) {
              double worst = 0.0;
              for (const auto& q : configs) {
                const int a = q[0], b = q[1], d = q[2], c = q[3];
                cx<double> total(0.0);
                for (const int s : detail::level2_mids(a, c, ctx_))
                  total += w22(a, s, d, c, -pt.u, ctx_) *
                           w22(a, b, s, c, pt.u, ctx_);
                const cx<double> expect(b == d ? 1.0 : 0.0);
                worst = std::max(worst, scalar_residual(total, expect));
              }
              return worst;
            });
  }

  void face_crossing() {
    static const std::vector<std::array<int, 4>> configs = {
        {3, 3, 5, 5}, {3, 5, 3, 3}, {2, 4, 4, 2}, {3, 3, 3, 3}, {1, 3, 3, 5}};
    sampled("face-crossing", 1e-8, false,
            [&](const SamplePoint& pt, Params&) {
              double worst = 0.0;
              for (const auto& q : configs) {
                const int a = q[0], b = q[1], d = q[2], c = q[3];
                const cx<double> lhs = w22(d, c, a, b, pt.u, ctx_);
                const cx<double> factor =
                    pairing(b, c, 2, ctx_) * g_height(a, ctx_) *
                    g_height(c, ctx_) /
                    (pairing(a, d, 2, ctx_) * g_height(b, ctx_) *
                     g_height(d, ctx_));
                const cx<double> rhs =
                    factor * w22(a, d, b, c, -1.0 - pt.u, ctx_);
                worst = std::max(worst, scalar_residual(lhs, rhs));
              }
              return worst;
            });
  }

  void face_ybe() {
    static const std::vector<std::array<int, 6>> configs = {
        {3, 4, 3, 4, 2, 3}, {3, 4, 5, 4, 4, 5}, {2, 3, 4, 3, 3, 4}};
    const cx<double> w(0.11, 0.0);
    sampled("face-ybe", 1e-8, true,
            [&](const SamplePoint& pt, Params&) {
              double worst = 0.0;
              for (const auto& q : configs) {
                const int a = q[0], b = q[1], c = q[2], d = q[3];
                const int bigA = q[4], bigB = q[5];
                cx<double> lhs(0.0), rhs(0.0);
                for (int g = 0; g <= 7; ++g) {
                  if (detail::admissible1(b, c, g, d) &&
                      detail::admissible1(a, b, bigA, g) &&
                      detail::admissible1(bigA, g, bigB, d))
                    lhs += w_face(b, c, g, d, pt.v - w, ctx_) *
                           w_face(a, b, bigA, g, pt.u - w, ctx_) *
                           w_face(bigA, g, bigB, d, pt.u - pt.v, ctx_);
                  if (detail::admissible1(a, b, g, c) &&
                      detail::admissible1(g, c, bigB, d) &&
                      detail::admissible1(a, g, bigA, bigB))
                    rhs += w_face(a, b, g, c, pt.u - pt.v, ctx_) *
                           w_face(g, c, bigB, d, pt.u - w, ctx_) *
                           w_face(a, g, bigA, bigB, pt.v - w, ctx_);
                }
                const double scale =
                    std::max({1.0, std::abs(lhs), std::abs(rhs)});
                worst = std::max(worst, std::abs(lhs - rhs) / scale);
              }
              return worst;
            });
  }

  void face_ybe22() {
    static const std::vector<std::array<int, 6>> configs = {
        {3, 3, 5, 3, 1, 3}, {1, 3, 5, 3, 3, 5}, {2, 4, 2, 4, 2, 4}};
    const cx<double> w(0.11, 0.0);
    const auto w22q = [&](int a, int b, int d, int c,
                          const cx<double>& u) -> cx<double> {
      const auto ok = [](int x, int y) {
        const int diff = std::abs(x - y);
        return diff == 0 || diff == 2;
      };
      if (!ok(a, b) || !ok(b, c) || !ok(a, d) || !ok(d, c)) return cx<double>(0.0);
      if (!detail::first_mid(b, c)) return cx<double>(0.0);
      return w22(a, b, d, c, u, ctx_);
    };
    sampled("face-ybe-fused", 1e-8, true,
            [&](const SamplePoint& pt, Params&) {
              double worst = 0.0;
              for (const auto& q : configs) {
                const int a = q[0], b = q[1], c = q[2], d = q[3];
                const int bigA = q[4], bigB = q[5];
                cx<double> lhs(0.0), rhs(0.0);
                for (int g = 0; g <= 7; ++g) {
                  lhs += w22q(b, c, g, d, pt.v - w) *
                         w22q(a, b, bigA, g, pt.u - w) *
                         w22q(bigA, g, bigB, d, pt.u - pt.v);
                  rhs += w22q(a, b, g, c, pt.u - pt.v) *
                         w22q(g, c, bigB, d, pt.u - w) *
                         w22q(a, g, bigA, bigB, pt.v - w);
                }
                const double scale =
                    std::max({1.0, std::abs(lhs), std::abs(rhs)});
                worst = std::max(worst, std::abs(lhs - rhs) / scale);
              }
              return worst;
            });
  }

  void corr_vertexface() {
    static const std::vector<std::array<int, 3>> configs = {
        {3, 4, 5}, {3, 4, 3}, {3, 2, 1}, {2, 3, 4}, {4, 3, 2}};
    sampled("corr-vertex-face", 1e-8, true,
            [&](const SamplePoint& pt, Params&) {
              double worst = 0.0;
              for (const auto& q : configs)
                worst = std::max(worst, vertex_face_residual(pt.u, pt.v, q[0],
                                                             q[1], q[2], ctx_));
              return worst;
            });
  }

  void corr_vertexface_dual() {
    static const std::vector<std::array<int, 3>> configs = {
        {3, 4, 5}, {3, 4, 3}, {3, 2, 3}, {2, 3, 4}};
    sampled("corr-vertex-face-dual", 1e-8, true,
            [&](const SamplePoint& pt, Params&) {
              double worst = 0.0;
              for (const auto& q : configs)
                worst = std::max(worst, vertex_face_dual_residual(
                                            pt.u, pt.v, q[0], q[1], q[2], ctx_));
              return worst;
            });
  }

  void corr_fused() {
    static const std::vector<std::array<int, 3>> configs = {
        {3, 3, 3}, {3, 5, 3}, {1, 3, 5}, {3, 3, 5}, {5, 3, 1},
        {4, 2, 2}, {2, 4, 4}, {3, 5, 5}, {5, 5, 3}};
    sampled("corr-fused-face", 1e-8, true,
            [&](const SamplePoint& pt, Params&) {
              double worst = 0.0;
              for (const auto& q : configs)
                worst = std::max(worst, fused_vertex_face_residual(
                                            pt.u, pt.v, q[0], q[1], q[2], ctx_));
              return worst;
            });
  }

  void corr_fused_dual() {
    static const std::vector<std::array<int, 3>> configs = {
        {3, 3, 3}, {3, 5, 3}, {5, 3, 1}, {4, 2, 2},
        {2, 2, 4}, {4, 4, 2}, {2, 4, 4}};
    sampled("corr-fused-face-dual", 1e-8, true,
            [&](const SamplePoint& pt, Params&) {
              double worst = 0.0;
              for (const auto& q : configs)
                worst = std::max(worst, fused_vertex_face_dual_residual(
                                            pt.u, pt.v, q[0], q[1], q[2], ctx_));
              return worst;
            });
  }

  void inversion_level1() {
    sampled("inversion-level1", 1e-9, false,
            [&](const SamplePoint& pt, Params&) {
              double worst = 0.0;
              for (const int b : {2, 3, 4}) {
                worst = std::max(
                    worst, inversion_level1_orthogonality(pt.u, b, ctx_));
                worst = std::max(
                    worst, inversion_level1_completeness(pt.u, b, ctx_));
              }
              return worst;
            });
  }

  void inversion_level2() {
    sampled("inversion-level2", 1e-9, false,
            [&](const SamplePoint& pt, Params&) {
              const double o = inversion_level2_orthogonality(pt.u, 3, ctx_);
              const double c = inversion_level2_completeness(pt.u, 3, ctx_);
              return std::max(o, c);
            });
  }

  void psi2_agreement() {
    static const std::vector<std::array<int, 2>> pairs = {
        {3, 5}, {3, 3}, {3, 1}};
    sampled("psi2-agreement", 1e-9, false,
            [&](const SamplePoint& pt, Params&) {
              double worst = 0.0;
              for (const auto& ab : pairs) {
                const auto def = psi2(pt.u, ab[0], ab[1], ctx_,
                                      FusionMethod::by_definition);
                const auto clo = psi2(pt.u, ab[0], ab[1], ctx_,
                                      FusionMethod::closed_form);
                for (int k = 0; k < 3; ++k)
                  worst = std::max(worst,
                                   scalar_residual(def.mu[k], clo.mu[k]));
              }
              return worst;
            });
    sampled("psi2-choice-independence", 1e-10, false,
            [&](const SamplePoint& pt, Params&) {
              const auto via2 =
                  psi2(pt.u, 3, 3, ctx_, FusionMethod::by_definition, 2);
              const auto via4 =
                  psi2(pt.u, 3, 3, ctx_, FusionMethod::by_definition, 4);
              double worst = 0.0;
              for (int k = 0; k < 3; ++k)
                worst =
                    std::max(worst, scalar_residual(via2.mu[k], via4.mu[k]));
              return worst;
            });
  }

  void psi2_dual_agreement() {
    static const std::vector<std::array<int, 2>> pairs = {
        {3, 5}, {3, 3}, {3, 1}};
    sampled("psi2-dual-agreement", 1e-9, false,
            [&](const SamplePoint& pt, Params&) {
              double worst = 0.0;
              for (const auto& ab : pairs) {
                const auto def = psi2_dual(pt.u, ab[0], ab[1], ctx_,
                                           FusionMethod::by_definition);
                const auto clo = psi2_dual(pt.u, ab[0], ab[1], ctx_,
                                           FusionMethod::closed_form);
                for (int k = 0; k < 3; ++k)
                  worst = std::max(worst,
                                   scalar_residual(def.mu[k], clo.mu[k]));
              }
              return worst;
            });
    sampled("psi2-dual-split-independence", 1e-10, false,
            [&](const SamplePoint& pt, Params&) {
              const auto pm = psi2_dual(pt.u, 3, 3, ctx_,
                                        FusionMethod::by_definition,
                                        DualSplit::plus_minus);
              const auto mp = psi2_dual(pt.u, 3, 3, ctx_,
                                        FusionMethod::by_definition,
                                        DualSplit::minus_plus);
              double worst = 0.0;
              for (int k = 0; k < 3; ++k)
                worst = std::max(worst, scalar_residual(pm.mu[k], mp.mu[k]));
              const auto cov = psi2_dual_covector(pt.u, 3, 3, ctx_);
              worst = std::max(worst, scalar_residual(cov[1], cov[2]));
              return worst;
            });
  }

  void psi2_duality() {
    static const std::vector<std::array<int, 2>> pairs = {
        {3, 5}, {3, 3}, {3, 1}, {2, 4}, {4, 2},
        {2, 2}, {4, 4}, {1, 3}, {5, 3}};
    sampled("psi2-duality", 1e-8, false,
            [&](const SamplePoint& pt, Params&) {
              double worst = 0.0;
              for (const auto& ab : pairs)
                worst = std::max(
                    worst, gauge_duality_residual(pt.u, ab[0], ab[1], ctx_));
              return worst;
            });
  }

 private:
  double threshold(double def_thr) const {
    return cfg_.tol > 0 ? cfg_.tol : def_thr;
  }

  void record(const std::string& id, Params params, double resid, double thr,
              double ms) {
    IdentityReport rep;
    rep.identity = id;
    rep.params = std::move(params);
    rep.residual = resid;
    rep.threshold = thr;
    rep.pass = resid < thr;
    rep.ms = ms;
    out_.reports.push_back(std::move(rep));
  }

  void exclude(const std::string&) { ++out_.excluded; }

  double gauge_residual(const cx<double>& u, int sign_x, int sign_y) {
    const auto gauge = gauge_pair(ctx_, sign_x, sign_y);
    const auto uu = kron(gauge.u_matrix, gauge.u_matrix);
    const auto r22 = fuse22(u, ctx_, FusionMethod::closed_form);
    const auto rf = fateev_r(u, ctx_);
    return residual(uu * r22 * inverse(uu), rf);
  }

  const SuiteConfig& cfg_;
  EllipticContext<double> ctx_;
  RunResult& out_;
};

struct SuiteEntry {
  const char* name;
  void (SuiteRunner::*run)();
};

inline const std::vector<SuiteEntry>& suite_registry() {
  static const std::vector<SuiteEntry> entries = {
      {"theta-core", &SuiteRunner::theta_core},
      {"vertex-unitarity", &SuiteRunner::vertex_unitarity},
      {"vertex-crossing", &SuiteRunner::vertex_crossing},
      {"vertex-initial", &SuiteRunner::vertex_initial},
      {"vertex-ybe", &SuiteRunner::vertex_ybe},
      {"fusion21-agreement", &SuiteRunner::fusion21_agreement},
      {"fusion22-agreement", &SuiteRunner::fusion22_agreement},
      {"fusion-projector", &SuiteRunner::fusion_projector},
      {"fusion-invariance", &SuiteRunner::fusion_invariance},
      {"fusion-ybe", &SuiteRunner::fusion_ybe},
      {"gauge-equivalence", &SuiteRunner::gauge_equivalence},
      {"gauge-q", &SuiteRunner::gauge_q},
      {"fusion22-crossing", &SuiteRunner::fusion22_crossing},
      {"fateev-functional", &SuiteRunner::fateev_functional},
      {"face-initial", &SuiteRunner::face_initial},
      {"face-w21-vanishing", &SuiteRunner::face_w21_vanishing},
      {"face-choice", &SuiteRunner::face_choice},
      {"face-unitarity", &SuiteRunner::face_unitarity},
      {"face-crossing", &SuiteRunner::face_crossing},
      {"face-ybe", &SuiteRunner::face_ybe},
      {"face-ybe22", &SuiteRunner::face_ybe22},
      {"corr-vertexface", &SuiteRunner::corr_vertexface},
      {"corr-vertexface-dual", &SuiteRunner::corr_vertexface_dual},
      {"corr-fused", &SuiteRunner::corr_fused},
      {"corr-fused-dual", &SuiteRunner::corr_fused_dual},
      {"inversion-level1", &SuiteRunner::inversion_level1},
      {"inversion-level2", &SuiteRunner::inversion_level2},
      {"psi2-agreement", &SuiteRunner::psi2_agreement},
      {"psi2-dual-agreement", &SuiteRunner::psi2_dual_agreement},
      {"psi2-duality", &SuiteRunner::psi2_duality},
  };
  return entries;
}

}  // namespace detail

inline std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& e : detail::suite_registry()) names.emplace_back(e.name);
  return names;
}

inline RunResult run_verification(const SuiteConfig& cfg) {
  if (cfg.points < 1) throw argument_error("points must be positive");
  if (cfg.cutoff < 1) throw argument_error("cutoff must be positive");
  for (const auto& s : cfg.suites) {
    bool known = false;
    for (const auto& e : detail::suite_registry())
      if (s == e.name) {
        known = true;
        break;
      }
    if (!known) throw argument_error("unknown suite: " + s);
  }

  RunResult out;
  detail::SuiteRunner runner(cfg, out);
  for (const auto& e : detail::suite_registry()) {
    if (!cfg.suites.empty() &&
        std::find(cfg.suites.begin(), cfg.suites.end(), e.name) ==
            cfg.suites.end())
      continue;
    (runner.*e.run)();
  }

  std::stable_sort(out.reports.begin(), out.reports.end(),
                   [](const IdentityReport& a, const IdentityReport& b) {
                     return a.identity < b.identity;
                   });

  const long total = out.evaluated + out.excluded;
  if (total > 0 && out.excluded * 10 > total)
    out.warnings.push_back(
        "more than 10% of evaluations were excluded (" +
        std::to_string(out.excluded) + " of " + std::to_string(total) +
        "); results may not be representative near this parameter regime");
  return out;
}

}  // namespace ellfuse
