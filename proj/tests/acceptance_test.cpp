// Standalone acceptance harness.  Each numbered criterion prints one
// PASS/FAIL line; the process exit code is the number of failed criteria.
// All tolerances are pinned here, next to the checks they gate.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ellfuse/ellfuse.hpp"
#include "oracle_data.hpp"

#ifndef ELLFUSE_CLI_PATH
#error "ELLFUSE_CLI_PATH must point at the built CLI binary"
#endif

using namespace ellfuse;
using C = std::complex<double>;

namespace {

// Default verification parameters.
constexpr double kR = 6.0;
constexpr double kTauIm = 1.2;
constexpr int kCutoff = 32;
constexpr std::uint64_t kSeed = 42;
constexpr int kPoints = 25;
constexpr int kPairs = 10;
constexpr int kFacePairs = 5;

// Pinned tolerances.
constexpr double kThetaOracleTol = 1e-12;
constexpr double kTwoFormTol = 1e-10;
constexpr double kVertexTol = 1e-9;
constexpr double kDegenerationTol = 1e-4;
constexpr double kFusionAgreementTol = 1e-9;
constexpr double kYbeTol = 1e-8;
constexpr double kGaugeTol = 1e-9;
constexpr double kQClosedTol = 1e-12;
constexpr double kFusedCrossingTol = 1e-8;
constexpr double kFtildeTol = 1e-9;
constexpr double kFaceFixedTol = 1e-9;
constexpr double kChoiceTol = 1e-10;
constexpr double kFaceMatrixTol = 1e-8;
constexpr double kCorrespondenceTol = 1e-8;
constexpr double kInversionTol = 1e-9;
constexpr double kPsi2Tol = 1e-9;
constexpr double kDualityTol = 1e-8;

int failures = 0;

// Collects residual/tolerance checks for one criterion.
class Checker {
 public:
  void check(double resid, double tol) {
    ratio_ = std::max(ratio_, resid / tol);
    if (!(resid < tol)) ok_ = false;
  }
  void require(bool cond) {
    if (!cond) ok_ = false;
  }
  bool ok() const { return ok_; }
  double ratio() const { return ratio_; }

 private:
  bool ok_ = true;
  double ratio_ = 0.0;
};

void report(int n, const Checker& c, const char* desc) {
  if (c.ratio() > 0.0)
    std::printf("ACCEPTANCE %2d: %s  %s (worst residual/threshold %.2e)\n", n,
                c.ok() ? "PASS" : "FAIL", desc, c.ratio());
  else
    std::printf("ACCEPTANCE %2d: %s  %s\n", n, c.ok() ? "PASS" : "FAIL", desc);
  if (!c.ok()) ++failures;
}

const EllipticContext<double>& context() {
  static const EllipticContext<double> ctx(kR, C(0.0, kTauIm), kCutoff);
  return ctx;
}

// --- criterion bodies -------------------------------------------------------

void criterion1_theta() {
  Checker c;
  for (const auto& tp : oracle::theta_points)
    c.check(scalar_residual(theta(tp.k, tp.u, tp.tau, kCutoff), tp.value),
            kThetaOracleTol);
  const auto& ctx = context();
  PointSampler s(kSeed, ctx);
  for (int i = 0; i < kPoints; ++i) {
    const auto pt = s.next();
    c.check(scalar_residual(ctx.bracket(pt.u), bracket_product(pt.u, ctx)),
            kTwoFormTol);
  }
  report(1, c, "theta values match 60-digit references; additive and "
               "product bracket forms agree");
}

void criterion2_vertex() {
  Checker c;
  const auto& ctx = context();
  const auto p = flip_matrix<double>(2, 2);
  const auto id4 = Matrix<double>::identity(4);
  const auto sy2 = kron(sigma_y<double>(), Matrix<double>::identity(2));
  PointSampler s(kSeed, ctx);
  for (int i = 0; i < kPoints; ++i) {
    const auto pt = s.next();
    c.check(residual(baxter_r(pt.u, ctx) * p * baxter_r(-pt.u, ctx) * p, id4),
            kVertexTol);
    const auto mid =
        partial_transpose_first(p * baxter_r(pt.u, ctx) * p, 2, 2);
    c.check(residual(baxter_r(-pt.u - 1.0, ctx), -(sy2 * mid * sy2)),
            kVertexTol);
  }
  c.check(residual(baxter_r(C(0.0), ctx), p), kVertexTol);
  c.check(residual(baxter_r(C(-1.0 + 1e-6), ctx), p - id4), kDegenerationTol);
  report(2, c, "4x4 weights satisfy unitarity and crossing; R(0) is the "
               "flip and R(-1) degenerates to flip minus identity");
}

void criterion3_fusion_agreement() {
  Checker c;
  const auto& ctx = context();
  PointSampler s(kSeed, ctx);
  for (int i = 0; i < kPoints; ++i) {
    const auto pt = s.next();
    c.check(residual(fuse21(pt.u, ctx, FusionMethod::by_definition),
                     fuse21(pt.u, ctx, FusionMethod::closed_form)),
            kFusionAgreementTol);
    c.check(residual(fuse22(pt.u, ctx, FusionMethod::by_definition),
                     fuse22(pt.u, ctx, FusionMethod::closed_form)),
            kFusionAgreementTol);
    c.check(scalar_residual(r0_scalar(pt.u + 1.0, ctx) * r0_scalar(pt.u, ctx),
                            -ctx.bracket(pt.u + 1.0) / ctx.bracket(pt.u)),
            kFusionAgreementTol);
  }
  report(3, c, "fused 6x6 and 9x9 weights match their closed forms, "
               "including the scalar prefactor");
}

void criterion4_ybe() {
  Checker c;
  const auto& ctx = context();
  const auto id2 = Matrix<double>::identity(2);
  const auto id3 = Matrix<double>::identity(3);
  const auto flip23 = kron(id3, flip_matrix<double>(3, 3));
  PointSampler s(kSeed, ctx);
  for (int i = 0; i < kPairs; ++i) {
    const auto pt = s.next();
    {
      const auto r12 = kron(baxter_r(pt.u - pt.v, ctx), id2);
      const auto r23 = kron(id2, baxter_r(pt.v, ctx));
      const auto r13 = detail::lift_to_13(baxter_r(pt.u, ctx));
      c.check(residual(r12 * r13 * r23, r23 * r13 * r12), kYbeTol);
    }
    {
      const auto r12 =
          kron(fuse22(pt.u - pt.v, ctx, FusionMethod::closed_form), id3);
      const auto r23 = kron(id3, fuse22(pt.v, ctx, FusionMethod::closed_form));
      const auto r13 =
          flip23 * kron(fuse22(pt.u, ctx, FusionMethod::closed_form), id3) *
          flip23;
      c.check(residual(r12 * r13 * r23, r23 * r13 * r12), kYbeTol);
    }
  }
  report(4, c, "Yang-Baxter equation holds for the 4x4 weights and for "
               "the fused 9x9 weights on the triple product");
}

void criterion5_gauge() {
  Checker c;
  const auto& ctx = context();
  const auto gauge = gauge_pair(ctx);
  const auto uu = kron(gauge.u_matrix, gauge.u_matrix);
  PointSampler s(kSeed, ctx);
  for (int i = 0; i < kPoints; ++i) {
    const auto pt = s.next();
    c.check(residual(uu * fuse22(pt.u, ctx, FusionMethod::closed_form) *
                         inverse(uu),
                     fateev_r(pt.u, ctx)),
            kGaugeTol);
    c.check(crossing22_residual(pt.u, ctx), kFusedCrossingTol);
  }
  c.check(residual(q_matrix(gauge), q_closed(gauge)), kQClosedTol);
  report(5, c, "gauge conjugation carries the fused weights onto the "
               "21-vertex form; Q = U^t U matches its closed form; fused "
               "crossing holds");
}

void criterion6_ftilde() {
  Checker c;
  const auto& ctx = context();
  const C sn2 = jacobi_sn(C(2.0), ctx);
  PointSampler s(kSeed, ctx);
  for (int i = 0; i < kPoints; ++i) {
    const auto pt = s.next();
    c.check(scalar_residual(ftilde(pt.u, ctx), ftilde(-pt.u - 1.0, ctx)),
            kFtildeTol);
    const C snu = jacobi_sn(pt.u, ctx);
    c.check(scalar_residual(ftilde(pt.u, ctx) * ftilde(-pt.u, ctx),
                            snu * snu / (snu * snu - sn2 * sn2)),
            kFtildeTol);
  }
  report(6, c, "the 21-vertex normalizing function satisfies its "
               "reflection and product functional equations");
}

void criterion7_face() {
  Checker c;
  const auto& ctx = context();

  // Initial condition: W(a b / d c | 0) = delta_{b,d}.
  {
    double worst = 0.0;
    for (int a = 1; a <= 5; ++a)
      for (const int b : {a - 1, a + 1})
        for (const int d : {a - 1, a + 1})
          for (const int cc : {b - 1, b + 1}) {
            if (b < 1 || b > 5 || d < 1 || d > 5 || cc < 1 || cc > 5) continue;
            if (std::abs(d - cc) != 1) continue;
            const C w = w_face(a, b, d, cc, C(0.0), ctx);
            worst = std::max(worst, std::abs(w - (b == d ? 1.0 : 0.0)));
          }
    c.check(worst, kFaceFixedTol);
  }

  // Row-fused weights vanish at u = -1 (relative to their generic size).
  {
    double worst = 0.0, scale = 0.0;
    const C probe(0.37, 0.0);
    for (int a = 1; a <= 5; ++a)
      for (const int b : {a - 2, a, a + 2})
        for (const int d : {a - 1, a + 1})
          for (const int cc : {b - 1, b + 1}) {
            if (b < 1 || b > 5 || d < 1 || d > 5 || cc < 1 || cc > 5) continue;
            if (std::abs(d - cc) != 0 && std::abs(d - cc) != 2) continue;
            if (!detail::first_mid(a, b)) continue;
            worst = std::max(worst, std::abs(w21(a, b, d, cc, C(-1.0), ctx)));
            scale = std::max(scale, std::abs(w21(a, b, d, cc, probe, ctx)));
          }
    c.check(worst / std::max(1.0, scale), kFaceFixedTol);
  }

  PointSampler s(kSeed, ctx);
  for (int i = 0; i < kPoints; ++i) {
    const auto pt = s.next();

    // Choice independence: intermediate heights and epsilon splits.
    for (const auto& q : {std::array<int, 4>{3, 3, 4, 4}, {3, 3, 2, 2}}) {
      c.check(scalar_residual(w21(q[0], q[1], q[2], q[3], pt.u, ctx, 2),
                              w21(q[0], q[1], q[2], q[3], pt.u, ctx, 4)),
              kChoiceTol);
    }
    c.check(scalar_residual(w22(3, 3, 3, 3, pt.u, ctx, 2),
                            w22(3, 3, 3, 3, pt.u, ctx, 4)),
            kChoiceTol);
    {
      const auto via2 = psi2(pt.u, 3, 3, ctx, FusionMethod::by_definition, 2);
      const auto via4 = psi2(pt.u, 3, 3, ctx, FusionMethod::by_definition, 4);
      for (int k = 0; k < 3; ++k)
        c.check(scalar_residual(via2.mu[k], via4.mu[k]), kChoiceTol);
      const auto pm = psi2_dual(pt.u, 3, 3, ctx, FusionMethod::by_definition,
                                DualSplit::plus_minus);
      const auto mp = psi2_dual(pt.u, 3, 3, ctx, FusionMethod::by_definition,
                                DualSplit::minus_plus);
      for (int k = 0; k < 3; ++k)
        c.check(scalar_residual(pm.mu[k], mp.mu[k]), kChoiceTol);
      const auto cov = psi2_dual_covector(pt.u, 3, 3, ctx);
      c.check(scalar_residual(cov[1], cov[2]), kChoiceTol);
    }

    // Fused unitarity.
    static const std::vector<std::array<int, 4>> uni_configs = {
        {3, 5, 3, 3}, {3, 3, 3, 3}, {2, 4, 2, 2}, {4, 2, 4, 4}, {3, 1, 3, 3}};
    for (const auto& q : uni_configs) {
      const int a = q[0], b = q[1], d = q[2], cc = q[3];
      C total(0.0);
      for (const int mid : detail::level2_mids(a, cc, ctx))
        total += w22(a, mid, d, cc, -pt.u, ctx) * w22(a, b, mid, cc, pt.u, ctx);
      c.check(scalar_residual(total, C(b == d ? 1.0 : 0.0)), kFaceMatrixTol);
    }

    // Fused crossing.
    static const std::vector<std::array<int, 4>> cross_configs = {
        {3, 3, 5, 5}, {3, 5, 3, 3}, {2, 4, 4, 2}, {3, 3, 3, 3}, {1, 3, 3, 5}};
    for (const auto& q : cross_configs) {
      const int a = q[0], b = q[1], d = q[2], cc = q[3];
      const C lhs = w22(d, cc, a, b, pt.u, ctx);
      const C factor = pairing(b, cc, 2, ctx) * g_height(a, ctx) *
                       g_height(cc, ctx) /
                       (pairing(a, d, 2, ctx) * g_height(b, ctx) *
                        g_height(d, ctx));
      c.check(scalar_residual(lhs, factor * w22(a, d, b, cc, -1.0 - pt.u, ctx)),
              kFaceMatrixTol);
    }
  }

  // Face Yang-Baxter at both fusion levels.
  const C wshift(0.11, 0.0);
  PointSampler sp(kSeed, ctx);
  for (int i = 0; i < kFacePairs; ++i) {
    const auto pt = sp.next();
    static const std::vector<std::array<int, 6>> lvl1 = {
        {3, 4, 3, 4, 2, 3}, {3, 4, 5, 4, 4, 5}, {2, 3, 4, 3, 3, 4}};
    for (const auto& q : lvl1) {
      const int a = q[0], b = q[1], cc = q[2], d = q[3];
      const int bigA = q[4], bigB = q[5];
      C lhs(0.0), rhs(0.0);
      for (int g = 0; g <= 7; ++g) {
        if (detail::admissible1(b, cc, g, d) &&
            detail::admissible1(a, b, bigA, g) &&
            detail::admissible1(bigA, g, bigB, d))
          lhs += w_face(b, cc, g, d, pt.v - wshift, ctx) *
                 w_face(a, b, bigA, g, pt.u - wshift, ctx) *
                 w_face(bigA, g, bigB, d, pt.u - pt.v, ctx);
        if (detail::admissible1(a, b, g, cc) &&
            detail::admissible1(g, cc, bigB, d) &&
            detail::admissible1(a, g, bigA, bigB))
          rhs += w_face(a, b, g, cc, pt.u - pt.v, ctx) *
                 w_face(g, cc, bigB, d, pt.u - wshift, ctx) *
                 w_face(a, g, bigA, bigB, pt.v - wshift, ctx);
      }
      c.check(std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs),
                                              std::abs(rhs)}),
              kFaceMatrixTol);
    }

    const auto w22q = [&](int a, int b, int d, int cc, const C& u) -> C {
      const auto ok = [](int x, int y) {
        const int diff = std::abs(x - y);
        return diff == 0 || diff == 2;
      };
      if (!ok(a, b) || !ok(b, cc) || !ok(a, d) || !ok(d, cc)) return C(0.0);
      if (!detail::first_mid(b, cc)) return C(0.0);
      return w22(a, b, d, cc, u, ctx);
    };
    static const std::vector<std::array<int, 6>> lvl2 = {
        {3, 3, 5, 3, 1, 3}, {1, 3, 5, 3, 3, 5}, {2, 4, 2, 4, 2, 4}};
    for (const auto& q : lvl2) {
      const int a = q[0], b = q[1], cc = q[2], d = q[3];
      const int bigA = q[4], bigB = q[5];
      C lhs(0.0), rhs(0.0);
      for (int g = 0; g <= 7; ++g) {
        lhs += w22q(b, cc, g, d, pt.v - wshift) *
               w22q(a, b, bigA, g, pt.u - wshift) *
               w22q(bigA, g, bigB, d, pt.u - pt.v);
        rhs += w22q(a, b, g, cc, pt.u - pt.v) *
               w22q(g, cc, bigB, d, pt.u - wshift) *
               w22q(a, g, bigA, bigB, pt.v - wshift);
      }
      c.check(std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs),
                                              std::abs(rhs)}),
              kFaceMatrixTol);
    }
  }

  report(7, c, "face weights: delta initial condition, vanishing at u = -1, "
               "choice independence, fused unitarity/crossing, and the face "
               "Yang-Baxter equation at both fusion levels");
}

void criterion8_correspondences() {
  Checker c;
  const auto& ctx = context();
  static const std::vector<std::array<int, 3>> plain = {
      {3, 4, 5}, {3, 4, 3}, {3, 2, 1}, {2, 3, 4}, {4, 3, 2}};
  static const std::vector<std::array<int, 3>> dual = {
      {3, 4, 5}, {3, 4, 3}, {3, 2, 3}, {2, 3, 4}};
  static const std::vector<std::array<int, 3>> fused = {
      {3, 3, 3}, {3, 5, 3}, {1, 3, 5}, {3, 3, 5}, {5, 3, 1}};
  static const std::vector<std::array<int, 3>> fused_dual = {
      {3, 3, 3}, {3, 5, 3}, {5, 3, 1}, {2, 2, 4}};
  PointSampler s(kSeed, ctx);
  for (int i = 0; i < kPairs; ++i) {
    const auto pt = s.next();
    for (const auto& q : plain)
      c.check(vertex_face_residual(pt.u, pt.v, q[0], q[1], q[2], ctx),
              kCorrespondenceTol);
    for (const auto& q : dual)
      c.check(vertex_face_dual_residual(pt.u, pt.v, q[0], q[1], q[2], ctx),
              kCorrespondenceTol);
    for (const auto& q : fused)
      c.check(fused_vertex_face_residual(pt.u, pt.v, q[0], q[1], q[2], ctx),
              kCorrespondenceTol);
    for (const auto& q : fused_dual)
      c.check(fused_vertex_face_dual_residual(pt.u, pt.v, q[0], q[1], q[2],
                                              ctx),
              kCorrespondenceTol);
  }
  report(8, c, "all four vertex-face correspondences hold around height 3 "
               "(vector, covector, and their fused versions)");
}

void criterion9_inversion() {
  Checker c;
  const auto& ctx = context();
  PointSampler s(kSeed, ctx);
  for (int i = 0; i < kPoints; ++i) {
    const auto pt = s.next();
    for (const int b : {2, 3, 4}) {
      c.check(inversion_level1_orthogonality(pt.u, b, ctx), kInversionTol);
      c.check(inversion_level1_completeness(pt.u, b, ctx), kInversionTol);
    }
    c.check(inversion_level2_orthogonality(pt.u, 3, ctx), kInversionTol);
    c.check(inversion_level2_completeness(pt.u, 3, ctx), kInversionTol);
  }
  report(9, c, "intertwiner inversion relations hold at both fusion levels "
               "(orthogonality and completeness)");
}

void criterion10_psi2() {
  Checker c;
  const auto& ctx = context();
  static const std::vector<std::array<int, 2>> pairs = {{3, 5}, {3, 3}, {3, 1}};
  PointSampler s(kSeed, ctx);
  for (int i = 0; i < kPoints; ++i) {
    const auto pt = s.next();
    for (const auto& ab : pairs) {
      const auto dv = psi2(pt.u, ab[0], ab[1], ctx,
                           FusionMethod::by_definition);
      const auto cv = psi2(pt.u, ab[0], ab[1], ctx, FusionMethod::closed_form);
      for (int k = 0; k < 3; ++k)
        c.check(scalar_residual(dv.mu[k], cv.mu[k]), kPsi2Tol);
      const auto dd = psi2_dual(pt.u, ab[0], ab[1], ctx,
                                FusionMethod::by_definition);
      const auto cd = psi2_dual(pt.u, ab[0], ab[1], ctx,
                                FusionMethod::closed_form);
      for (int k = 0; k < 3; ++k)
        c.check(scalar_residual(dd.mu[k], cd.mu[k]), kPsi2Tol);
    }
  }
  report(10, c, "fused intertwiners and fused duals match their closed "
                "forms in every height block");
}

void criterion11_duality() {
  Checker c;
  const auto& ctx = context();
  static const std::vector<std::array<int, 2>> pairs = {
      {3, 5}, {3, 3}, {3, 1}, {2, 4}, {4, 2},
      {2, 2}, {4, 4}, {1, 3}, {5, 3}};
  PointSampler s(kSeed, ctx);
  for (int i = 0; i < kPoints; ++i) {
    const auto pt = s.next();
    for (const auto& ab : pairs)
      c.check(gauge_duality_residual(pt.u, ab[0], ab[1], ctx), kDualityTol);
  }
  report(11, c, "the fused dual equals the gauge image of the fused vector "
                "across all three height blocks");
}

// --- criterion 12: the CLI harness ------------------------------------------

struct CmdResult {
  int code = -1;
  std::string out;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CmdResult run_cli(const std::string& dir, const std::string& args) {
  static int counter = 0;
  const std::string capture = dir + "/stdout" + std::to_string(counter++);
  const std::string cmd = std::string("\"") + ELLFUSE_CLI_PATH + "\" " + args +
                          " > " + capture + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  CmdResult r;
  if (status != -1 && WIFEXITED(status)) r.code = WEXITSTATUS(status);
  r.out = slurp(capture);
  return r;
}

void criterion12_harness() {
  Checker c;
  const std::string dir =
      "/tmp/ellfuse_acceptance_" + std::to_string(::getpid());
  std::filesystem::create_directories(dir);

  const std::string j1 = dir + "/run1.json";
  const std::string j2 = dir + "/run2.json";
  const std::string base = "verify --suite theta-core --suite "
                           "vertex-unitarity --points 3 --stable --json ";
  c.require(run_cli(dir, base + j1).code == 0);
  c.require(run_cli(dir, base + j2).code == 0);
  const std::string bytes1 = slurp(j1);
  c.require(!bytes1.empty());
  c.require(bytes1 == slurp(j2));

  // A starved series cutoff must make at least one identity fail (exit 1).
  const auto starved =
      run_cli(dir, "verify --suite fusion21-agreement --points 3 --cutoff 2");
  c.require(starved.code == 1);
  c.require(starved.out.find("FAIL") != std::string::npos);

  // Usage errors exit 2.
  c.require(run_cli(dir, "verify --suite no-such-suite").code == 2);
  c.require(run_cli(dir, "verify --no-such-flag").code == 2);

  report(12, c, "CLI: stable JSON is byte-identical, failing identities "
                "exit 1, usage errors exit 2, and cutoff starvation is "
                "detected");
}

}  // namespace

int main() {
  criterion1_theta();
  criterion2_vertex();
  criterion3_fusion_agreement();
  criterion4_ybe();
  criterion5_gauge();
  criterion6_ftilde();
  criterion7_face();
  criterion8_correspondences();
  criterion9_inversion();
  criterion10_psi2();
  criterion11_duality();
  criterion12_harness();
  std::printf("acceptance: %d of 12 criteria passed\n", 12 - failures);
  return failures;
}
