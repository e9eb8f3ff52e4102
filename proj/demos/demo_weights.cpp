// Minimal library tour: evaluate theta functions, build the elliptic
// R-matrix and its fusions, and compare a fused face weight against the
// correspondence with intertwining vectors.

#include <cstdio>

#include "ellfuse/ellfuse.hpp"

using namespace ellfuse;

namespace {

void show(const char* label, std::complex<double> z) {
  std::printf("%-28s % .9f %+.9fi\n", label, z.real(), z.imag());
}

}  // namespace

int main() {
  const EllipticContext<double> ctx(6.0, {0.0, 1.2});
  const std::complex<double> u(0.31, 0.02);

  show("theta_1(u/r | tau)", ctx.vt(1, u));
  show("bracket [u]", ctx.bracket(u));
  show("sn(u)", jacobi_sn(u, ctx));

  const auto r = baxter_r(u, ctx);
  show("R(u) entry (++ <- ++)", r(0, 0));
  show("R(u) entry (+- <- -+)", r(1, 2));

  const auto r22 = fuse22(u, ctx, FusionMethod::closed_form);
  show("R22(u) entry (0,0)", r22(0, 0));

  show("face weight W(3 4 / 2 3; u)", w_face(3, 4, 2, 3, u, ctx));
  show("fused face W22(3 3 / 3 3; u)", w22(3, 3, 3, 3, u, ctx));

  const std::complex<double> v(0.12, -0.03);
  std::printf("%-28s %.3e\n", "vertex-face residual",
              vertex_face_residual(u, v, 3, 4, 5, ctx));
  std::printf("%-28s %.3e\n", "fused correspondence resid.",
              fused_vertex_face_residual(u, v, 3, 3, 3, ctx));
  return 0;
}
