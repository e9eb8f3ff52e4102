#include <catch_amalgamated.hpp>

#include <complex>

#include "ellfuse/intertwiner.hpp"
#include "oracle_data.hpp"

using namespace ellfuse;
using C = std::complex<double>;

namespace {
const EllipticContext<double> ctx(6.0, {0.0, 1.2});
const C u_probe(0.31, 0.04);
const C v_probe(0.12, -0.03);
}  // namespace

TEST_CASE("intertwiner components match the precomputed reference") {
  const auto p = psi(C(0.3), 4, 3, ctx);
  CHECK(scalar_residual(p.plus, oracle::psi_plus_value) < 1e-12);
  CHECK(scalar_residual(p.minus, oracle::psi_minus_value) < 1e-12);
}

TEST_CASE("intertwiner components are half-period theta values") {
  const int a = 2, b = 3;
  const auto p = psi(u_probe, a, b, ctx);
  const C arg = (double(a - b) * u_probe + double(a)) / 12.0;
  const C tau_half(0.0, 0.6);
  CHECK(scalar_residual(p.plus, theta(0, arg, tau_half, ctx.cutoff)) < 1e-13);
  CHECK(scalar_residual(p.minus, theta(3, arg, tau_half, ctx.cutoff)) < 1e-13);
}

TEST_CASE("intertwiner height guards") {
  CHECK_THROWS_AS(psi(u_probe, 3, 5, ctx), argument_error);
  CHECK_THROWS_AS(psi(u_probe, 3, 3, ctx), argument_error);
  CHECK_THROWS_AS(psi_dual(u_probe, 2, 4, ctx), argument_error);
  CHECK_THROWS_AS(psi_dual(C(0.0), 4, 3, ctx), pole_error);  // [u] = 0
}

TEST_CASE("level-1 inversion relations at a fixed point") {
  for (const int b : {2, 3, 4}) {
    CHECK(inversion_level1_orthogonality(u_probe, b, ctx) < 1e-11);
    CHECK(inversion_level1_completeness(u_probe, b, ctx) < 1e-11);
  }
}

TEST_CASE("level-2 inversion relations at a fixed point") {
  CHECK(inversion_level2_orthogonality(u_probe, 3, ctx) < 1e-10);
  CHECK(inversion_level2_completeness(u_probe, 3, ctx) < 1e-10);
}

TEST_CASE("fused intertwiner: definition agrees with the closed form") {
  for (const int b : {5, 3, 1}) {
    const auto def = psi2(u_probe, 3, b, ctx, FusionMethod::by_definition);
    const auto cls = psi2(u_probe, 3, b, ctx, FusionMethod::closed_form);
    for (int k = 0; k < 3; ++k) {
      INFO("b=" << b << " mu-slot " << k);
      CHECK(scalar_residual(def.mu[k], cls.mu[k]) < 1e-12);
    }
  }
}

TEST_CASE("fused intertwiner is independent of the intermediate height") {
  const auto via2 = psi2(u_probe, 3, 3, ctx, FusionMethod::by_definition, 2);
  const auto via4 = psi2(u_probe, 3, 3, ctx, FusionMethod::by_definition, 4);
  for (int k = 0; k < 3; ++k)
    CHECK(scalar_residual(via2.mu[k], via4.mu[k]) < 1e-12);
}

TEST_CASE("fused intertwiner argument guards") {
  CHECK_THROWS_AS(psi2(u_probe, 1, 5, ctx, FusionMethod::by_definition),
                  admissibility_error);
  CHECK_THROWS_AS(psi2(u_probe, 1, 5, ctx, FusionMethod::closed_form),
                  argument_error);
  CHECK_THROWS_AS(psi2(u_probe, 3, 3, ctx, FusionMethod::closed_form, 2),
                  argument_error);
  CHECK_THROWS_AS(psi2(u_probe, 3, 3, ctx, FusionMethod::by_definition, 5),
                  argument_error);
}

TEST_CASE("fused dual: definition agrees with the closed form") {
  for (const int b : {5, 3, 1}) {
    const auto def = psi2_dual(u_probe, 3, b, ctx, FusionMethod::by_definition);
    const auto cls = psi2_dual(u_probe, 3, b, ctx, FusionMethod::closed_form);
    for (int k = 0; k < 3; ++k) {
      INFO("b=" << b << " mu-slot " << k);
      CHECK(scalar_residual(def.mu[k], cls.mu[k]) < 1e-11);
    }
  }
}

TEST_CASE("fused dual middle component: both mixed splits coincide") {
  const auto cov = psi2_dual_covector(u_probe, 3, 3, ctx);
  CHECK(scalar_residual(cov[1], cov[2]) < 1e-12);
  const auto pm =
      psi2_dual(u_probe, 3, 3, ctx, FusionMethod::by_definition,
                DualSplit::plus_minus);
  const auto mp =
      psi2_dual(u_probe, 3, 3, ctx, FusionMethod::by_definition,
                DualSplit::minus_plus);
  for (int k = 0; k < 3; ++k)
    CHECK(scalar_residual(pm.mu[k], mp.mu[k]) < 1e-12);
}

TEST_CASE("fused dual is the gauge image of the fused vector") {
  CHECK(gauge_duality_residual(u_probe, 3, 3, ctx) < 1e-11);
  CHECK(gauge_duality_residual(u_probe, 3, 5, ctx) < 1e-11);
  CHECK(gauge_duality_residual(u_probe, 3, 1, ctx) < 1e-11);
}

TEST_CASE("vertex-face correspondence at a fixed point") {
  CHECK(vertex_face_residual(u_probe, v_probe, 3, 4, 5, ctx) < 1e-11);
  CHECK(vertex_face_residual(u_probe, v_probe, 3, 4, 3, ctx) < 1e-11);
  CHECK(vertex_face_residual(u_probe, v_probe, 3, 2, 1, ctx) < 1e-11);
}

TEST_CASE("dual vertex-face correspondence at a fixed point") {
  CHECK(vertex_face_dual_residual(u_probe, v_probe, 3, 4, 5, ctx) < 1e-11);
  CHECK(vertex_face_dual_residual(u_probe, v_probe, 3, 4, 3, ctx) < 1e-11);
  CHECK(vertex_face_dual_residual(u_probe, v_probe, 2, 3, 4, ctx) < 1e-11);
}

TEST_CASE("fused correspondences at a fixed point") {
  CHECK(fused_vertex_face_residual(u_probe, v_probe, 3, 3, 3, ctx) < 1e-10);
  CHECK(fused_vertex_face_residual(u_probe, v_probe, 3, 5, 3, ctx) < 1e-10);
  CHECK(fused_vertex_face_residual(u_probe, v_probe, 1, 3, 5, ctx) < 1e-10);
  CHECK(fused_vertex_face_dual_residual(u_probe, v_probe, 3, 3, 3, ctx) <
        1e-10);
  CHECK(fused_vertex_face_dual_residual(u_probe, v_probe, 3, 5, 3, ctx) <
        1e-10);
  CHECK(fused_vertex_face_dual_residual(u_probe, v_probe, 5, 3, 1, ctx) <
        1e-10);
}
