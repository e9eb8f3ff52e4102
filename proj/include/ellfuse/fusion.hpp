#pragma once

// Fusion of the eight-vertex R-matrix: the 6x6 mixed matrix R^(21) on
// V^(2) (x) V and the 9x9 fused matrix R^(22) on V^(2) (x) V^(2), each
// available both by the definitional projector construction and by the
// closed-form theta-entry tables.

#include <string>

#include "ellfuse/core.hpp"
#include "ellfuse/tensor.hpp"
#include "ellfuse/vertex.hpp"

namespace ellfuse {

enum class FusionMethod { by_definition, closed_form };

namespace detail {

// Lift a map on factors (1,2) of V (x) V (x) V to factors (1,3).
template <class T>
Matrix<T> lift_to_13(const Matrix<T>& r4) {
  const Matrix<T> id2 = Matrix<T>::identity(2);
  const Matrix<T> p23 = kron(id2, flip_matrix<T>(2, 2));
  return p23 * kron(r4, id2) * p23;
}

// Closed-form 6x6 table (without the -[u+1]/[u] prefactor).  Basis order on
// V^(2) (x) V: (mu, eps) = (2,+),(2,-),(0,+),(0,-),(-2,+),(-2,-).
template <class T>
Matrix<T> fuse21_grid(cx<T> u, const EllipticContext<T>& ctx) {
  const cx<T> zero(T(0)), one(T(1)), two(T(2));
  const cx<T> c1 = ctx.vth(1, one);
  const cx<T> c2 = ctx.vth(2, one);
  const cx<T> z0 = ctx.vth(2, zero);
  const cx<T> e1 =
      c2 * c2 * ctx.vth(2, u) / (z0 * z0 * ctx.vth(2, u + two));
  const cx<T> e2 =
      -c1 * c2 * ctx.vth(1, u) / (z0 * z0 * ctx.vth(2, u + two));
  const cx<T> e3 =
      -c1 * c1 * ctx.vth(2, u) / (z0 * z0 * ctx.vth(2, u + two));
  const cx<T> e4 =
      c2 * c2 * ctx.vth(1, u) / (z0 * z0 * ctx.vth(1, u + two));
  const cx<T> e5 =
      c1 * c2 * ctx.vth(2, u) / (z0 * z0 * ctx.vth(1, u + two));
  const cx<T> e6 =
      -c1 * c1 * ctx.vth(1, u) / (z0 * z0 * ctx.vth(1, u + two));
  const cx<T> den7 = z0 * ctx.vth(1, u + two) * ctx.vth(2, u + two);
  const cx<T> e7 = ctx.vth(1, two) * ctx.vth(2, u + one) *
                   ctx.vth(2, u + one) / den7;
  const cx<T> e8 = -ctx.vth(1, two) * ctx.vth(1, u + one) *
                   ctx.vth(1, u + one) / den7;
  const cx<T> e9 = ctx.vth(2, two) * ctx.vth(1, u + one) *
                   ctx.vth(2, u + one) / den7;
  Matrix<T> m(6, 6);
  m(0, 0) = e1;
  m(0, 3) = e2;
  m(0, 4) = e3;
  m(1, 1) = e4;
  m(1, 2) = e5;
  m(1, 5) = e6;
  m(2, 1) = e7;
  m(2, 2) = e9;
  m(2, 5) = e8;
  m(3, 0) = e8;
  m(3, 3) = e9;
  m(3, 4) = e7;
  m(4, 0) = e6;
  m(4, 3) = e5;
  m(4, 4) = e4;
  m(5, 1) = e3;
  m(5, 2) = e2;
  m(5, 5) = e1;
  return m;
}

// One entry of the closed-form 9x9 table.  The star rule replaces
// theta_1 -> -theta_2 and theta_2 -> theta_1 in every factor whose argument
// depends on u (arguments u, u+-1, u+2); u-independent factors stay fixed.
template <class T>
cx<T> fuse22_entry(char letter, bool star, cx<T> u,
                   const EllipticContext<T>& ctx) {
  const cx<T> zero(T(0)), one(T(1)), two(T(2));
  const cx<T> z0 = ctx.vth(2, zero);
  const cx<T> c11 = ctx.vth(1, one);
  const cx<T> c21 = ctx.vth(2, one);
  const cx<T> c12 = ctx.vth(1, two);
  const cx<T> c22 = ctx.vth(2, two);
  const auto t1 = [&](cx<T> w) { return star ? -ctx.vth(2, w) : ctx.vth(1, w); };
  const auto t2 = [&](cx<T> w) { return star ? ctx.vth(1, w) : ctx.vth(2, w); };
  switch (letter) {
    case 'A':
      return -(c12 * t2(u) * c11 * c21 * t1(u) * t2(u)) /
             (z0 * z0 * z0 * t2(u + two) * t1(u + one) * t2(u + one));
    case 'B':
      return -(c22 * t1(u) * c11 * c21 * t1(u) * t2(u)) /
             (z0 * z0 * z0 * t2(u + two) * t1(u + one) * t2(u + one));
    case 'C':
      return (t2(u) * t2(u) * c12 * c22) /
             (z0 * z0 * t1(u + two) * t2(u + two));
    case 'D':
      return -(c12 * c12 * t1(u) * t2(u)) /
             (z0 * z0 * t1(u + two) * t2(u + two));
    case 'E': {
      const cx<T> first =
          (c12 * c11 * c21 *
           (t2(u + one) * t2(u + one) * t2(u + one) * t2(u - one) +
            t1(u + one) * t1(u + one) * t1(u + one) * t1(u - one))) /
          (z0 * z0 * z0 * t1(u + two) * t2(u + two) * t1(u + one) *
           t2(u + one));
      const cx<T> second = (c22 * c22 * t1(u) * t2(u)) /
                           (z0 * z0 * t1(u + two) * t2(u + two));
      return first + second;
    }
    case 'F':
      return (c22 * c22 * t1(u) * t2(u)) /
             (z0 * z0 * t1(u + two) * t2(u + two));
    case 'G':
      return (t2(u) * (c11 * c11 * c11 * c11 * t1(u - one) * t2(u + one) +
                       c21 * c21 * c21 * c21 * t2(u - one) * t1(u + one))) /
             (z0 * z0 * z0 * z0 * t2(u + two) * t1(u + one) * t2(u + one));
    case 'H':
      return (c12 * t1(u) * t1(u) * t1(u) * c11 * c21) /
             (z0 * z0 * z0 * t2(u + two) * t1(u + one) * t2(u + one));
    case 'I': {
      const cx<T> first =
          -(c12 * (c21 * c21 * t1(u + one) * t1(u + one) * t1(u + one) *
                       t2(u - one) +
                   c11 * c11 * t2(u + one) * t2(u + one) * t2(u + one) *
                       t1(u - one))) /
          (z0 * z0 * z0 * t1(u + two) * t2(u + two) * t1(u + one) *
           t2(u + one));
      const cx<T> second = -(t1(u) * t1(u) * c12 * c22) /
                           (z0 * z0 * t1(u + two) * t2(u + two));
      return first + second;
    }
    default:
      throw argument_error(std::string("fuse22_entry: unknown letter ") +
                           letter);
  }
}

// Closed-form 9x9 table (without the [u+1]/[u-1] prefactor).  Basis order on
// V^(2) (x) V^(2): row-major over (mu1, mu2) with mu running (2, 0, -2).
template <class T>
Matrix<T> fuse22_grid(cx<T> u, const EllipticContext<T>& ctx) {
  // 0 marks a structural zero; a trailing '*' marks a starred entry.
  static constexpr const char* grid[9][9] = {
      {"G", "", "A", "", "B", "", "A", "", "H"},
      {"", "F", "", "C", "", "C*", "", "D", ""},
      {"A*", "", "G*", "", "B*", "", "H*", "", "A*"},
      {"", "C", "", "F", "", "D", "", "C*", ""},
      {"I", "", "I*", "", "E", "", "I*", "", "I"},
      {"", "C*", "", "D", "", "F", "", "C", ""},
      {"A*", "", "H*", "", "B*", "", "G*", "", "A*"},
      {"", "D", "", "C*", "", "C", "", "F", ""},
      {"H", "", "A", "", "B", "", "A", "", "G"},
  };
  Matrix<T> m(9, 9);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      const char* s = grid[i][j];
      if (*s == '\0') continue;
      m(i, j) = fuse22_entry(s[0], s[1] == '*', u, ctx);
    }
  return m;
}

}  // namespace detail

// 2x1 fusion: R^(21)(u) = (pi (x) 1) R_{13}(u+1) R_{23}(u) (iota (x) 1),
// a 6x6 map on V^(2) (x) V.  The closed form is
// -[u+1]/[u] times a fixed table of theta quotients.
template <class T>
Matrix<T> fuse21(cx<T> u, const EllipticContext<T>& ctx,
                 FusionMethod method = FusionMethod::by_definition) {
  Matrix<T> m(6, 6);
  if (method == FusionMethod::by_definition) {
    const Matrix<T> id2 = Matrix<T>::identity(2);
    const Matrix<T> r23 = kron(id2, baxter_r(u, ctx));
    const Matrix<T> r13 = detail::lift_to_13(baxter_r(u + T(1), ctx));
    m = kron(sym_restrict_matrix<T>(), id2) * r13 * r23 *
        kron(sym_embed_matrix<T>(), id2);
  } else {
    const cx<T> bu = ctx.bracket(u);
    if (std::abs(bu) < T(pole_threshold))
      throw pole_error("fuse21: bracket(u) vanishes");
    m = (-ctx.bracket(u + T(1)) / bu) * detail::fuse21_grid(u, ctx);
  }
  m.set_factors({3, 2}, {3, 2});
  return m;
}

// 2x2 fusion: R^(22)(u) = (1 (x) pi) R^(21)_{1,3}(u) R^(21)_{1,2}(u-1)
// (1 (x) iota), a 9x9 map on V^(2) (x) V^(2).  The closed form is
// [u+1]/[u-1] times a fixed 9x9 table.
template <class T>
Matrix<T> fuse22(cx<T> u, const EllipticContext<T>& ctx,
                 FusionMethod method = FusionMethod::by_definition) {
  Matrix<T> m(9, 9);
  if (method == FusionMethod::by_definition) {
    const Matrix<T> id2 = Matrix<T>::identity(2);
    const Matrix<T> id3 = Matrix<T>::identity(3);
    const Matrix<T> a = fuse21(u, ctx);
    const Matrix<T> b = fuse21(u - T(1), ctx);
    const Matrix<T> m1 = kron(b, id2);
    const Matrix<T> s = kron(id3, flip_matrix<T>(2, 2));
    const Matrix<T> m2 = s * kron(a, id2) * s;
    m = kron(id3, sym_restrict_matrix<T>()) * m2 * m1 *
        kron(id3, sym_embed_matrix<T>());
  } else {
    const cx<T> bum = ctx.bracket(u - T(1));
    if (std::abs(bum) < T(pole_threshold))
      throw pole_error("fuse22: bracket(u-1) vanishes");
    m = (ctx.bracket(u + T(1)) / bum) * detail::fuse22_grid(u, ctx);
  }
  m.set_factors({3, 3}, {3, 3});
  return m;
}

}  // namespace ellfuse
