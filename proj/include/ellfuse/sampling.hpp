#pragma once

// Deterministic spectral-parameter sampling: points (u, v) with
// Re in (0.05, 0.95) and Im in (-0.1, 0.1), kept at distance >= 0.05 from the
// zero lattices of the brackets [u], [u+-1], [v], [v+-1], [u-v], [u-v+-1],
// [u-v-2].  Redraws are capped; exhausting the cap raises sampling_error.

#include <complex>
#include <random>

#include "ellfuse/core.hpp"

namespace ellfuse {

struct SamplePoint {
  std::complex<double> u, v;
};

// Distance from w to the period lattice r Z + r tau Z (bracket zeros).
inline double lattice_distance(std::complex<double> w, double r,
                               std::complex<double> tau) {
  // Coordinates of w in the basis (r, r tau).
  const double beta = w.imag() / (r * tau.imag());
  const double alpha = (w.real() - beta * r * tau.real()) / r;
  const long ma = std::lround(alpha);
  const long mb = std::lround(beta);
  double best = std::abs(w);
  for (long dm = -1; dm <= 1; ++dm)
    for (long dn = -1; dn <= 1; ++dn) {
      const std::complex<double> node =
          double(ma + dm) * r + double(mb + dn) * r * tau;
      best = std::min(best, std::abs(w - node));
    }
  return best;
}

class PointSampler {
 public:
  PointSampler(std::uint64_t seed, const EllipticContext<double>& ctx)
      : rng_(seed), ctx_(ctx) {}

  SamplePoint next() {
    std::uniform_real_distribution<double> re(0.05, 0.95);
    std::uniform_real_distribution<double> im(-0.1, 0.1);
    for (int attempt = 0; attempt < 1000; ++attempt) {
      const std::complex<double> u(re(rng_), im(rng_));
      const std::complex<double> v(re(rng_), im(rng_));
      if (guarded(u, v)) return SamplePoint{u, v};
    }
    throw sampling_error("PointSampler: redraw cap of 1000 exhausted");
  }

 private:
  bool guarded(std::complex<double> u, std::complex<double> v) const {
    const std::complex<double> d = u - v;
    const std::complex<double> args[] = {u, u + 1.0, u - 1.0, v,
                                         v + 1.0, v - 1.0, d,
                                         d + 1.0, d - 1.0, d - 2.0};
    for (const auto& w : args)
      if (lattice_distance(w, ctx_.r, ctx_.tau) < 0.05) return false;
    return true;
  }

  std::mt19937_64 rng_;
  EllipticContext<double> ctx_;
};

}  // namespace ellfuse
