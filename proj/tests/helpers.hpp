#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "pdom/squeeze.hpp"
#include "pdom/system.hpp"
#include "pdom/types.hpp"

namespace pdom::testing {

inline double matrix_distance(const Matrix6& a, const Matrix6& b) {
  return (a.raw() - b.raw()).cwiseAbs().maxCoeff();
}

inline Matrix6 metric_z() {
  Matrix6 z;
  for (int i = 0; i < 6; ++i) {
    z.raw()(i, i) = (i % 2 == 0) ? 1.0 : -1.0;
  }
  return z;
}

// Log-uniform sample on [lo, hi].
inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return u(rng);
}

// A well-conditioned driven two-cavity system: moderate couplings and
// squeeze strengths, both cavities driven, mechanics lossy.
inline SystemParams random_driven_system(std::mt19937_64& rng) {
  DressedParams d;
  d.omega_m = 1.0;
  d.gamma = log_uniform(rng, 1e-4, 0.1);
  d.kappa1 = log_uniform(rng, 0.1, 10.0);
  d.kappa2 = log_uniform(rng, 0.1, 10.0);
  d.delta_tilde1 = uniform(rng, 0.3, 3.0);
  d.delta_tilde2 = uniform(rng, 0.3, 3.0);
  d.g_tilde1 = log_uniform(rng, 1e-3, 0.3);
  d.g_tilde2 = log_uniform(rng, 1e-3, 0.3);

  const double r1 = uniform(rng, 0.0, 1.5);
  const double r2 = uniform(rng, 0.0, 1.5);
  const double th1 = uniform(rng, -M_PI, M_PI);
  const double th2 = uniform(rng, -M_PI, M_PI);
  return lab_from_dressed(d, drive_amplitude(d.delta_tilde1, r1, th1),
                          drive_amplitude(d.delta_tilde2, r2, th2));
}

// The cavity-1 squeeze data of a lab system, with the bath transform built
// from it.
inline SqueezeParams cavity1_squeeze(const SystemParams& p) {
  return bogoliubov_from_drive(p.cavity1.delta, p.cavity1.lambda);
}

// Impedance-matched converter operating point used across suites
// (kappa1 = kappa2 = 5, g_tilde2 = 0.1, lossless mechanics), in its
// lab-frame realization. Values frozen from an independent reference
// implementation.
inline SystemParams matched_converter_lab() {
  SystemParams p;
  p.omega_m = 1.0;
  p.gamma = 0.0;
  p.cavity1 = {4.178285767523295,
               Complex(3.1950073482055945, -2.499999999999998), 5.0,
               0.28749189857075974};
  p.cavity2 = {1.0, 0.0, 5.0, 0.1};
  return p;
}

constexpr double kMatchedOmega0 = 0.9832784193177011;

}  // namespace pdom::testing
