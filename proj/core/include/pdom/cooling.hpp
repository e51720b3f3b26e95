#pragma once

#include <vector>

#include "pdom/types.hpp"
#include "pdom/quadrature.hpp"

namespace pdom {

// Drive that cancels cavity backaction on the mechanics at omega = omega_m:
// lambda1 = delta1 - omega_m - i*kappa1/2. Throws DiagonalizationError when
// |lambda1| >= delta1.
Complex optimal_pd_cooling(double delta1, double omega_m, double kappa1);

// Detuning with dressed delta_tilde1 = omega_m exactly:
// delta1 = omega_m + kappa1^2 / (8 * omega_m).
double cooling_detuning(double omega_m, double kappa1);

// Coupling g_tilde1 realizing cooperativity C = g^2 / (kappa1 * gamma).
double coupling_for_cooperativity(double cooperativity, double kappa1,
                                  double gamma);

// Backaction spectral density |X[m,1+](omega)|^2 on the given grid.
// Requires a stable system (UnstableSystemError otherwise).
Spectrum backaction_spectrum(const SystemParams& p,
                             const std::vector<double>& omegas);

// Closed form of X[m,1+] for a single driven cavity (cavity 2 decoupled).
// Used as an independent cross-check of the matrix path.
Complex backaction_amplitude_analytic(const SystemParams& p, double omega);

// Residual occupancy from cavity backaction:
// n_ba = (1/2pi) * integral |X[m,1+](omega)|^2 d omega,
// by adaptive quadrature over |omega - omega_m| <= 50 * max(kappa1, omega_m)
// with panels pinned around +-omega_m and closed 1/omega^4 tails. The
// quadrature error budget is rel_tol * max(n_ba, abs_floor).
CoolingResult backaction_occupancy(const SystemParams& p,
                                   const QuadratureOptions& opts = {});

// Standard-drive floor (1/2) * (sqrt(1 + (kappa1 / (2 omega_m))^2) - 1).
double quantum_backaction_limit(double kappa1, double omega_m);

// Input squeezing that nulls the backaction of an undriven cavity at
// omega = omega_m: exp(i*theta_b) * tanh(r_b) =
// (omega_m - delta1 + i*kappa1/2) / (omega_m + delta1 + i*kappa1/2).
// Throws NoPhysicalSqueezingError when the target modulus reaches 1.
InjectedSqueezingParams injected_squeezing_params(double delta1,
                                                  double kappa1,
                                                  double omega_m);

// Backaction density under squeezed input noise:
// |X[m,1] * exp(i*theta_b) * sinh(r_b) + X[m,1+] * cosh(r_b)|^2.
// Reduces to the vacuum density at r_b = 0.
Spectrum injected_backaction_spectrum(const SystemParams& p,
                                      const InjectedSqueezingParams& is,
                                      const std::vector<double>& omegas);

// Smallest r_b over detunings, reached at delta1 = sqrt(omega_m^2 +
// (kappa1/2)^2): r_b = (1/2) * asinh(kappa1 / (2 * omega_m)).
double min_injected_squeezing(double kappa1, double omega_m);

}  // namespace pdom
