#pragma once

#include <array>

#include "pdom/types.hpp"

namespace pdom {

// Largest real part of the eigenvalues of -iH (time-domain drift).
double max_drift_eigenvalue_real(const Matrix6& h);

// Eigenvalue test: stable iff max Re sigma < -1e-12. The report's marginal
// flag is set when |max Re sigma| < 1e-12; marginal systems count as
// unstable. threshold_margin is NaN here (no parameter context).
StabilityReport eigenvalue_stable(const Matrix6& h);

// Characteristic polynomial of -iH, ascending powers. Coefficients are real
// for any physical drift matrix (conjugate-pair symmetry); realness is
// verified by the Routh test.
std::array<Complex, 7> drift_charpoly(const Matrix6& h);

// Routh-Hurwitz test on the drift polynomial. Falls back to the eigenvalue
// verdict if the coefficients fail the realness check. Throws
// DegenerateRouthError when a pivot vanishes (scale-relative 1e-12 guard).
bool routh_hurwitz_stable(const Matrix6& h);

// Full report for a dressed system: eigenvalue verdict, Routh cross-check,
// and (when g_tilde2 == 0) the closed-form single-cavity threshold margin
// g_tilde1_star - g_tilde1.
StabilityReport analyze_stability(const DressedParams& d);

// Coupling at which a single driven cavity destabilizes the mechanics:
// g* = sqrt((dt^2 + k^2/4) * (om^2 + gm^2/4) / (4 * dt * om)).
double cooling_instability_threshold(const DressedParams& d);

// Sufficient condition for two-cavity instability:
//   sum_i g_i^2 dt_i / (dt_i^2 + k_i^2/4) > (om^2 + gm^2/4) / (4 om).
// Both terms use their own cavity's kappa; pass second_term_uses_kappa1 to
// evaluate the variant where the second term reuses kappa1 instead.
bool transducer_instability_sufficient(const DressedParams& d,
                                       bool second_term_uses_kappa1 = false);

// Weak-coupling estimate of the mechanical eigenvalue's real part:
// -gamma/2 - sum_i 2 g_i^2 k_i dt_i om / (((dt_i-om)^2 + k_i^2/4) *
// ((dt_i+om)^2 + k_i^2/4)).
double perturbative_mech_eigenvalue(const DressedParams& d);

}  // namespace pdom
