#pragma once

#include "pdom/types.hpp"

namespace pdom {

// Squeeze parameters of a drive: exp(i*theta)*tanh(2r) = lambda/delta.
// r is the principal non-negative root, phi = -arg(mu) makes the dressed
// coupling |mu|*g real. Throws DiagonalizationError when |lambda| >= delta
// (up to an atanh guard at |lambda|/delta = 1 - 1e-12) or delta <= 0.
SqueezeParams bogoliubov_from_drive(double delta, Complex lambda);

// Drive amplitude that realizes the given squeeze in a frame with detuning
// delta_tilde: lambda = delta_tilde * sinh(2r) * exp(i*theta).
Complex drive_amplitude(double delta_tilde, double r, double theta);

// Split a combined output phase psi = 2*phi + theta into the unique
// drive-realizable pair with phi = -arg(mu(r, theta)):
// theta = 2*atan(exp(-2r) * tan(psi/2)), continued to theta = psi at
// psi = +-pi.
SqueezeParams squeeze_with_combined_phase(double r, double psi);

// Bath-side Bogoliubov matrix F = diag(F1, I4) with
// F1 = [[exp(i*phi)cosh r, -exp(i*(phi+theta))sinh r],
//       [-exp(-i*(phi+theta))sinh r, exp(-i*phi)cosh r]].
// Satisfies F Z F^dag = Z. Lab-frame scattering is F^{-1} T_dressed F.
Matrix6 squeeze_matrix(const SqueezeParams& s);

// Both cavities driven: F = diag(F1, I2, F2).
Matrix6 squeeze_matrix(const SqueezeParams& s1, const SqueezeParams& s2);

// Read the squeeze equivalent to a dressed susceptibility at one frequency:
// tanh(r_s) * exp(i*theta_s) = X[m,1+]/X[m,1], phi_s = arg(X[m,1]).
// Throws NotSqueezeLikeError when |X[m,1]| <= |X[m,1+]|.
SqueezeParams effective_squeezing(const Matrix6& x_dressed);

// Undo the diagonalization for given drive amplitudes:
// delta_i = sqrt(delta_tilde_i^2 + |lambda_i|^2), g_i = g_tilde_i / |mu_i|.
SystemParams lab_from_dressed(const DressedParams& d, Complex lambda1,
                              Complex lambda2);

}  // namespace pdom
