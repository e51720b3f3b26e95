#pragma once

#include "pdom/types.hpp"

namespace pdom {

// Validate structural constraints (kappa > 0, g >= 0, omega_m > 0,
// gamma >= 0, |lambda| < |delta| wherever lambda != 0). Throws
// InvalidParameterError. Does not check stability.
void validate(const SystemParams& p);

// Drift matrix H of the interleaved 6-mode basis. Row structure for an
// annihilation mode i: H[i][i] = delta_i - i*kappa_i/2, H[i][i+] = lambda_i,
// beam-splitter plus two-mode-squeeze coupling g_i to the mechanics.
// Creation rows follow from H[i+][j+] = -conj(H[i][j]).
Matrix6 build_dynamical_matrix(const SystemParams& p);

// Input-output coupling K = diag(-i*sqrt(kappa1), i*sqrt(kappa1),
// -i*sqrt(gamma), i*sqrt(gamma), -i*sqrt(kappa2), i*sqrt(kappa2)).
Matrix6 build_coupling_matrix(const SystemParams& p);

// Bogoliubov-diagonalize both cavity drives: delta_tilde = sqrt(delta^2 -
// |lambda|^2), g_tilde = |mu| * g. Throws DiagonalizationError when
// |lambda| >= |delta| or delta <= 0.
DressedParams dressed_params(const SystemParams& p);

// The dressed frame is itself a drive-free system (lambda = 0).
SystemParams to_system(const DressedParams& d);

Matrix6 build_dressed_matrix(const DressedParams& d);

// X(omega) = i * (omega*I - H)^{-1} * K, so that the intracavity vector is
// X applied to the input noise vector. Throws SingularMatrixError when
// omega*I - H is not invertible.
Matrix6 susceptibility(const Matrix6& h, const Matrix6& k, double omega);
Matrix6 susceptibility(const SystemParams& p, double omega);

// Input-output scattering T(omega) = I + K * X(omega). Pseudo-unitary:
// T Z T^dag = Z with Z = diag(1, -1, 1, -1, 1, -1) whenever every port of H
// appears in K.
Matrix6 scattering(const Matrix6& h, const Matrix6& k, double omega);
Matrix6 scattering(const SystemParams& p, double omega);

}  // namespace pdom
