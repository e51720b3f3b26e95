#pragma once

#include <vector>

#include "pdom/types.hpp"

namespace pdom {

// eta(omega) = |T[c2,c1]|^2 for the lab scattering matrix at one frequency.
double conversion_efficiency(const Matrix6& t);

// Amplitude ratio rho = T[c2,c1+] / T[c2,c1] feeding the conjugate-nulling
// condition exp(i*(2*phi+theta)) * tanh(r) = rho. Throws
// ZeroTransmissionError when T[c2,c1] = 0.
Complex conjugate_ratio(const Matrix6& t);

// Power ratio R = |T[c2,c1+]|^2 / |T[c2,c1]|^2.
double conjugate_power_ratio(const Matrix6& t);

// Input-referred added noise of the converter for vacuum bath 1 and the
// given bath-2 state, from the symmetrized output correlator, normalized by
// eta. Throws ZeroTransmissionError when eta = 0.
double added_noise(const Matrix6& t_lab, const BathSpec& bath2);

// S >= R/2 + |(1-eta)/(2*eta) + R/2| for any bath-2 state.
double added_noise_lower_bound(double eta, double conj_power_ratio);

// Cavity-1 squeeze that nulls the conjugate output at the frequency where
// rho was taken: r = atanh(|rho|), theta = arg(rho), phi = 0. Any split of
// 2*phi + theta = arg(rho) works at the bath-transform level; see
// squeeze_with_combined_phase for the drive-realizable split. Throws
// NoPhysicalSqueezingError when |rho| >= 1.
SqueezeParams optimal_pd_transduction(Complex rho);

// Conversion rate of one cavity: (4*g^2/kappa) / (1 + (kappa/(4*om))^2).
double gamma_rate(double g_tilde, double kappa, double omega_m);

// Coupling realizing a given conversion rate (inverse of gamma_rate).
double coupling_for_rate(double rate, double kappa, double omega_m);

struct ImpedanceMatch {
  double gamma1 = 0.0;  // larger root, gamma1 > gamma2
  double alternate = 0.0;
};

// Rate ratio x = Gamma1/Gamma2 solving x^2 - (4c - 2)x + 1 = 0 with
// c = 1 + (kappa2/(4*om))^2, which drives the nulled-output peak
// efficiency to exactly 1.
ImpedanceMatch impedance_match_modified(double gamma2, double kappa2,
                                        double omega_m);

// Readout frequency, rate picture: omega_m - (k1*G1 + k2*G2) / (8*om).
double omega0_analytic(double gamma1, double kappa1, double gamma2,
                       double kappa2, double omega_m);

// Rate-picture efficiency profile
// (1 + (kappa2/(4*om))^2) * G1*G2 / ((omega-omega0)^2 + ((G1+G2)/2)^2).
double lorentzian_eta(double omega, double omega0, double gamma1,
                      double gamma2, double kappa2, double omega_m);

// Efficiency at the tuned frequency for any conjugate-nulling drive:
// |T[c2,c1]|^2 - |T[c2,c1+]|^2 of the drive-free dressed system.
double nulled_efficiency(const DressedParams& d, double omega);

// Assemble the operating point of a dressed two-cavity converter:
// conversion rates, analytic readout frequency refined on the full matrix
// (modified matching: the nulled_efficiency = 1 crossing nearest the
// analytic value; standard matching: the nulled_efficiency maximum), and
// the conjugate-nulling cavity-1 squeeze at that frequency. Requires
// gamma = 0.
TransducerDesign make_transducer_design(const DressedParams& d,
                                        Matching matching);

// Lab-frame realization of a design: cavity-1 drive from the
// drive-realizable split of squeeze1, cavity 2 undriven.
SystemParams transducer_lab_system(const DressedParams& d,
                                   const TransducerDesign& design);

// Bath-2 squeeze phase minimizing the added noise:
// vartheta = arg(-T[c2,c2+] / T[c2,c2]). Throws ZeroReflectionError when
// either reflection entry vanishes.
double optimal_output_squeeze_phase(const Matrix6& t);

struct TeleportPhases {
  double vartheta = 0.0;
  double phi_t = 0.0;
};

// Output noise of the teleportation readout with gain tanh-matched to the
// transmission: feedforward squeeze r_t, phase phi_t, bath-2 squeeze
// (s, vartheta). Not normalized by eta.
double teleportation_noise(const Matrix6& t_lab, double r_t, double phi_t,
                           const BathSpec& bath2);

// vartheta = arg(-T[c2,c2+]/T[c2,c2]), phi_t = arg(-T[c2,c1]). Throws
// ZeroTransmissionError when T[c2,c1] = 0.
TeleportPhases optimal_teleport_phases(const Matrix6& t_lab);

// eta, conjugate power ratio, added noise and its lower bound on a grid.
NoiseBudget noise_budget(const SystemParams& lab,
                         const std::vector<double>& omegas,
                         const BathSpec& bath2);

}  // namespace pdom
