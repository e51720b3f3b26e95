#include "pdom/transduction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "pdom/errors.hpp"
#include "pdom/squeeze.hpp"
#include "pdom/system.hpp"

namespace pdom {

namespace {

double wrap_phase(double a) {
  while (a <= -M_PI) a += 2.0 * M_PI;
  while (a > M_PI) a -= 2.0 * M_PI;
  return a;
}

struct OutputRow {
  Complex t21, t21d, t22, t22d;
};

OutputRow output_row(const Matrix6& t) {
  return {t.at(Mode::cav2, Mode::cav1), t.at(Mode::cav2, Mode::cav1_dag),
          t.at(Mode::cav2, Mode::cav2), t.at(Mode::cav2, Mode::cav2_dag)};
}

// Bisect h on a sign-changing bracket down to machine width.
template <typename F>
double bisect(const F& h, double lo, double hi) {
  double flo = h(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double fm = h(mid);
    if ((flo <= 0.0) == (fm <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Golden-section maximum on a locally unimodal bracket.
template <typename F>
double golden_max(const F& f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi));
       ++i) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double conversion_efficiency(const Matrix6& t) {
  return std::norm(t.at(Mode::cav2, Mode::cav1));
}

Complex conjugate_ratio(const Matrix6& t) {
  const OutputRow r = output_row(t);
  if (std::abs(r.t21) == 0.0) {
    throw ZeroTransmissionError("T[c2,c1] = 0; conjugate ratio undefined");
  }
  return r.t21d / r.t21;
}

double conjugate_power_ratio(const Matrix6& t) {
  const Complex rho = conjugate_ratio(t);
  return std::norm(rho);
}

double added_noise(const Matrix6& t_lab, const BathSpec& bath2) {
  const OutputRow r = output_row(t_lab);
  const double eta = std::norm(r.t21);
  if (eta == 0.0) {
    throw ZeroTransmissionError("T[c2,c1] = 0; added noise diverges");
  }
  const double s = (bath2.kind == BathKind::vacuum) ? 0.0 : bath2.s;
  const double ch2 = std::cosh(2.0 * s);
  const double sh2 = std::sinh(2.0 * s);
  const Complex phase = std::polar(1.0, bath2.vartheta);

  const double raw = 0.5 * std::norm(r.t21d) +
                     0.5 * ch2 * (std::norm(r.t22) + std::norm(r.t22d)) +
                     sh2 * (phase * r.t22 * std::conj(r.t22d)).real();
  return raw / eta;
}

double added_noise_lower_bound(double eta, double conj_power_ratio) {
  if (!(eta > 0.0)) {
    throw ZeroTransmissionError("lower bound requires eta > 0");
  }
  return conj_power_ratio / 2.0 +
         std::abs((1.0 - eta) / (2.0 * eta) + conj_power_ratio / 2.0);
}

SqueezeParams optimal_pd_transduction(Complex rho) {
  const double mod = std::abs(rho);
  if (mod >= 1.0) {
    std::ostringstream msg;
    msg << "conjugate ratio modulus " << mod
        << " is not below 1; no drive nulls it";
    throw NoPhysicalSqueezingError(msg.str());
  }
  SqueezeParams s;
  s.r = std::atanh(mod);
  s.theta = (mod == 0.0) ? 0.0 : std::arg(rho);
  s.phi = 0.0;
  s.mu = std::cosh(s.r) - std::polar(std::sinh(s.r), s.theta);
  return s;
}

double gamma_rate(double g_tilde, double kappa, double omega_m) {
  const double x = kappa / (4.0 * omega_m);
  return (4.0 * g_tilde * g_tilde / kappa) / (1.0 + x * x);
}

double coupling_for_rate(double rate, double kappa, double omega_m) {
  const double x = kappa / (4.0 * omega_m);
  return std::sqrt(rate * kappa * (1.0 + x * x) / 4.0);
}

ImpedanceMatch impedance_match_modified(double gamma2, double kappa2,
                                        double omega_m) {
  const double x = kappa2 / (4.0 * omega_m);
  const double c = 1.0 + x * x;
  const double b = 4.0 * c - 2.0;
  const double x_plus = (b + std::sqrt(b * b - 4.0)) / 2.0;
  // The roots multiply to 1; the reciprocal form avoids cancellation.
  return {x_plus * gamma2, gamma2 / x_plus};
}

double omega0_analytic(double gamma1, double kappa1, double gamma2,
                       double kappa2, double omega_m) {
  return omega_m - (kappa1 * gamma1 + kappa2 * gamma2) / (8.0 * omega_m);
}

double lorentzian_eta(double omega, double omega0, double gamma1,
                      double gamma2, double kappa2, double omega_m) {
  const double x = kappa2 / (4.0 * omega_m);
  const double half = (gamma1 + gamma2) / 2.0;
  const double det = omega - omega0;
  return (1.0 + x * x) * gamma1 * gamma2 / (det * det + half * half);
}

double nulled_efficiency(const DressedParams& d, double omega) {
  const Matrix6 t = scattering(to_system(d), omega);
  const OutputRow r = output_row(t);
  return std::norm(r.t21) - std::norm(r.t21d);
}

TransducerDesign make_transducer_design(const DressedParams& d,
                                        Matching matching) {
  if (d.gamma != 0.0) {
    throw InvalidParameterError(
        "converter design assumes a lossless mechanical link (gamma = 0)");
  }

  TransducerDesign design;
  design.matched = matching;
  design.gamma1 = gamma_rate(d.g_tilde1, d.kappa1, d.omega_m);
  design.gamma2 = gamma_rate(d.g_tilde2, d.kappa2, d.omega_m);

  const double w0a = omega0_analytic(design.gamma1, d.kappa1, design.gamma2,
                                     d.kappa2, d.omega_m);
  const double span = design.gamma1 + design.gamma2;
  const auto g = [&](double w) { return nulled_efficiency(d, w); };

  const int n_scan = 1025;
  std::vector<double> xs(n_scan);
  std::vector<double> gs(n_scan);
  for (int i = 0; i < n_scan; ++i) {
    xs[i] = w0a - span + 2.0 * span * i / (n_scan - 1);
    gs[i] = g(xs[i]);
  }

  double w0 = w0a;
  bool found = false;
  if (matching == Matching::modified) {
    // Tuned frequency: the unit-efficiency crossing nearest the analytic
    // estimate. The peak slightly exceeds 1, giving two crossings.
    double best_dist = 0.0;
    for (int i = 0; i + 1 < n_scan; ++i) {
      const double h0 = gs[i] - 1.0;
      const double h1 = gs[i + 1] - 1.0;
      if ((h0 <= 0.0) == (h1 <= 0.0)) continue;
      const double root =
          bisect([&](double w) { return g(w) - 1.0; }, xs[i], xs[i + 1]);
      const double dist = std::abs(root - w0a);
      if (!found || dist < best_dist) {
        w0 = root;
        best_dist = dist;
        found = true;
      }
    }
  }
  if (!found) {
    // Standard matching (or a profile that never reaches 1): take the
    // efficiency maximum.
    int imax = 0;
    for (int i = 1; i < n_scan; ++i) {
      if (gs[i] > gs[imax]) imax = i;
    }
    const int lo = std::max(0, imax - 1);
    const int hi = std::min(n_scan - 1, imax + 1);
    w0 = golden_max(g, xs[lo], xs[hi]);
  }
  design.omega0 = w0;

  const Matrix6 t = scattering(to_system(d), w0);
  design.squeeze1 = optimal_pd_transduction(conjugate_ratio(t));
  return design;
}

SystemParams transducer_lab_system(const DressedParams& d,
                                   const TransducerDesign& design) {
  const double psi =
      wrap_phase(design.squeeze1.theta + 2.0 * design.squeeze1.phi);
  const SqueezeParams split =
      squeeze_with_combined_phase(design.squeeze1.r, psi);
  const Complex lambda1 =
      drive_amplitude(d.delta_tilde1, split.r, split.theta);
  return lab_from_dressed(d, lambda1, 0.0);
}

double optimal_output_squeeze_phase(const Matrix6& t) {
  const OutputRow r = output_row(t);
  if (std::abs(r.t22) == 0.0 || std::abs(r.t22d) == 0.0) {
    throw ZeroReflectionError(
        "output reflection pair has a zero entry; phase undefined");
  }
  return std::arg(-r.t22d / r.t22);
}

double teleportation_noise(const Matrix6& t_lab, double r_t, double phi_t,
                           const BathSpec& bath2) {
  const OutputRow r = output_row(t_lab);
  const double ch = std::cosh(r_t);
  const double sh = std::sinh(r_t);
  const double s = (bath2.kind == BathKind::vacuum) ? 0.0 : bath2.s;
  const Complex gain = std::polar(1.0, phi_t) * std::conj(r.t21);
  const Complex out_phase = std::polar(1.0, bath2.vartheta);

  const double term_signal = std::norm(ch + gain * sh) +
                             std::norm(sh + gain * ch);
  const double term_conj = std::norm(r.t21d) * (ch * ch + sh * sh);
  const double term_reflect =
      std::norm(out_phase * std::sinh(s) * r.t22 + std::cosh(s) * r.t22d);
  const double term_asym = 0.5 * (std::norm(r.t22) - std::norm(r.t22d));
  return term_signal + term_conj + term_reflect + term_asym;
}

TeleportPhases optimal_teleport_phases(const Matrix6& t_lab) {
  const OutputRow r = output_row(t_lab);
  if (std::abs(r.t21) == 0.0) {
    throw ZeroTransmissionError("T[c2,c1] = 0; teleport gain undefined");
  }
  TeleportPhases ph;
  ph.vartheta = optimal_output_squeeze_phase(t_lab);
  ph.phi_t = std::arg(-r.t21);
  return ph;
}

NoiseBudget noise_budget(const SystemParams& lab,
                         const std::vector<double>& omegas,
                         const BathSpec& bath2) {
  const Matrix6 h = build_dynamical_matrix(lab);
  const Matrix6 k = build_coupling_matrix(lab);

  NoiseBudget nb;
  nb.eta.omegas = omegas;
  nb.conj_ratio.omegas = omegas;
  nb.added_noise.omegas = omegas;
  nb.lower_bound.omegas = omegas;
  nb.eta.label = "eta";
  nb.conj_ratio.label = "conj_ratio";
  nb.added_noise.label = "added_noise";
  nb.lower_bound.label = "lower_bound";

  for (double w : omegas) {
    const Matrix6 t = scattering(h, k, w);
    const double eta = conversion_efficiency(t);
    const double ratio = conjugate_power_ratio(t);
    nb.eta.values.push_back(eta);
    nb.conj_ratio.values.push_back(ratio);
    nb.added_noise.values.push_back(added_noise(t, bath2));
    nb.lower_bound.values.push_back(added_noise_lower_bound(eta, ratio));
  }
  return nb;
}

}  // namespace pdom
