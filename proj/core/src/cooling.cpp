#include "pdom/cooling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pdom/errors.hpp"
#include "pdom/squeeze.hpp"
#include "pdom/stability.hpp"
#include "pdom/system.hpp"

namespace pdom {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_stable(const SystemParams& p) {
  const StabilityReport rep =
      eigenvalue_stable(build_dynamical_matrix(p));
  if (!rep.stable) {
    std::ostringstream msg;
    msg << "system is " << (rep.marginal ? "marginal" : "unstable")
        << " (max drift eigenvalue real part " << rep.max_eigen_real << ")";
    throw UnstableSystemError(msg.str());
  }
}

// Width of the damped mechanical peak once cavity 1 is adiabatically
// eliminated. Only the first cavity is dressed; the second may sit at
// delta = 0 and must not be diagonalized.
double peak_width(const SystemParams& p) {
  const double mu1 =
      p.cavity1.lambda == Complex(0.0, 0.0)
          ? 1.0
          : std::abs(
                bogoliubov_from_drive(p.cavity1.delta, p.cavity1.lambda).mu);
  const double g_tilde = mu1 * p.cavity1.g;
  return std::max(p.gamma, 4.0 * g_tilde * g_tilde / p.cavity1.kappa);
}

}  // namespace

Complex optimal_pd_cooling(double delta1, double omega_m, double kappa1) {
  const Complex lambda(delta1 - omega_m, -kappa1 / 2.0);
  if (std::abs(lambda) >= delta1) {
    std::ostringstream msg;
    msg << "nulling drive |lambda| = " << std::abs(lambda)
        << " is not below delta1 = " << delta1;
    throw DiagonalizationError(msg.str());
  }
  return lambda;
}

double cooling_detuning(double omega_m, double kappa1) {
  return omega_m + kappa1 * kappa1 / (8.0 * omega_m);
}

double coupling_for_cooperativity(double cooperativity, double kappa1,
                                  double gamma) {
  return std::sqrt(cooperativity * kappa1 * gamma);
}

Spectrum backaction_spectrum(const SystemParams& p,
                             const std::vector<double>& omegas) {
  validate(p);
  require_stable(p);

  const Matrix6 h = build_dynamical_matrix(p);
  const Matrix6 k = build_coupling_matrix(p);

  Spectrum s;
  s.omegas = omegas;
  s.values.reserve(omegas.size());
  for (double w : omegas) {
    const Matrix6 x = susceptibility(h, k, w);
    s.values.push_back(std::norm(x.at(Mode::mech, Mode::cav1_dag)));
  }
  s.label = "backaction";
  return s;
}

Complex backaction_amplitude_analytic(const SystemParams& p, double omega) {
  if (p.cavity2.g != 0.0) {
    throw InvalidParameterError(
        "closed form requires a decoupled second cavity (g2 = 0)");
  }
  const double om = p.omega_m;
  const double k1 = p.cavity1.kappa;
  const double d1 = p.cavity1.delta;
  const Complex l1 = p.cavity1.lambda;
  const double g1 = p.cavity1.g;

  const Complex num = std::sqrt(k1) * g1 *
                      (l1 + (omega - d1) + kI * (k1 / 2.0)) *
                      (omega + om + kI * (p.gamma / 2.0));
  const Complex wc = omega + kI * (k1 / 2.0);
  const Complex wm = omega + kI * (p.gamma / 2.0);
  const Complex den = (wc * wc - d1 * d1 + std::norm(l1)) * (wm * wm - om * om) -
                      4.0 * g1 * g1 * d1 * om +
                      2.0 * g1 * g1 * om * (2.0 * l1.real());
  return -num / den;
}

CoolingResult backaction_occupancy(const SystemParams& p,
                                   const QuadratureOptions& opts) {
  validate(p);

  CoolingResult out;
  out.params_used = p;
  out.qba_limit = quantum_backaction_limit(p.cavity1.kappa, p.omega_m);

  if (p.cavity1.g == 0.0) {
    out.n_ba = 0.0;
    return out;
  }
  require_stable(p);

  const Matrix6 h = build_dynamical_matrix(p);
  const Matrix6 k = build_coupling_matrix(p);
  const auto f = [&](double w) {
    const Matrix6 x = susceptibility(h, k, w);
    return std::norm(x.at(Mode::mech, Mode::cav1_dag));
  };

  const double om = p.omega_m;
  const double width = 50.0 * std::max(p.cavity1.kappa, om);
  const double a = om - width;
  const double b = om + width;

  const double gw = peak_width(p);
  std::vector<double> breakpoints{0.0};
  for (double p0 : {om, -om}) {
    for (double step : {0.5, 2.5, 12.5, 62.5, 312.5}) {
      breakpoints.push_back(p0 - step * gw);
      breakpoints.push_back(p0 + step * gw);
    }
    // Four seed panels across the peak itself: 60 abscissae inside the
    // expected linewidth before any refinement.
    breakpoints.push_back(p0 - 0.25 * gw);
    breakpoints.push_back(p0);
    breakpoints.push_back(p0 + 0.25 * gw);
  }

  const QuadratureResult q = integrate_adaptive(f, a, b, breakpoints, opts);

  const double tails =
      inverse_quartic_tail(f(a), a) + inverse_quartic_tail(f(b), b);
  out.n_ba = (q.value + tails) / (2.0 * M_PI);

  const int n_grid = 801;
  std::vector<double> grid;
  grid.reserve(n_grid);
  const double lo = om - 10.0 * gw;
  const double hi = om + 10.0 * gw;
  for (int i = 0; i < n_grid; ++i) {
    grid.push_back(lo + (hi - lo) * i / (n_grid - 1));
  }
  out.spectrum = backaction_spectrum(p, grid);
  return out;
}

double quantum_backaction_limit(double kappa1, double omega_m) {
  const double x = kappa1 / (2.0 * omega_m);
  return 0.5 * (std::sqrt(1.0 + x * x) - 1.0);
}

InjectedSqueezingParams injected_squeezing_params(double delta1,
                                                  double kappa1,
                                                  double omega_m) {
  const Complex num(omega_m - delta1, kappa1 / 2.0);
  const Complex den(omega_m + delta1, kappa1 / 2.0);
  const Complex target = num / den;
  if (std::abs(target) >= 1.0) {
    std::ostringstream msg;
    msg << "required squeeze modulus " << std::abs(target)
        << " is not below 1 (delta1 = " << delta1 << ")";
    throw NoPhysicalSqueezingError(msg.str());
  }
  InjectedSqueezingParams is;
  is.r_b = std::atanh(std::abs(target));
  is.theta_b = std::arg(target);
  return is;
}

Spectrum injected_backaction_spectrum(const SystemParams& p,
                                      const InjectedSqueezingParams& is,
                                      const std::vector<double>& omegas) {
  validate(p);
  require_stable(p);

  const Matrix6 h = build_dynamical_matrix(p);
  const Matrix6 k = build_coupling_matrix(p);
  const Complex phase = std::polar(1.0, is.theta_b);
  const double sh = std::sinh(is.r_b);
  const double ch = std::cosh(is.r_b);

  Spectrum s;
  s.omegas = omegas;
  s.values.reserve(omegas.size());
  for (double w : omegas) {
    const Matrix6 x = susceptibility(h, k, w);
    const Complex v = x.at(Mode::mech, Mode::cav1) * phase * sh +
                      x.at(Mode::mech, Mode::cav1_dag) * ch;
    s.values.push_back(std::norm(v));
  }
  s.label = "backaction-injected";
  return s;
}

double min_injected_squeezing(double kappa1, double omega_m) {
  return 0.5 * std::asinh(kappa1 / (2.0 * omega_m));
}

}  // namespace pdom
