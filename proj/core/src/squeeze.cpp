#include "pdom/squeeze.hpp"

#include <cmath>
#include <sstream>

#include "pdom/errors.hpp"

namespace pdom {

namespace {

constexpr double kAtanhGuard = 1.0 - 1e-12;

// Principal interval (-pi, pi].
double wrap_phase(double a) {
  if (a <= -M_PI) return a + 2.0 * M_PI;
  if (a > M_PI) return a - 2.0 * M_PI;
  return a;
}

Complex mu_of(double r, double theta) {
  return std::cosh(r) - std::polar(std::sinh(r), theta);
}

}  // namespace

SqueezeParams bogoliubov_from_drive(double delta, Complex lambda) {
  if (!(delta > 0.0)) {
    std::ostringstream msg;
    msg << "diagonalization requires positive detuning, got delta = " << delta;
    throw DiagonalizationError(msg.str());
  }
  const double ratio = std::abs(lambda) / delta;
  if (ratio > kAtanhGuard) {
    std::ostringstream msg;
    msg << "|lambda|/delta = " << ratio << " leaves no dressed frame";
    throw DiagonalizationError(msg.str());
  }

  SqueezeParams s;
  s.theta = (std::abs(lambda) == 0.0) ? 0.0 : std::arg(lambda);
  s.r = 0.5 * std::atanh(ratio);
  s.mu = mu_of(s.r, s.theta);
  s.phi = wrap_phase(-std::arg(s.mu));
  return s;
}

Complex drive_amplitude(double delta_tilde, double r, double theta) {
  return std::polar(delta_tilde * std::sinh(2.0 * r), theta);
}

SqueezeParams squeeze_with_combined_phase(double r, double psi) {
  SqueezeParams s;
  s.r = r;
  // atan2 form continues theta = 2*atan(exp(-2r)*tan(psi/2)) through
  // psi = pi, where theta = pi.
  s.theta = 2.0 * std::atan2(std::exp(-2.0 * r) * std::sin(psi / 2.0),
                             std::cos(psi / 2.0));
  s.phi = wrap_phase((psi - s.theta) / 2.0);
  s.mu = mu_of(s.r, s.theta);
  return s;
}

Matrix6 squeeze_matrix(const SqueezeParams& s) {
  Matrix6 f = Matrix6::identity();
  auto& m = f.raw();
  const double ch = std::cosh(s.r);
  const double sh = std::sinh(s.r);
  m(0, 0) = std::polar(ch, s.phi);
  m(0, 1) = -std::polar(sh, s.phi + s.theta);
  m(1, 0) = -std::polar(sh, -(s.phi + s.theta));
  m(1, 1) = std::polar(ch, -s.phi);
  return f;
}

Matrix6 squeeze_matrix(const SqueezeParams& s1, const SqueezeParams& s2) {
  Matrix6 f = squeeze_matrix(s1);
  auto& m = f.raw();
  const double ch = std::cosh(s2.r);
  const double sh = std::sinh(s2.r);
  m(4, 4) = std::polar(ch, s2.phi);
  m(4, 5) = -std::polar(sh, s2.phi + s2.theta);
  m(5, 4) = -std::polar(sh, -(s2.phi + s2.theta));
  m(5, 5) = std::polar(ch, -s2.phi);
  return f;
}

SqueezeParams effective_squeezing(const Matrix6& x_dressed) {
  const Complex den = x_dressed.at(Mode::mech, Mode::cav1);
  const Complex num = x_dressed.at(Mode::mech, Mode::cav1_dag);
  if (!(std::abs(den) > std::abs(num))) {
    std::ostringstream msg;
    msg << "|X[m,1]| = " << std::abs(den) << " <= |X[m,1+]| = "
        << std::abs(num) << "; no squeeze transform reproduces this pair";
    throw NotSqueezeLikeError(msg.str());
  }
  const Complex ratio = num / den;

  SqueezeParams s;
  s.r = std::atanh(std::abs(ratio));
  s.theta = (std::abs(ratio) == 0.0) ? 0.0 : std::arg(ratio);
  s.phi = std::arg(den);
  s.mu = mu_of(s.r, s.theta);
  return s;
}

SystemParams lab_from_dressed(const DressedParams& d, Complex lambda1,
                              Complex lambda2) {
  SystemParams p;
  p.omega_m = d.omega_m;
  p.gamma = d.gamma;

  const double delta1 =
      std::sqrt(d.delta_tilde1 * d.delta_tilde1 + std::norm(lambda1));
  const double delta2 =
      std::sqrt(d.delta_tilde2 * d.delta_tilde2 + std::norm(lambda2));
  const SqueezeParams s1 = bogoliubov_from_drive(delta1, lambda1);
  const SqueezeParams s2 = bogoliubov_from_drive(delta2, lambda2);

  p.cavity1 = {delta1, lambda1, d.kappa1, d.g_tilde1 / std::abs(s1.mu)};
  p.cavity2 = {delta2, lambda2, d.kappa2, d.g_tilde2 / std::abs(s2.mu)};
  return p;
}

}  // namespace pdom
