#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "pdom/cooling.hpp"
#include "pdom/errors.hpp"
#include "pdom/squeeze.hpp"
#include "pdom/system.hpp"

namespace {

using namespace pdom;
using namespace pdom::testing;

// Single driven cavity acting on the mechanics, cavity 2 parked.
SystemParams cooled_system(double delta1, Complex lambda1, double kappa1,
                           double g1, double gamma) {
  SystemParams p;
  p.omega_m = 1.0;
  p.gamma = gamma;
  p.cavity1 = {delta1, lambda1, kappa1, g1};
  p.cavity2 = {1.0, 0.0, 1.0, 0.0};
  return p;
}

// Lab realization of the drive-nulled cooling point at dressed coupling gt.
SystemParams pd_cooled_system(double kappa1, double gt, double gamma) {
  const double delta1 = cooling_detuning(1.0, kappa1);
  const Complex lam = optimal_pd_cooling(delta1, 1.0, kappa1);
  const SqueezeParams s = bogoliubov_from_drive(delta1, lam);
  return cooled_system(delta1, lam, kappa1, gt / std::abs(s.mu), gamma);
}

}  // namespace

TEST_SUITE("cooling") {

TEST_CASE("drive-nulled operating point") {
  CHECK(cooling_detuning(1.0, 5.0) == doctest::Approx(4.125).epsilon(1e-15));
  const Complex lam = optimal_pd_cooling(4.125, 1.0, 5.0);
  CHECK(lam.real() == doctest::Approx(3.125).epsilon(1e-15));
  CHECK(lam.imag() == doctest::Approx(-2.5).epsilon(1e-15));

  // The dressed detuning collapses to omega_m exactly at this choice.
  const SqueezeParams s = bogoliubov_from_drive(4.125, lam);
  const double dt = std::sqrt(4.125 * 4.125 - std::norm(lam));
  CHECK(dt == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.r > 0.0);

  // Too shallow a detuning leaves no normal form.
  CHECK_THROWS_AS(optimal_pd_cooling(1.0, 1.0, 2.0), DiagonalizationError);
}

TEST_CASE("coupling from cooperativity") {
  CHECK(coupling_for_cooperativity(10.0, 5.0, 1e-5) ==
        doctest::Approx(0.0223606797749979).epsilon(1e-14));
  CHECK(coupling_for_cooperativity(50.0, 2.0, 1e-4) ==
        doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("drive nulls the backaction at resonance") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 30; ++i) {
    const double kappa = log_uniform(rng, 0.1, 10.0);
    const double u = uniform(rng, 0.02, 1.0);
    const double delta1 = 0.5 * (1.0 + kappa * kappa / 4.0) * (1.0 + u);
    const double g1 = log_uniform(rng, 0.01, 0.3);
    const Complex lam = optimal_pd_cooling(delta1, 1.0, kappa);
    const SystemParams p = cooled_system(delta1, lam, kappa, g1, 1e-2);

    const Matrix6 x = susceptibility(p, 1.0);
    CHECK(std::abs(x.at(Mode::mech, Mode::cav1_dag)) < 1e-12);
  }
}

TEST_CASE("closed form matches the matrix response") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 20; ++i) {
    const double kappa = log_uniform(rng, 0.1, 10.0);
    const double delta1 = uniform(rng, 0.5, 4.0);
    const double mag = delta1 * uniform(rng, 0.0, 0.95);
    const Complex lam = std::polar(mag, uniform(rng, -M_PI, M_PI));
    const double g1 = log_uniform(rng, 0.01, 0.3);
    const SystemParams p =
        cooled_system(delta1, lam, kappa, g1, log_uniform(rng, 1e-4, 0.1));

    for (double w : {-1.4, -1.0, 0.17, 1.0, 2.3}) {
      const Complex direct =
          susceptibility(p, w).at(Mode::mech, Mode::cav1_dag);
      const Complex closed = backaction_amplitude_analytic(p, w);
      CHECK(std::abs(closed - direct) <=
            1e-9 * std::max(1.0, std::abs(direct)));
    }
  }

  SystemParams coupled = cooled_system(1.0, 0.0, 1.0, 0.05, 1e-3);
  coupled.cavity2.g = 0.05;
  CHECK_THROWS_AS(backaction_amplitude_analytic(coupled, 1.0),
                  InvalidParameterError);
}

TEST_CASE("standard-drive floor") {
  CHECK(quantum_backaction_limit(2.0, 1.0) ==
        doctest::Approx(0.5 * (std::sqrt(2.0) - 1.0)).epsilon(1e-14));
  CHECK(quantum_backaction_limit(5.0, 1.0) ==
        doctest::Approx(0.5 * (std::sqrt(7.25) - 1.0)).epsilon(1e-14));
  // Sideband-resolved limit: kappa^2 / (16 omega^2) to leading order.
  CHECK(quantum_backaction_limit(0.01, 1.0) ==
        doctest::Approx(0.01 * 0.01 / 16.0).epsilon(1e-4));
}

TEST_CASE("residual occupancy against frozen references") {
  const double c10 = coupling_for_cooperativity(10.0, 0.5, 1e-5);

  const CoolingResult pd1 =
      backaction_occupancy(pd_cooled_system(0.5, c10, 1e-5));
  CHECK(pd1.n_ba == doctest::Approx(2.3533347872209825e-05).epsilon(5e-6));

  const CoolingResult std1 =
      backaction_occupancy(cooled_system(1.0, 0.0, 0.5, c10, 1e-5));
  CHECK(std1.n_ba == doctest::Approx(0.015262784908392902).epsilon(5e-6));

  const CoolingResult pd2 =
      backaction_occupancy(pd_cooled_system(2.0, 0.1, 1e-4));
  CHECK(pd2.n_ba == doctest::Approx(0.002550766256722908).epsilon(5e-6));

  CHECK(pd2.qba_limit ==
        doctest::Approx(quantum_backaction_limit(2.0, 1.0)).epsilon(1e-14));
  CHECK(pd2.spectrum.values.size() == pd2.spectrum.omegas.size());
  CHECK(pd2.spectrum.omegas.size() > 100);
  CHECK(pd2.spectrum.label == "backaction");
  CHECK(pd2.params_used.cavity1.kappa == 2.0);
}

TEST_CASE("occupancy agrees with a dense trapezoid") {
  const SystemParams p = pd_cooled_system(2.0, 0.1, 1e-4);
  const CoolingResult r = backaction_occupancy(p);

  const double lo = 1.0 - 50.0 * 2.0;
  const double hi = 1.0 + 50.0 * 2.0;
  const int n = 200000;
  const double h = (hi - lo) / n;
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double w = lo + h * i;
    const double v =
        std::norm(susceptibility(p, w).at(Mode::mech, Mode::cav1_dag));
    acc += (i == 0 || i == n) ? 0.5 * v : v;
  }
  double total = acc * h;
  const double f_lo =
      std::norm(susceptibility(p, lo).at(Mode::mech, Mode::cav1_dag));
  const double f_hi =
      std::norm(susceptibility(p, hi).at(Mode::mech, Mode::cav1_dag));
  total += f_lo * std::abs(lo) / 3.0 + f_hi * std::abs(hi) / 3.0;
  total /= 2.0 * M_PI;

  CHECK(r.n_ba == doctest::Approx(total).epsilon(5e-3));
}

TEST_CASE("sweep spot values") {
  const double gamma = 1e-5;
  struct Row {
    double kappa, n_std, n_pd;
  };
  const Row rows[] = {
      {0.1, 6.146855e-4, 4.987236e-6},
      {1.0, 6.093213e-2, 4.001231e-5},
      {10.0, 5.291432528511204, 1.923330e-5},
  };
  for (const Row& row : rows) {
    const double gt = coupling_for_cooperativity(10.0, row.kappa, gamma);
    const double n_std =
        backaction_occupancy(cooled_system(1.0, 0.0, row.kappa, gt, gamma))
            .n_ba;
    const double n_pd =
        backaction_occupancy(pd_cooled_system(row.kappa, gt, gamma)).n_ba;
    CHECK(n_std == doctest::Approx(row.n_std).epsilon(5e-6));
    CHECK(n_pd == doctest::Approx(row.n_pd).epsilon(5e-6));
  }
}

TEST_CASE("weak drive joins the undriven family continuously") {
  const double gt = coupling_for_cooperativity(10.0, 1.0, 1e-4);
  const double n_std =
      backaction_occupancy(cooled_system(1.0, 0.0, 1.0, gt, 1e-4)).n_ba;

  const Complex eps = std::polar(1e-6, 0.7);
  const double delta1 = std::sqrt(1.0 + std::norm(eps));
  const SqueezeParams s = bogoliubov_from_drive(delta1, eps);
  const double n_eps =
      backaction_occupancy(
          cooled_system(delta1, eps, 1.0, gt / std::abs(s.mu), 1e-4))
          .n_ba;
  CHECK(n_eps == doctest::Approx(n_std).epsilon(1e-3));
}

TEST_CASE("zero coupling means zero backaction") {
  const CoolingResult r =
      backaction_occupancy(cooled_system(1.0, 0.0, 1.0, 0.0, 1e-4));
  CHECK(r.n_ba == 0.0);
}

TEST_CASE("unstable systems are refused") {
  // Far above the single-cavity threshold for kappa = 0.2.
  const SystemParams p = cooled_system(1.0, 0.0, 0.2, 1.0, 1e-4);
  CHECK_THROWS_AS(backaction_spectrum(p, {1.0}), UnstableSystemError);
  CHECK_THROWS_AS(backaction_occupancy(p), UnstableSystemError);
}

TEST_CASE("resonant density against frozen references") {
  const double gamma = 1e-5;
  for (double kappa : {0.1, 5.0}) {
    const double gt = coupling_for_cooperativity(10.0, kappa, gamma);
    const Spectrum std_s =
        backaction_spectrum(cooled_system(1.0, 0.0, kappa, gt, gamma), {1.0});
    const Spectrum pd_s =
        backaction_spectrum(pd_cooled_system(kappa, gt, gamma), {1.0});
    if (kappa == 0.1) {
      CHECK(std_s.values[0] == doctest::Approx(5.948838).epsilon(1e-6));
    } else {
      CHECK(std_s.values[0] == doctest::Approx(1.485829e4).epsilon(1e-6));
    }
    CHECK(pd_s.values[0] < 1e-20);
  }
}

TEST_CASE("injected squeezing nulls an undriven cavity") {
  for (double kappa : {0.5, 2.0, 5.0}) {
    const double delta1 = std::sqrt(1.0 + kappa * kappa / 4.0);
    const InjectedSqueezingParams is =
        injected_squeezing_params(delta1, kappa, 1.0);

    CHECK(std::sinh(2.0 * is.r_b) ==
          doctest::Approx(kappa / 2.0).epsilon(1e-12));
    // The phase sits at the pole of its tangent here.
    CHECK(std::abs(std::cos(is.theta_b)) < 1e-12);
    CHECK(is.r_b ==
          doctest::Approx(min_injected_squeezing(kappa, 1.0)).epsilon(1e-12));

    // Density at resonance vanishes under the matched input, up to the
    // cancellation floor of two O(1) amplitudes.
    const SystemParams p = cooled_system(delta1, 0.0, kappa, 0.05, 1e-4);
    const Spectrum s = injected_backaction_spectrum(p, is, {1.0});
    CHECK(s.values[0] < 1e-26);
  }
}

TEST_CASE("injected squeezing solves its defining equation") {
  for (double delta1 : {1.2, 2.0}) {
    const double kappa = 1.0;
    const InjectedSqueezingParams is =
        injected_squeezing_params(delta1, kappa, 1.0);
    const Complex target = (Complex(1.0 - delta1, kappa / 2.0)) /
                           (Complex(1.0 + delta1, kappa / 2.0));
    const Complex real =
        std::polar(std::tanh(is.r_b), is.theta_b);
    CHECK(std::abs(real - target) < 1e-12);
  }

  CHECK_THROWS_AS(injected_squeezing_params(0.0, 1.0, 1.0),
                  NoPhysicalSqueezingError);
}

TEST_CASE("zero injected squeezing recovers the vacuum density") {
  const SystemParams p = cooled_system(1.3, 0.0, 2.0, 0.08, 1e-3);
  const std::vector<double> grid = {0.2, 0.9, 1.0, 1.8};
  const Spectrum vac = backaction_spectrum(p, grid);
  const Spectrum inj =
      injected_backaction_spectrum(p, InjectedSqueezingParams{0.0, 1.1}, grid);
  for (size_t i = 0; i < grid.size(); ++i) {
    CHECK(inj.values[i] == doctest::Approx(vac.values[i]).epsilon(1e-12));
  }
  CHECK(inj.label == "backaction-injected");
}

}  // TEST_SUITE("cooling")
