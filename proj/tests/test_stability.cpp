#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "pdom/errors.hpp"
#include "pdom/squeeze.hpp"
#include "pdom/stability.hpp"
#include "pdom/system.hpp"

namespace {

using namespace pdom;
using namespace pdom::testing;

DressedParams random_dressed(std::mt19937_64& rng) {
  DressedParams d;
  d.omega_m = 1.0;
  d.gamma = log_uniform(rng, 1e-4, 0.1);
  d.kappa1 = log_uniform(rng, 0.01, 20.0);
  d.kappa2 = log_uniform(rng, 0.01, 20.0);
  d.delta_tilde1 = uniform(rng, 0.3, 3.0);
  d.delta_tilde2 = uniform(rng, 0.3, 3.0);
  d.g_tilde1 = log_uniform(rng, 1e-3, 2.0);
  d.g_tilde2 = log_uniform(rng, 1e-3, 2.0);
  return d;
}

Complex eval_poly(const std::array<Complex, 7>& c, Complex x) {
  Complex acc = 0.0;
  for (int k = 6; k >= 0; --k) acc = acc * x + c[static_cast<size_t>(k)];
  return acc;
}

}  // namespace

TEST_SUITE("stability") {

TEST_CASE("single-cavity threshold closed form") {
  DressedParams d;
  d.delta_tilde1 = 1.0;
  d.kappa1 = 5.0;
  d.g_tilde1 = 0.1;
  d.g_tilde2 = 0.0;
  d.omega_m = 1.0;
  d.gamma = 0.0;
  CHECK(cooling_instability_threshold(d) ==
        doctest::Approx(std::sqrt(1.8125)).epsilon(1e-14));

  d.gamma = 1e-5;
  CHECK(cooling_instability_threshold(d) ==
        doctest::Approx(1.3462912018004547).epsilon(1e-12));

  d.g_tilde2 = 0.2;
  CHECK_THROWS_AS(cooling_instability_threshold(d), InvalidParameterError);
}

TEST_CASE("instability appears at the predicted coupling") {
  DressedParams d;
  d.delta_tilde1 = 1.0;
  d.kappa1 = 5.0;
  d.g_tilde2 = 0.0;
  d.kappa2 = 1.0;
  d.delta_tilde2 = 1.0;
  d.omega_m = 1.0;
  d.gamma = 0.001;
  const double gstar = cooling_instability_threshold(d);

  d.g_tilde1 = gstar * (1.0 - 1e-3);
  const StabilityReport below = analyze_stability(d);
  CHECK(below.stable);
  CHECK(below.rh_verdict);
  CHECK(below.threshold_margin > 0.0);

  d.g_tilde1 = gstar * (1.0 + 1e-3);
  const StabilityReport above = analyze_stability(d);
  CHECK(!above.stable);
  CHECK(!above.rh_verdict);
  CHECK(above.threshold_margin < 0.0);
}

TEST_CASE("eigenvalue and polynomial verdicts agree") {
  std::mt19937_64 rng(21);
  int compared = 0;
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    Matrix6 h;
    const DressedParams d = random_dressed(rng);
    if (i % 2 == 0) {
      h = build_dressed_matrix(d);
    } else {
      const double r1 = uniform(rng, 0.0, 1.3);
      const double th1 = uniform(rng, -M_PI, M_PI);
      const double r2 = uniform(rng, 0.0, 1.3);
      const double th2 = uniform(rng, -M_PI, M_PI);
      const SystemParams p = lab_from_dressed(
          d, drive_amplitude(d.delta_tilde1, r1, th1),
          drive_amplitude(d.delta_tilde2, r2, th2));
      h = build_dynamical_matrix(p);
    }

    const StabilityReport er = eigenvalue_stable(h);
    if (std::abs(er.max_eigen_real) < 1e-9) continue;
    bool rh = false;
    try {
      rh = routh_hurwitz_stable(h);
    } catch (const DegenerateRouthError&) {
      continue;
    }
    ++compared;
    if (rh != er.stable) ++mismatches;
  }
  CHECK(mismatches == 0);
  CHECK(compared > 900);
}

TEST_CASE("drift polynomial is real and matches the determinant") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 20; ++i) {
    const SystemParams p = random_driven_system(rng);
    const Matrix6 h = build_dynamical_matrix(p);
    const auto c = drift_charpoly(h);

    double scale = 0.0;
    for (const auto& ck : c) scale = std::max(scale, std::abs(ck));
    for (const auto& ck : c) CHECK(std::abs(ck.imag()) < 1e-9 * scale);
    CHECK(std::abs(c[6] - Complex(1.0)) < 1e-12);

    // Independent evaluation: p(x) = det(x I - (-iH)).
    const Eigen::Matrix<Complex, 6, 6> drift =
        Complex(0.0, -1.0) * h.raw();
    for (int k = 0; k < 4; ++k) {
      const Complex x(uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0));
      const Complex direct =
          (x * Eigen::Matrix<Complex, 6, 6>::Identity() - drift)
              .determinant();
      CHECK(std::abs(eval_poly(c, x) - direct) < 1e-8 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("undamped uncoupled mechanics degenerates the table") {
  DressedParams d;
  d.delta_tilde1 = 1.0;
  d.kappa1 = 1.0;
  d.g_tilde1 = 0.0;
  d.delta_tilde2 = 1.0;
  d.kappa2 = 1.0;
  d.g_tilde2 = 0.0;
  d.omega_m = 1.0;
  d.gamma = 0.0;
  const Matrix6 h = build_dressed_matrix(d);
  CHECK_THROWS_AS(routh_hurwitz_stable(h), DegenerateRouthError);

  const StabilityReport rep = eigenvalue_stable(h);
  CHECK(!rep.stable);
  CHECK(rep.marginal);
}

TEST_CASE("weak-coupling eigenvalue estimate") {
  DressedParams d;
  d.delta_tilde1 = 1.0;
  d.kappa1 = 5.0;
  d.g_tilde1 = std::sqrt(10.0 * 5.0 * 1e-5);
  d.g_tilde2 = 0.0;
  d.delta_tilde2 = 1.0;
  d.kappa2 = 1.0;
  d.omega_m = 1.0;
  d.gamma = 1e-5;

  const double estimate = perturbative_mech_eigenvalue(d);
  CHECK(estimate == doctest::Approx(-8.304878048780487e-05).epsilon(1e-12));

  const double exact = max_drift_eigenvalue_real(build_dressed_matrix(d));
  CHECK(exact == doctest::Approx(-8.30575081e-05).epsilon(1e-6));
  CHECK(estimate == doctest::Approx(exact).epsilon(2e-4));
}

TEST_CASE("two-cavity sufficient instability condition") {
  DressedParams d;
  d.delta_tilde1 = 1.0;
  d.kappa1 = 0.5;
  d.g_tilde1 = 1.0;
  d.delta_tilde2 = 1.0;
  d.kappa2 = 0.5;
  d.g_tilde2 = 1.0;
  d.omega_m = 1.0;
  d.gamma = 0.001;
  CHECK(transducer_instability_sufficient(d));
  CHECK(!eigenvalue_stable(build_dressed_matrix(d)).stable);

  d.g_tilde1 = 0.01;
  d.g_tilde2 = 0.01;
  CHECK(!transducer_instability_sufficient(d));
  CHECK(eigenvalue_stable(build_dressed_matrix(d)).stable);

  SUBCASE("kappa variant changes the verdict for lopsided cavities") {
    DressedParams v;
    v.delta_tilde1 = 1.0;
    v.kappa1 = 0.1;
    v.g_tilde1 = 1e-3;
    v.delta_tilde2 = 1.0;
    v.kappa2 = 10.0;
    v.g_tilde2 = 0.7;
    v.omega_m = 1.0;
    v.gamma = 0.001;
    CHECK(!transducer_instability_sufficient(v));
    CHECK(transducer_instability_sufficient(v, true));
  }
}

TEST_CASE("reference operating points are stable") {
  const SystemParams p = matched_converter_lab();
  const StabilityReport lab = eigenvalue_stable(build_dynamical_matrix(p));
  CHECK(lab.stable);
  CHECK(!lab.marginal);

  const StabilityReport dressed = analyze_stability(dressed_params(p));
  CHECK(dressed.stable);
  CHECK(dressed.rh_verdict);
  CHECK(std::isnan(dressed.threshold_margin));
}

}  // TEST_SUITE("stability")
