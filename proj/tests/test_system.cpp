#include "doctest.h"

#include <cmath>
#include <random>

#include "pdom/errors.hpp"
#include "pdom/stability.hpp"
#include "pdom/system.hpp"

#include "helpers.hpp"

using namespace pdom;
using namespace pdom::testing;

TEST_SUITE("system") {

TEST_CASE("dynamical matrix carries the drive on the conjugate column") {
  SystemParams p;
  p.cavity1 = {1.0, 0.5, 2.0, 0.1};
  p.cavity2 = {1.0, 0.0, 2.0, 0.0};
  const Matrix6 h = build_dynamical_matrix(p);

  CHECK(h.at(Mode::cav1, Mode::cav1_dag) == Complex(0.5, 0.0));
  CHECK(h.at(Mode::cav1_dag, Mode::cav1) == Complex(-0.5, 0.0));
  CHECK(h.at(Mode::cav1, Mode::cav1) == Complex(1.0, -1.0));
  CHECK(h.at(Mode::cav1_dag, Mode::cav1_dag) == Complex(-1.0, -1.0));
  CHECK(h.at(Mode::mech, Mode::cav1) == Complex(0.1, 0.0));
  CHECK(h.at(Mode::mech, Mode::cav1_dag) == Complex(0.1, 0.0));
  CHECK(h.at(Mode::cav1, Mode::cav2) == Complex(0.0, 0.0));
}

TEST_CASE("conjugate-pair symmetry holds for random driven systems") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const SystemParams p = random_driven_system(rng);
    const Matrix6 h = build_dynamical_matrix(p);
    for (int i = 0; i < 6; i += 2) {
      for (int j = 0; j < 6; ++j) {
        const int jp = (j % 2 == 0) ? j + 1 : j - 1;
        CHECK(std::abs(h.raw()(i + 1, jp) + std::conj(h.raw()(i, j))) <
              1e-15);
      }
    }
  }
}

TEST_CASE("coupling matrix is the alternating-sign port map") {
  SystemParams p;
  p.cavity1 = {1.0, 0.0, 4.0, 0.0};
  p.cavity2 = {1.0, 0.0, 9.0, 0.0};
  p.gamma = 0.25;
  const Matrix6 k = build_coupling_matrix(p);

  CHECK(k.at(Mode::cav1, Mode::cav1) == Complex(0.0, -2.0));
  CHECK(k.at(Mode::cav1_dag, Mode::cav1_dag) == Complex(0.0, 2.0));
  CHECK(k.at(Mode::mech, Mode::mech) == Complex(0.0, -0.5));
  CHECK(k.at(Mode::mech_dag, Mode::mech_dag) == Complex(0.0, 0.5));
  CHECK(k.at(Mode::cav2, Mode::cav2) == Complex(0.0, -3.0));
  CHECK(k.at(Mode::cav1, Mode::cav2) == Complex(0.0, 0.0));
}

TEST_CASE("diagonalizing a drive shrinks the detuning and coupling") {
  SystemParams p;
  p.cavity1 = {1.0, 0.6, 2.0, 0.2};
  p.cavity2 = {1.0, 0.0, 2.0, 0.0};
  const DressedParams d = dressed_params(p);

  CHECK(d.delta_tilde1 == doctest::Approx(0.8).epsilon(1e-14));
  // theta = 0: mu = cosh r - sinh r = exp(-r).
  const double r = 0.5 * std::atanh(0.6);
  CHECK(d.g_tilde1 == doctest::Approx(0.2 * std::exp(-r)).epsilon(1e-14));
  CHECK(d.kappa1 == 2.0);
  CHECK(d.g_tilde2 == doctest::Approx(0.0));

  p.cavity1.lambda = 1.0;
  CHECK_THROWS_AS(dressed_params(p), DiagonalizationError);
  p.cavity1.lambda = 0.0;
  p.cavity1.delta = -1.0;
  CHECK_THROWS_AS(dressed_params(p), DiagonalizationError);
}

TEST_CASE("detuned single cavity susceptibility at omega = 0") {
  SystemParams p;
  p.cavity1 = {1.0, 0.0, 2.0, 0.0};
  p.cavity2 = {10.0, 0.0, 1.0, 0.0};
  const Matrix6 x = susceptibility(p, 0.0);

  const Complex expected = -Complex(1.0, 1.0) / std::sqrt(2.0);
  CHECK(std::abs(x.at(Mode::cav1, Mode::cav1) - expected) < 1e-14);
}

TEST_CASE("on-resonance reflection flips the sign of the input") {
  SystemParams p;
  p.cavity1 = {1.3, 0.0, 0.7, 0.0};
  p.cavity2 = {10.0, 0.0, 1.0, 0.0};
  const Matrix6 t = scattering(p, 1.3);

  CHECK(std::abs(t.at(Mode::cav1, Mode::cav1) - Complex(-1.0, 0.0)) < 1e-14);
}

TEST_CASE("zero coupling scatters nothing") {
  SystemParams p;
  p.cavity1 = {1.0, 0.2, 2.0, 0.1};
  p.cavity2 = {1.5, 0.0, 1.0, 0.3};
  const Matrix6 h = build_dynamical_matrix(p);
  const Matrix6 t = scattering(h, Matrix6::zero(), 0.4);
  CHECK(matrix_distance(t, Matrix6::identity()) == 0.0);
}

TEST_CASE("scattering is pseudo-unitary for stable systems") {
  std::mt19937_64 rng(202);
  const Matrix6 z = metric_z();
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const SystemParams p = random_driven_system(rng);
    if (!eigenvalue_stable(build_dynamical_matrix(p)).stable) continue;
    ++checked;
    for (double omega : {-2.3, -0.7, 0.0, 0.9, 2.8}) {
      const Matrix6 t = scattering(p, omega);
      const Matrix6 lhs(t.raw() * z.raw() * t.raw().adjoint());
      CHECK(matrix_distance(lhs, z) < 1e-9);
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("lossless mechanics conserves output-row power") {
  const SystemParams p = matched_converter_lab();
  for (double omega : {0.7, 0.9832784193177011, 1.2}) {
    const Matrix6 t = scattering(p, omega);
    const double row = std::norm(t.at(Mode::cav2, Mode::cav1)) -
                       std::norm(t.at(Mode::cav2, Mode::cav1_dag)) +
                       std::norm(t.at(Mode::cav2, Mode::cav2)) -
                       std::norm(t.at(Mode::cav2, Mode::cav2_dag));
    CHECK(row == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(t.at(Mode::cav2, Mode::mech)) == 0.0);
  }
}

TEST_CASE("dressed parameters round-trip through the lab frame") {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 50; ++trial) {
    const SystemParams p = random_driven_system(rng);
    const DressedParams d = dressed_params(p);
    const SystemParams back = lab_from_dressed(d, p.cavity1.lambda,
                                               p.cavity2.lambda);
    CHECK(back.cavity1.delta ==
          doctest::Approx(p.cavity1.delta).epsilon(1e-12));
    CHECK(back.cavity1.g == doctest::Approx(p.cavity1.g).epsilon(1e-12));
    CHECK(back.cavity2.delta ==
          doctest::Approx(p.cavity2.delta).epsilon(1e-12));
    CHECK(back.cavity2.g == doctest::Approx(p.cavity2.g).epsilon(1e-12));
  }
}

TEST_CASE("singular resolvent is reported") {
  const Matrix6 h;  // zero matrix: omega = 0 makes omega*I - H singular
  Matrix6 k = Matrix6::identity();
  CHECK_THROWS_AS(susceptibility(h, k, 0.0), SingularMatrixError);
}

TEST_CASE("validation rejects malformed parameters") {
  SystemParams p;
  p.cavity1 = {1.0, 0.0, -2.0, 0.1};
  CHECK_THROWS_AS(validate(p), InvalidParameterError);
  p.cavity1 = {1.0, 0.0, 2.0, -0.1};
  CHECK_THROWS_AS(validate(p), InvalidParameterError);
  p.cavity1 = {1.0, 2.0, 2.0, 0.1};
  CHECK_THROWS_AS(validate(p), InvalidParameterError);
  p.cavity1 = {1.0, 0.5, 2.0, 0.1};
  p.omega_m = 0.0;
  CHECK_THROWS_AS(validate(p), InvalidParameterError);
  p.omega_m = 1.0;
  p.gamma = -1e-3;
  CHECK_THROWS_AS(validate(p), InvalidParameterError);
  p.gamma = 0.0;
  CHECK_NOTHROW(validate(p));
}

}  // TEST_SUITE
