// Microbenchmarks for the hot paths: single-frequency scattering solves,
// stability verdicts, the cooling integral and a full converter design.

#include <benchmark/benchmark.h>

#include "pdom/cooling.hpp"
#include "pdom/scenario.hpp"
#include "pdom/squeeze.hpp"
#include "pdom/stability.hpp"
#include "pdom/system.hpp"
#include "pdom/transduction.hpp"

namespace {

using namespace pdom;

SystemParams converter_system() {
  DressedParams d;
  d.delta_tilde1 = 1.0;
  d.g_tilde1 = 0.2850781059358212;
  d.kappa1 = 5.0;
  d.delta_tilde2 = 1.0;
  d.g_tilde2 = 0.1;
  d.kappa2 = 5.0;
  d.omega_m = 1.0;
  d.gamma = 0.0;
  const TransducerDesign design =
      make_transducer_design(d, Matching::modified);
  return transducer_lab_system(d, design);
}

SystemParams cooling_system() {
  const double kappa = 2.0;
  const double delta1 = cooling_detuning(1.0, kappa);
  const Complex lam = optimal_pd_cooling(delta1, 1.0, kappa);
  const SqueezeParams s = bogoliubov_from_drive(delta1, lam);
  SystemParams p;
  p.omega_m = 1.0;
  p.gamma = 1e-4;
  p.cavity1 = {delta1, lam, kappa,
               coupling_for_cooperativity(50.0, kappa, 1e-4) / std::abs(s.mu)};
  p.cavity2 = {1.0, 0.0, 1.0, 0.0};
  return p;
}

void bm_scattering(benchmark::State& state) {
  const SystemParams p = converter_system();
  const Matrix6 h = build_dynamical_matrix(p);
  const Matrix6 k = build_coupling_matrix(p);
  double w = 0.93;
  for (auto _ : state) {
    benchmark::DoNotOptimize(scattering(h, k, w));
    w += 1e-7;  // defeat caching without changing the cost profile
  }
}
BENCHMARK(bm_scattering);

void bm_eigen_stability(benchmark::State& state) {
  const Matrix6 h = build_dynamical_matrix(converter_system());
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigenvalue_stable(h));
  }
}
BENCHMARK(bm_eigen_stability);

void bm_routh_stability(benchmark::State& state) {
  const Matrix6 h = build_dynamical_matrix(converter_system());
  for (auto _ : state) {
    benchmark::DoNotOptimize(routh_hurwitz_stable(h));
  }
}
BENCHMARK(bm_routh_stability);

void bm_backaction_occupancy(benchmark::State& state) {
  const SystemParams p = cooling_system();
  for (auto _ : state) {
    benchmark::DoNotOptimize(backaction_occupancy(p).n_ba);
  }
}
BENCHMARK(bm_backaction_occupancy);

void bm_transducer_design(benchmark::State& state) {
  DressedParams d;
  d.delta_tilde1 = 1.0;
  d.g_tilde1 = 0.2850781059358212;
  d.kappa1 = 5.0;
  d.delta_tilde2 = 1.0;
  d.g_tilde2 = 0.1;
  d.kappa2 = 5.0;
  d.omega_m = 1.0;
  d.gamma = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(make_transducer_design(d, Matching::modified));
  }
}
BENCHMARK(bm_transducer_design);

void bm_added_noise(benchmark::State& state) {
  const SystemParams p = converter_system();
  const Matrix6 t = scattering(p, 0.9832784193177011);
  const BathSpec bath = BathSpec::squeezed(1.1512925464970228, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(added_noise(t, bath));
  }
}
BENCHMARK(bm_added_noise);

}  // namespace

BENCHMARK_MAIN();
