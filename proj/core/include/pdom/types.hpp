#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pdom {

using Complex = std::complex<double>;

// Basis order for all 6x6 frequency-domain matrices. Annihilation and
// creation operators interleave: (a1, a1+, am, am+, a2, a2+).
enum class Mode : int {
  cav1 = 0,
  cav1_dag = 1,
  mech = 2,
  mech_dag = 3,
  cav2 = 4,
  cav2_dag = 5,
};

constexpr int index(Mode m) { return static_cast<int>(m); }

constexpr Mode dagger(Mode m) {
  const int i = index(m);
  return static_cast<Mode>(i % 2 == 0 ? i + 1 : i - 1);
}

constexpr bool is_creation(Mode m) { return index(m) % 2 == 1; }

// Thin wrapper over a fixed-size complex matrix. Public call sites address
// entries by Mode, never by raw integer; raw() is for numerics internals.
class Matrix6 {
 public:
  using Storage = Eigen::Matrix<Complex, 6, 6>;

  Matrix6() : m_(Storage::Zero()) {}
  explicit Matrix6(Storage m) : m_(std::move(m)) {}

  static Matrix6 zero() { return Matrix6(); }
  static Matrix6 identity() { return Matrix6(Storage::Identity()); }

  Complex& at(Mode row, Mode col) { return m_(index(row), index(col)); }
  const Complex& at(Mode row, Mode col) const {
    return m_(index(row), index(col));
  }

  Storage& raw() { return m_; }
  const Storage& raw() const { return m_; }

 private:
  Storage m_;
};

// A sampled curve. omegas must be strictly increasing.
struct Spectrum {
  std::vector<double> omegas;
  std::vector<double> values;
  std::string label;
};

// One driven cavity mode in the lab frame. lambda is the parametric-drive
// amplitude; its phase is physical (theta = arg(lambda / delta)).
struct CavityParams {
  double delta = 0.0;
  Complex lambda = 0.0;
  double kappa = 1.0;
  double g = 0.0;
};

struct SystemParams {
  CavityParams cavity1;
  CavityParams cavity2;
  double omega_m = 1.0;
  double gamma = 0.0;
};

// Parameters after diagonalizing the intracavity drives away. Both
// delta_tilde values are positive by construction.
struct DressedParams {
  double delta_tilde1 = 1.0;
  double g_tilde1 = 0.0;
  double kappa1 = 1.0;
  double delta_tilde2 = 1.0;
  double g_tilde2 = 0.0;
  double kappa2 = 1.0;
  double omega_m = 1.0;
  double gamma = 0.0;
};

// Bogoliubov transform data for one cavity: exp(i*theta)*tanh(2r) = lambda/delta,
// mu = cosh(r) - exp(i*theta)*sinh(r), and exp(i*phi) = |mu|/mu so that the
// dressed coupling |mu|*g is real.
struct SqueezeParams {
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  Complex mu = 1.0;
};

struct StabilityReport {
  bool stable = false;
  double max_eigen_real = 0.0;
  bool rh_verdict = false;
  // Distance to the single-cavity instability threshold in coupling units;
  // NaN when no closed-form threshold applies.
  double threshold_margin = 0.0;
  // Set when |max_eigen_real| is below the decision band. Marginal systems
  // report stable == false.
  bool marginal = false;
};

enum class BathKind { vacuum, broadband_squeezed };

struct BathSpec {
  BathKind kind = BathKind::vacuum;
  double s = 0.0;
  double vartheta = 0.0;

  static BathSpec vacuum() { return {}; }
  static BathSpec squeezed(double s, double vartheta) {
    return {BathKind::broadband_squeezed, s, vartheta};
  }
};

enum class Matching { standard, modified };

// Operating point of a two-cavity converter: per-cavity conversion rates,
// the tuned readout frequency, and the cavity-1 drive that nulls the
// conjugate output there.
struct TransducerDesign {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double omega0 = 0.0;
  SqueezeParams squeeze1;
  Matching matched = Matching::standard;
};

struct NoiseBudget {
  Spectrum eta;
  Spectrum conj_ratio;
  Spectrum added_noise;
  Spectrum lower_bound;
};

struct CoolingResult {
  double n_ba = 0.0;
  double qba_limit = 0.0;
  // Backaction spectrum sampled around the mechanical resonance.
  Spectrum spectrum;
  SystemParams params_used;
};

struct InjectedSqueezingParams {
  double r_b = 0.0;
  double theta_b = 0.0;
};

}  // namespace pdom
