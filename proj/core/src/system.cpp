#include "pdom/system.hpp"

#include <cmath>
#include <sstream>

#include "pdom/errors.hpp"
#include "pdom/squeeze.hpp"

namespace pdom {

namespace {

constexpr Complex kI{0.0, 1.0};

void validate_cavity(const CavityParams& c, const char* name) {
  std::ostringstream msg;
  if (!(c.kappa > 0.0)) {
    msg << name << ": kappa must be positive, got " << c.kappa;
    throw InvalidParameterError(msg.str());
  }
  if (c.g < 0.0) {
    msg << name << ": g must be non-negative, got " << c.g;
    throw InvalidParameterError(msg.str());
  }
  if (std::abs(c.lambda) != 0.0 && std::abs(c.lambda) >= std::abs(c.delta)) {
    msg << name << ": |lambda| = " << std::abs(c.lambda)
        << " must stay below |delta| = " << std::abs(c.delta);
    throw InvalidParameterError(msg.str());
  }
}

}  // namespace

void validate(const SystemParams& p) {
  validate_cavity(p.cavity1, "cavity1");
  validate_cavity(p.cavity2, "cavity2");
  if (!(p.omega_m > 0.0)) {
    throw InvalidParameterError("omega_m must be positive");
  }
  if (p.gamma < 0.0) {
    throw InvalidParameterError("gamma must be non-negative");
  }
}

Matrix6 build_dynamical_matrix(const SystemParams& p) {
  Matrix6 h;
  auto& m = h.raw();

  const CavityParams& c1 = p.cavity1;
  const CavityParams& c2 = p.cavity2;

  m(0, 0) = Complex(c1.delta, -c1.kappa / 2.0);
  m(0, 1) = c1.lambda;
  m(0, 2) = c1.g;
  m(0, 3) = c1.g;

  m(2, 0) = c1.g;
  m(2, 1) = c1.g;
  m(2, 2) = Complex(p.omega_m, -p.gamma / 2.0);
  m(2, 4) = c2.g;
  m(2, 5) = c2.g;

  m(4, 2) = c2.g;
  m(4, 3) = c2.g;
  m(4, 4) = Complex(c2.delta, -c2.kappa / 2.0);
  m(4, 5) = c2.lambda;

  // Creation rows mirror annihilation rows: H[i+][j+] = -conj(H[i][j]).
  for (int i = 0; i < 6; i += 2) {
    for (int j = 0; j < 6; ++j) {
      const int jp = (j % 2 == 0) ? j + 1 : j - 1;
      m(i + 1, jp) = -std::conj(m(i, j));
    }
  }
  return h;
}

Matrix6 build_coupling_matrix(const SystemParams& p) {
  Matrix6 k;
  auto& m = k.raw();
  const double rk1 = std::sqrt(p.cavity1.kappa);
  const double rg = std::sqrt(p.gamma);
  const double rk2 = std::sqrt(p.cavity2.kappa);
  m(0, 0) = -kI * rk1;
  m(1, 1) = kI * rk1;
  m(2, 2) = -kI * rg;
  m(3, 3) = kI * rg;
  m(4, 4) = -kI * rk2;
  m(5, 5) = kI * rk2;
  return k;
}

DressedParams dressed_params(const SystemParams& p) {
  const SqueezeParams s1 = bogoliubov_from_drive(p.cavity1.delta, p.cavity1.lambda);
  const SqueezeParams s2 = bogoliubov_from_drive(p.cavity2.delta, p.cavity2.lambda);

  DressedParams d;
  d.delta_tilde1 = std::sqrt(p.cavity1.delta * p.cavity1.delta -
                             std::norm(p.cavity1.lambda));
  d.delta_tilde2 = std::sqrt(p.cavity2.delta * p.cavity2.delta -
                             std::norm(p.cavity2.lambda));
  d.g_tilde1 = std::abs(s1.mu) * p.cavity1.g;
  d.g_tilde2 = std::abs(s2.mu) * p.cavity2.g;
  d.kappa1 = p.cavity1.kappa;
  d.kappa2 = p.cavity2.kappa;
  d.omega_m = p.omega_m;
  d.gamma = p.gamma;
  return d;
}

SystemParams to_system(const DressedParams& d) {
  SystemParams p;
  p.cavity1 = {d.delta_tilde1, 0.0, d.kappa1, d.g_tilde1};
  p.cavity2 = {d.delta_tilde2, 0.0, d.kappa2, d.g_tilde2};
  p.omega_m = d.omega_m;
  p.gamma = d.gamma;
  return p;
}

Matrix6 build_dressed_matrix(const DressedParams& d) {
  return build_dynamical_matrix(to_system(d));
}

Matrix6 susceptibility(const Matrix6& h, const Matrix6& k, double omega) {
  Matrix6::Storage a =
      Matrix6::Storage::Identity() * Complex(omega, 0.0) - h.raw();

  Eigen::PartialPivLU<Matrix6::Storage> lu(a);
  const auto diag = lu.matrixLU().diagonal();
  double dmin = std::abs(diag(0));
  double dmax = dmin;
  for (int i = 1; i < 6; ++i) {
    const double v = std::abs(diag(i));
    dmin = std::min(dmin, v);
    dmax = std::max(dmax, v);
  }
  if (!(dmin > 1e-13 * std::max(1.0, dmax))) {
    std::ostringstream msg;
    msg << "omega*I - H is singular at omega = " << omega;
    throw SingularMatrixError(msg.str());
  }

  Matrix6 x(kI * lu.solve(k.raw()));
  if (!x.raw().allFinite()) {
    std::ostringstream msg;
    msg << "susceptibility overflow at omega = " << omega;
    throw SingularMatrixError(msg.str());
  }
  return x;
}

Matrix6 susceptibility(const SystemParams& p, double omega) {
  return susceptibility(build_dynamical_matrix(p), build_coupling_matrix(p),
                        omega);
}

Matrix6 scattering(const Matrix6& h, const Matrix6& k, double omega) {
  const Matrix6 x = susceptibility(h, k, omega);
  return Matrix6(Matrix6::Storage::Identity() + k.raw() * x.raw());
}

Matrix6 scattering(const SystemParams& p, double omega) {
  return scattering(build_dynamical_matrix(p), build_coupling_matrix(p),
                    omega);
}

}  // namespace pdom
