#include "pdom/stability.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>

#include "pdom/errors.hpp"
#include "pdom/system.hpp"

namespace pdom {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kDecisionBand = 1e-12;

using Poly = std::array<Complex, 7>;

Poly poly_mul(const Poly& a, int deg_a, const Poly& b, int deg_b) {
  Poly out{};
  for (int i = 0; i <= deg_a; ++i) {
    for (int j = 0; j <= deg_b; ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

// det over the polynomial ring of the submatrix formed by rows
// [row, 5] and the active columns; entries are degree <= 1 in s.
Poly poly_det(const std::array<std::array<Poly, 6>, 6>& m, int row,
              std::vector<int>& cols) {
  if (cols.size() == 1) {
    return m[row][cols[0]];
  }
  Poly acc{};
  const int n = static_cast<int>(cols.size());
  for (int k = 0; k < n; ++k) {
    const int col = cols[k];
    cols.erase(cols.begin() + k);
    const Poly minor_det = poly_det(m, row + 1, cols);
    cols.insert(cols.begin() + k, col);

    Poly term = poly_mul(m[row][col], 1, minor_det, 5);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    for (int i = 0; i < 7; ++i) acc[i] += sign * term[i];
  }
  return acc;
}

}  // namespace

double max_drift_eigenvalue_real(const Matrix6& h) {
  const Matrix6::Storage drift = -kI * h.raw();
  Eigen::ComplexEigenSolver<Matrix6::Storage> solver(drift, false);
  double max_re = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 6; ++i) {
    max_re = std::max(max_re, solver.eigenvalues()(i).real());
  }
  return max_re;
}

StabilityReport eigenvalue_stable(const Matrix6& h) {
  StabilityReport rep;
  rep.max_eigen_real = max_drift_eigenvalue_real(h);
  rep.marginal = std::abs(rep.max_eigen_real) < kDecisionBand;
  rep.stable = rep.max_eigen_real < -kDecisionBand;
  rep.threshold_margin = std::numeric_limits<double>::quiet_NaN();
  try {
    rep.rh_verdict = routh_hurwitz_stable(h);
  } catch (const DegenerateRouthError&) {
    // Pivot collapse means a root sits on the imaginary axis to working
    // precision; mirror the eigenvalue verdict in the report.
    rep.rh_verdict = rep.stable;
  }
  return rep;
}

std::array<Complex, 7> drift_charpoly(const Matrix6& h) {
  const Matrix6::Storage drift = -kI * h.raw();

  std::array<std::array<Poly, 6>, 6> entries{};
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      entries[i][j][0] = drift(i, j);
      if (i == j) entries[i][j][1] = Complex(-1.0, 0.0);
    }
  }
  std::vector<int> cols{0, 1, 2, 3, 4, 5};
  return poly_det(entries, 0, cols);
}

bool routh_hurwitz_stable(const Matrix6& h) {
  const auto c = drift_charpoly(h);

  double scale = 0.0;
  double max_im = 0.0;
  for (const Complex& v : c) {
    scale = std::max(scale, std::abs(v));
    max_im = std::max(max_im, std::abs(v.imag()));
  }
  if (scale == 0.0 || max_im > 1e-9 * scale) {
    // Conjugate-pair symmetry should force real coefficients; if it does
    // not hold numerically, defer to the eigenvalue test.
    return max_drift_eigenvalue_real(h) < -kDecisionBand;
  }

  // Descending real coefficients a[0] s^6 + ... + a[6]; a[0] = 1.
  std::array<double, 7> a{};
  for (int k = 0; k <= 6; ++k) a[k] = c[6 - k].real();

  // Two working rows of the Routh array, 4 columns each.
  std::array<double, 4> prev{a[0], a[2], a[4], a[6]};
  std::array<double, 4> curr{a[1], a[3], a[5], 0.0};

  if (prev[0] <= 0.0) return false;
  std::vector<double> first_column{prev[0], curr[0]};

  for (int row = 2; row <= 6; ++row) {
    if (std::abs(curr[0]) <= 1e-12 * scale) {
      std::ostringstream msg;
      msg << "Routh pivot " << curr[0] << " vanishes at row " << row - 1
          << " (scale " << scale << ")";
      throw DegenerateRouthError(msg.str());
    }
    std::array<double, 4> next{};
    for (int i = 0; i < 3; ++i) {
      next[i] = (curr[0] * prev[i + 1] - prev[0] * curr[i + 1]) / curr[0];
    }
    prev = curr;
    curr = next;
    first_column.push_back(curr[0]);
  }

  for (double v : first_column) {
    if (!(v > 0.0)) return false;
  }
  return true;
}

double cooling_instability_threshold(const DressedParams& d) {
  if (d.g_tilde2 != 0.0) {
    throw InvalidParameterError(
        "closed-form threshold applies to a single driven cavity "
        "(g_tilde2 must be 0)");
  }
  const double dt = d.delta_tilde1;
  const double om = d.omega_m;
  return std::sqrt((dt * dt + d.kappa1 * d.kappa1 / 4.0) *
                   (om * om + d.gamma * d.gamma / 4.0) / (4.0 * dt * om));
}

StabilityReport analyze_stability(const DressedParams& d) {
  StabilityReport rep = eigenvalue_stable(build_dressed_matrix(d));
  if (d.g_tilde2 == 0.0) {
    rep.threshold_margin = cooling_instability_threshold(d) - d.g_tilde1;
  }
  return rep;
}

bool transducer_instability_sufficient(const DressedParams& d,
                                       bool second_term_uses_kappa1) {
  const double k2 = second_term_uses_kappa1 ? d.kappa1 : d.kappa2;
  const double lhs =
      d.g_tilde1 * d.g_tilde1 * d.delta_tilde1 /
          (d.delta_tilde1 * d.delta_tilde1 + d.kappa1 * d.kappa1 / 4.0) +
      d.g_tilde2 * d.g_tilde2 * d.delta_tilde2 /
          (d.delta_tilde2 * d.delta_tilde2 + k2 * k2 / 4.0);
  const double rhs =
      (d.omega_m * d.omega_m + d.gamma * d.gamma / 4.0) / (4.0 * d.omega_m);
  return lhs > rhs;
}

double perturbative_mech_eigenvalue(const DressedParams& d) {
  const auto shift = [&](double g, double k, double dt) {
    const double om = d.omega_m;
    const double minus = (dt - om) * (dt - om) + k * k / 4.0;
    const double plus = (dt + om) * (dt + om) + k * k / 4.0;
    return 2.0 * g * g * k * dt * om / (minus * plus);
  };
  return -d.gamma / 2.0 - shift(d.g_tilde1, d.kappa1, d.delta_tilde1) -
         shift(d.g_tilde2, d.kappa2, d.delta_tilde2);
}

}  // namespace pdom
