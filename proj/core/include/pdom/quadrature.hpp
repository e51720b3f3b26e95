#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace pdom {

struct QuadratureOptions {
  // Accept when error <= rel_tol * max(|integral|, abs_floor).
  double rel_tol = 1e-6;
  double abs_floor = 1e-6;
  int max_panels = 8000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
  std::size_t evaluations = 0;
};

// Adaptive Gauss-Kronrod 15 over [a, b]. Interior breakpoints seed the
// initial panel set; refinement always bisects the panel with the largest
// error estimate (ties broken by left endpoint) so results are independent
// of evaluation order. The final sum runs over panels sorted by left
// endpoint. Throws QuadratureError when max_panels is exhausted before the
// tolerance is met.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    std::vector<double> breakpoints,
                                    const QuadratureOptions& opts = {});

// Closed tail of an integrand decaying like C / omega^4 past |edge|:
// integral from edge to +-infinity equals f(edge) * |edge| / 3.
double inverse_quartic_tail(double f_at_edge, double edge);

}  // namespace pdom
