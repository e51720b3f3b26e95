#include "pdom/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "pdom/errors.hpp"

namespace pdom {

namespace {

// 15-point Kronrod nodes on [0, 1] side; Gauss-7 nodes sit at odd indices
// plus the center.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277,
                           0.381830050505119, 0.417959183673469};

struct Panel {
  double left = 0.0;
  double right = 0.0;
  double value = 0.0;
  double error = 0.0;
};

// Worst error first; ties resolve to the leftmost panel so the refinement
// sequence is reproducible.
struct PanelOrder {
  bool operator()(const Panel& a, const Panel& b) const {
    if (a.error != b.error) return a.error < b.error;
    return a.left > b.left;
  }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a,
                     double b) {
  const double centr = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);

  double fv1[7];
  double fv2[7];
  const double fc = f(centr);

  double resg = kWg[3] * fc;
  double resk = kWgk[7] * fc;
  double resabs = std::abs(resk);

  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    fv1[jtw] = f(centr - hlgth * kXgk[jtw]);
    fv2[jtw] = f(centr + hlgth * kXgk[jtw]);
    const double fsum = fv1[jtw] + fv2[jtw];
    resg += kWg[j] * fsum;
    resk += kWgk[jtw] * fsum;
    resabs += kWgk[jtw] * (std::abs(fv1[jtw]) + std::abs(fv2[jtw]));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtw = 2 * j;
    fv1[jtw] = f(centr - hlgth * kXgk[jtw]);
    fv2[jtw] = f(centr + hlgth * kXgk[jtw]);
    const double fsum = fv1[jtw] + fv2[jtw];
    resk += kWgk[jtw] * fsum;
    resabs += kWgk[jtw] * (std::abs(fv1[jtw]) + std::abs(fv2[jtw]));
  }

  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }

  Panel p;
  p.left = a;
  p.right = b;
  p.value = resk * hlgth;
  resabs *= std::abs(hlgth);
  resasc *= std::abs(hlgth);

  double abserr = std::abs((resk - resg) * hlgth);
  if (resasc != 0.0 && abserr != 0.0) {
    abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
  }
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    abserr = std::max(abserr, 50.0 * eps * resabs);
  }
  p.error = abserr;
  return p;
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    std::vector<double> breakpoints,
                                    const QuadratureOptions& opts) {
  if (!(b > a)) {
    throw QuadratureError("integration domain is empty");
  }

  breakpoints.push_back(a);
  breakpoints.push_back(b);
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()),
                    breakpoints.end());

  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> heap;
  QuadratureResult res;
  double total_value = 0.0;
  double total_error = 0.0;

  auto push_panel = [&](double lo, double hi) {
    Panel p = evaluate_panel(f, lo, hi);
    res.evaluations += 15;
    if (!std::isfinite(p.value) || !std::isfinite(p.error)) {
      std::ostringstream msg;
      msg << "integrand not finite on [" << lo << ", " << hi << "]";
      throw QuadratureError(msg.str());
    }
    total_value += p.value;
    total_error += p.error;
    heap.push(p);
  };

  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i] < a || breakpoints[i + 1] > b) continue;
    push_panel(breakpoints[i], breakpoints[i + 1]);
  }

  const double min_width = 1e-15 * (b - a);
  while (total_error >
         opts.rel_tol * std::max(std::abs(total_value), opts.abs_floor)) {
    if (static_cast<int>(heap.size()) >= opts.max_panels) {
      std::ostringstream msg;
      msg << "panel budget " << opts.max_panels
          << " exhausted; error estimate " << total_error << " exceeds "
          << opts.rel_tol << " * max(|" << total_value << "|, "
          << opts.abs_floor << ")";
      throw QuadratureError(msg.str());
    }
    const Panel worst = heap.top();
    if (worst.error == 0.0) break;
    if (worst.right - worst.left < min_width) {
      std::ostringstream msg;
      msg << "panel at [" << worst.left << ", " << worst.right
          << "] collapsed below resolvable width with error " << worst.error;
      throw QuadratureError(msg.str());
    }
    heap.pop();
    total_value -= worst.value;
    total_error -= worst.error;
    const double mid = 0.5 * (worst.left + worst.right);
    push_panel(worst.left, mid);
    push_panel(mid, worst.right);
  }

  // Deterministic final summation in spatial order.
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.left < y.left; });

  res.value = 0.0;
  res.error_estimate = 0.0;
  for (const Panel& p : panels) {
    res.value += p.value;
    res.error_estimate += p.error;
  }
  res.panels = static_cast<int>(panels.size());
  return res;
}

double inverse_quartic_tail(double f_at_edge, double edge) {
  return f_at_edge * std::abs(edge) / 3.0;
}

}  // namespace pdom
