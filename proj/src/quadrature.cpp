#include "landau/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "landau/errors.hpp"

namespace landau {

namespace {

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk_panel(const std::function<double(double)>& f, double a, double b) {
  double err = 0.0;
  // max_depth 0: a single 15-point Kronrod evaluation with the embedded Gauss estimate.
  const double v =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &err);
  return {a, b, v, err};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, int max_panels) {
  if (b == a) return {};
  if (std::isinf(b)) {
    // r = a + t/(1-t) maps [0, 1) onto [a, inf).
    auto g = [&f, a](double t) {
      if (t >= 1.0) return 0.0;
      const double s = 1.0 - t;
      return f(a + t / s) / (s * s);
    };
    return integrate(g, 0.0, 1.0, abs_tol, max_panels);
  }

  std::priority_queue<Panel> heap;
  Panel first = gk_panel(f, a, b);
  double total = first.value;
  double total_err = first.error;
  heap.push(first);
  int panels = 1;
  while (total_err > abs_tol) {
    if (panels >= max_panels) {
      std::ostringstream msg;
      msg << "adaptive quadrature on [" << a << ", " << b << "] stalled at error estimate "
          << total_err << " (tolerance " << abs_tol << ", " << panels << " panels)";
      throw QuadratureFailure(msg.str());
    }
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw QuadratureFailure("adaptive quadrature: panel width underflow");
    }
    Panel left = gk_panel(f, worst.a, mid);
    Panel right = gk_panel(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
    if (total_err < 0.0) total_err = 0.0;
  }
  // Re-sum to shed the drift of the running update.
  double sum = 0.0, err = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return {sum, err, panels};
}

}  // namespace landau
