#pragma once

#include <functional>

namespace landau {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int panels = 0;
};

/// Globally adaptive Gauss–Kronrod (7/15) integration of f over [a, b] to an
/// absolute error estimate of abs_tol. `b` may be +infinity.
/// Throws QuadratureFailure if the panel budget runs out first.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-10, int max_panels = 4000);

}  // namespace landau
