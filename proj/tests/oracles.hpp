#pragma once

// Independent reference computations used only by the tests.

#include <Eigen/Dense>
#include <boost/math/special_functions/laguerre.hpp>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "landau/fields.hpp"
#include "landau/mesh.hpp"
#include "landau/tridiag.hpp"
#include "landau/weights.hpp"

namespace oracle {

/// Dense symmetric eigenvalues, ascending.
inline std::vector<double> dense_eigenvalues(const landau::SymTridiag& T) {
  const auto n = static_cast<Eigen::Index>(T.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    A(i, i) = T.diag[i];
    if (i + 1 < n) A(i, i + 1) = A(i + 1, i) = T.off[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + n};
}

/// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

/// E_±(λ, W) by cell counting in s = r²: a log-spaced grid of cells, each
/// classified by the indicator at its ends and midpoint; mixed cells are
/// subdivided until their width is below 1e-12·s.
inline double brute_force_measure(const landau::EffectiveWeight& W, double lambda,
                                  landau::Sign sign, double s_max = 1e6) {
  const double sg = landau::sign_value(sign);
  auto inside = [&](double s) { return sg * W(std::sqrt(s)) > lambda; };
  std::function<double(double, double)> cell = [&](double a, double b) -> double {
    const bool ia = inside(a), ib = inside(b), im = inside(0.5 * (a + b));
    if (ia == ib && ib == im) return ia ? b - a : 0.0;
    if (b - a < 1e-12 * std::max(b, 1e-300)) return im ? b - a : 0.0;
    const double mid = 0.5 * (a + b);
    return cell(a, mid) + cell(mid, b);
  };
  double area = cell(0.0, 1e-6);
  for (double s = 1e-6; s < s_max; s *= 1.001) area += cell(s, std::min(s * 1.001, s_max));
  return 0.5 * W.B0 * area;
}

/// Unperturbed Landau state in channel k with radial index n (B° arbitrary),
/// as w(r) = √r·g(r) normalized in L²(0, ∞; dr).
inline double landau_state(int k, int n, double B0, double r) {
  const unsigned a = static_cast<unsigned>(std::abs(k));
  const double x = 0.5 * B0 * r * r;
  // ∫ r^{2a+1} L_n^a(x)² e^{−x} dr = (2/B°)^a/B° · Γ(n+a+1)/n!
  const double norm2 = std::exp(std::lgamma(n + a + 1.0) - std::lgamma(n + 1.0)) /
                       (std::pow(0.5 * B0, static_cast<double>(a)) * B0);
  const double g = std::pow(r, static_cast<double>(a)) * boost::math::laguerre(static_cast<unsigned>(n), a, x) *
                   std::exp(-0.5 * x);
  return std::sqrt(r) * g / std::sqrt(norm2);
}

/// Random symmetric matrix with spectrum in [-spread, spread].
inline Eigen::MatrixXd random_symmetric(int n, double spread, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-spread, spread);
  Eigen::MatrixXd Q = Eigen::MatrixXd::NullaryExpr(n, n, [&] { return u(rng); });
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Q);
  Eigen::MatrixXd O = qr.householderQ();
  Eigen::VectorXd d = Eigen::VectorXd::NullaryExpr(n, [&] { return u(rng); });
  return O * d.asDiagonal() * O.transpose();
}

}  // namespace oracle
