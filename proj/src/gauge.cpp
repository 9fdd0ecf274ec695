#include "landau/gauge.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "landau/errors.hpp"
#include "landau/quadrature.hpp"

namespace landau {

GaugeData build_gauge(const FieldSpec& b, double B0, const RadialMesh& mesh, double abs_tol) {
  if (!(B0 > 0.0)) throw ConfigError("constant field B0 must be positive");
  if (mesh.n == 0) throw MeshMismatch("gauge requested on an empty mesh");

  const std::size_t n = mesh.n;
  GaugeData g;
  g.mesh = mesh;
  g.B0 = B0;
  g.B_total.resize(n);
  g.A_theta.resize(n);
  g.psi.resize(n);
  g.Psi_total.resize(n);
  g.flux.resize(n);

  auto flux_density = [&b](double t) { return t * eval_field(b, t); };
  auto log_density = [&b](double t) { return t > 0.0 ? t * std::log(t) * eval_field(b, t) : 0.0; };

  // Cumulative panel sums; each of the n+1 panels gets an equal share of the budget.
  const double panel_tol = abs_tol / static_cast<double>(n + 1);
  double F = 0.0, G = 0.0, r_prev = 0.0;
  auto advance = [&](double r_next) {
    if (!b.is_zero()) {
      F += integrate(flux_density, r_prev, r_next, panel_tol).value;
      G += integrate(log_density, r_prev, r_next, panel_tol).value;
    }
    r_prev = r_next;
  };

  for (std::size_t i = 0; i < n; ++i) {
    const double r = mesh.r(i);
    advance(r);
    g.flux[i] = F;
    g.B_total[i] = B0 + eval_field(b, r);
    g.A_theta[i] = 0.5 * B0 * r + F / r;
    g.psi[i] = F * std::log(r) - G;
    g.Psi_total[i] = 0.25 * B0 * r * r + g.psi[i];
  }
  const double r_wall = static_cast<double>(n + 1) * mesh.h;
  advance(r_wall);
  g.Psi_wall = 0.25 * B0 * r_wall * r_wall + F * std::log(r_wall) - G;
  return g;
}

double total_flux(const FieldSpec& b, double abs_tol) {
  if (b.is_zero()) return 0.0;
  auto density = [&b](double t) { return t * eval_field(b, t); };
  return 2.0 * std::numbers::pi *
         integrate(density, 0.0, std::numeric_limits<double>::infinity(), abs_tol, 20000).value;
}

void write_gauge_csv(std::ostream& os, const GaugeData& gauge) {
  os << "r,B,A_theta,psi,Psi\n";
  os.precision(17);
  for (std::size_t i = 0; i < gauge.mesh.n; ++i) {
    os << gauge.mesh.r(i) << ',' << gauge.B_total[i] << ',' << gauge.A_theta[i] << ','
       << gauge.psi[i] << ',' << gauge.Psi_total[i] << '\n';
  }
}

}  // namespace landau
