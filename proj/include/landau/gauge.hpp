#pragma once

#include <iosfwd>
#include <vector>

#include "landau/fields.hpp"
#include "landau/mesh.hpp"

namespace landau {

/// Rotation-invariant gauge for B = B° + b(r) sampled on a radial mesh.
///
/// The scalar potential solves ΔΨ = B with Ψ(0) = 0, so that
///   A_θ(r) = Ψ'(r) = B°r/2 + F(r)/r,   F(r) = ∫₀^r t·b(t) dt,
///   ψ(r)   = ∫₀^r F(t)/t dt = F(r)·ln r − ∫₀^r t·ln t·b(t) dt.
struct GaugeData {
  RadialMesh mesh;
  double B0 = 1.0;
  std::vector<double> B_total;    // B° + b(r_i)
  std::vector<double> A_theta;    // angular vector potential
  std::vector<double> psi;        // perturbation part of the scalar potential
  std::vector<double> Psi_total;  // B°r²/4 + ψ
  std::vector<double> flux;       // F(r_i); the enclosed perturbation flux is 2π·F
  double Psi_wall = 0.0;          // Ψ at the Dirichlet wall r = (n+1)h
};

GaugeData build_gauge(const FieldSpec& b, double B0, const RadialMesh& mesh,
                      double abs_tol = 1e-10);

/// Φ = 2π ∫₀^∞ t·b(t) dt.
double total_flux(const FieldSpec& b, double abs_tol = 1e-10);

/// CSV with columns r, B, A_theta, psi, Psi.
void write_gauge_csv(std::ostream& os, const GaugeData& gauge);

}  // namespace landau
