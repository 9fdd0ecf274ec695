#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include "landau/fields.hpp"
#include "landau/gauge.hpp"
#include "landau/mesh.hpp"
#include "landau/tridiag.hpp"

namespace landau {

enum class OperatorKind { pauli_minus, pauli_plus, schroedinger };

std::string_view to_string(OperatorKind kind);
/// Accepts "pauli_minus"/"PauliMinus", "pauli_plus"/"PauliPlus",
/// "schroedinger"/"Schroedinger". Throws ConfigError otherwise.
OperatorKind parse_operator_kind(std::string_view name);

/// Multiple of B added to P_- by each kind (0, 2, 1).
double field_multiple(OperatorKind kind);

/// Angular-momentum-m block of P_-(V), P_+(V) or H(V) after the substitution
/// w = √r·g, as a symmetric tridiagonal matrix on the interior nodes.
struct ChannelOperator {
  OperatorKind kind = OperatorKind::pauli_minus;
  int m = 0;
  RadialMesh mesh;
  bool includes_V = false;
  SymTridiag matrix;
  std::vector<double> base_diag;  // diagonal without the electric potential
  std::vector<double> potential;  // V(r_i), zero when V is absent
};

/// Discretizes −d²/dr² + (m² − ¼)/r² − 2mA_θ/r + A_θ² + s·B + V with Dirichlet
/// walls at r = 0 and r = (n+1)h.
///
/// For m >= 0 the P_- part is assembled in factorized form (a discrete Q̄Q with
/// the exact zero mode √r·r^m·e^{−Ψ} in its kernel); for m < 0 the effective
/// potential is sampled pointwise. Other kinds add the appropriate multiple of
/// B, so H(V) − P_-(V + b) = B°·I holds entrywise.
ChannelOperator build_channel(OperatorKind kind, int m, const GaugeData& gauge,
                              const FieldSpec* V, const RadialMesh& mesh);

/// Values w(r_i) of a radial factor in channel m.
struct RadialFunction {
  int m = 0;
  RadialMesh mesh;
  std::vector<double> values;

  double norm() const;
  RadialFunction& normalize();
};

/// √r·r^m·e^{−Ψ(r)} with unit discrete norm, built from log-magnitudes.
RadialFunction zero_mode(int m, const GaugeData& gauge, const RadialMesh& mesh);

/// Radial action of the creation operator (channel m → m−1), up to a constant
/// unimodular factor: g ↦ g' + (m/r − A_θ)g with g = w/√r.
RadialFunction ladder_raise(const RadialFunction& w, const GaugeData& gauge);

/// Radial action of the annihilation operator (channel m → m+1):
/// g ↦ g' − (m/r − A_θ)g with g = w/√r.
RadialFunction ladder_lower(const RadialFunction& w, const GaugeData& gauge);

/// Fourth-order finite-difference derivative of samples at r_i = (i+1)h.
std::vector<double> derivative(const std::vector<double>& f, double h);

std::vector<double> apply(const ChannelOperator& op, const RadialFunction& w);
/// Discrete quadratic form ⟨op·w, w⟩ = h·Σ (op w)_i w_i.
double quadratic_form(const ChannelOperator& op, const RadialFunction& w);
double rayleigh_quotient(const ChannelOperator& op, const RadialFunction& w);

/// CSV triples (i, j, value) of the nonzero entries.
void write_matrix_csv(std::ostream& os, const ChannelOperator& op);
/// CSV pairs (r, value).
void write_function_csv(std::ostream& os, const RadialFunction& w);

}  // namespace landau
