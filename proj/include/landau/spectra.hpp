#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "landau/channel.hpp"
#include "landau/fields.hpp"
#include "landau/gauge.hpp"

namespace landau {

struct ChannelEigen {
  int n = 0;                  // radial index within the channel
  double E = 0.0;             // raw eigenvalue
  double offset = 0.0;        // discretization bias of the unperturbed level (m, n)
  double outer_mass = 0.0;    // fraction of the norm in the outer part of the mesh
  RadialFunction vector;      // unit discrete norm
  double E_cal() const { return E - offset; }
};

/// Eigenpairs of one channel with E <= e_max, ascending, via Sturm bisection and
/// inverse iteration. `outer_fraction` sets the width of the boundary layer in
/// which outer_mass is measured. Throws ConvergenceFailure with channel info.
std::vector<ChannelEigen> channel_eigs(const ChannelOperator& op, double e_max,
                                       double outer_fraction = 0.1);
/// Eigenpairs with lo <= E < hi.
std::vector<ChannelEigen> channel_eigs_in(const ChannelOperator& op, double lo, double hi,
                                          double outer_fraction = 0.1);

struct BoundaryPolicy {
  double outer_fraction = 0.1;
  double mass_threshold = 1e-6;
};

struct ChannelSpectrum {
  OperatorKind kind = OperatorKind::pauli_minus;
  int m = 0;
  RadialMesh mesh;
  std::vector<ChannelEigen> eigs;
};

struct SpectrumRow {
  int m = 0;
  int n = 0;
  double E = 0.0;
  double E_cal = 0.0;
  bool boundary = false;
  std::size_t channel = 0;  // index into SpectrumTable::channels
  std::size_t slot = 0;     // index into that channel's eigs
};

/// Merged spectrum of all retained channels, sorted by E_cal.
struct SpectrumTable {
  OperatorKind kind = OperatorKind::pauli_minus;
  RadialMesh mesh;
  BoundaryPolicy policy;
  std::vector<ChannelSpectrum> channels;
  std::vector<SpectrumRow> rows;

  const ChannelEigen& eigen(const SpectrumRow& row) const {
    return channels[row.channel].eigs[row.slot];
  }
  /// Non-boundary eigenvalues (calibrated) strictly inside (lo, hi).
  std::vector<double> energies_in(double lo, double hi) const;
};

/// Throws InconsistentProvenance if channels differ in mesh or kind.
SpectrumTable assemble_spectrum(std::vector<ChannelSpectrum> channels,
                                const BoundaryPolicy& policy = {});

/// Λ_q = 2qB°, shifted by B° for H and 2B° for P_+.
double landau_level(int q, double B0, OperatorKind kind = OperatorKind::pauli_minus);
/// Landau index N = n + (|m| − m)/2 of the unperturbed state (m, n).
int landau_index(int m, int n);
double unperturbed_level(OperatorKind kind, int m, int n, double B0);

struct ClusterWindow {
  int q = 0;
  double level = 0.0;  // Λ_q for the operator kind
  double gamma = 0.5;
  double lambda_minus = 0.0;
  double lambda_plus = 0.0;
};

/// Window around the q-th level with half-width γ (default B°/2) and
/// λ_± = level ± γ, each nudged outward by 1e-9 while it collides with an
/// eigenvalue of the table. Throws ConfigError unless 0 < γ < B°.
ClusterWindow make_window(const SpectrumTable& table, int q, double B0,
                          std::optional<double> gamma = std::nullopt);

struct ClusterState {
  int m = 0;
  int n = 0;
  double shift = 0.0;  // E_cal − level
  const SpectrumRow* row = nullptr;
};

/// Non-boundary eigenvalues in (level − γ, level + γ) as signed shifts, sorted by
/// |shift| descending (ties by m, then n). Empty clusters are legal.
std::vector<ClusterState> cluster_extract(const SpectrumTable& table, const ClusterWindow& window);
std::vector<double> cluster_shifts(const SpectrumTable& table, const ClusterWindow& window);

/// Number of non-boundary eigenvalues strictly inside (mu1, mu2).
int counting_function(const SpectrumTable& table, double mu1, double mu2);

struct SpectrumProblem {
  OperatorKind kind = OperatorKind::pauli_minus;
  double B0 = 1.0;
  FieldSpec b;
  FieldSpec V;
  double R = 20.0;
  double h = 0.005;
  int m_min = 0;
  int m_max = 0;
  double e_max = 10.0;
  /// Subtract the discretization bias of each unperturbed level (computed on
  /// the same mesh with b = V = 0) from the perturbed eigenvalue with the same
  /// label. Ignored when b and V vanish.
  bool calibrate = true;
  BoundaryPolicy policy;

  RadialMesh mesh() const { return RadialMesh::from_radius(R, h); }
  /// Default truncation M = ⌊3R²B°/16⌋.
  static int default_channel_cutoff(double R, double B0);
};

SpectrumTable solve_spectrum(const SpectrumProblem& problem, unsigned threads = 0);

struct DriftEntry {
  int m = 0;
  int n = 0;
  double shift = 0.0;
  double drift = 0.0;
  bool converged = false;  // |shift| > 10·drift
};

struct DriftReport {
  double R = 0.0;
  double R_prime = 0.0;
  double max_drift = 0.0;
  std::vector<DriftEntry> entries;  // ordered as cluster_extract at radius R
  int unconverged = 0;
};

/// Recomputes the q-th cluster at radius R' (same h and channel range) and
/// reports per-state drift of the shifts, matched by (m, n).
DriftReport boundary_sensitivity(const SpectrumProblem& problem, int q, double R_prime,
                                 unsigned threads = 0);
/// Same, reusing an already solved table at radius problem.R.
DriftReport boundary_sensitivity(const SpectrumProblem& problem, const SpectrumTable& table, int q,
                                 double R_prime, unsigned threads = 0);

/// CSV (m, n, E, E_cal, boundary).
void write_spectrum_csv(std::ostream& os, const SpectrumTable& table);

}  // namespace landau
