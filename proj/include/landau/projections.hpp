#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <memory>
#include <vector>

#include "landau/channel.hpp"
#include "landau/fields.hpp"
#include "landau/gauge.hpp"
#include "landau/spectra.hpp"

namespace landau {

/// Normalized zero modes for channels m = 0..M0 of a fixed gauge.
struct ZeroModeBasis {
  std::shared_ptr<const GaugeData> gauge;
  std::vector<RadialFunction> modes;

  std::size_t size() const { return modes.size(); }
  int max_channel() const { return static_cast<int>(modes.size()) - 1; }
  /// Discrete Gram matrix; distinct channels are orthogonal by construction.
  Eigen::MatrixXd gram() const;
};

ZeroModeBasis make_zero_mode_basis(std::shared_ptr<const GaugeData> gauge, int M0);

struct ResidualMatrix {
  Eigen::MatrixXd values;
  double max_entry() const;
  double frobenius() const;
};

/// Repeated ladder_raise.
RadialFunction raise_power(const RadialFunction& u, const GaugeData& gauge, int q);
RadialFunction lower_power(const RadialFunction& u, const GaugeData& gauge, int q);

/// G_ij = ⟨Q̄^q u_i, Q̄^q u_j⟩ − C_q δ_ij − C'_q B°^{q−1} ⟨b u_i, u_j⟩.
ResidualMatrix gram_identity_residual(int q, const ZeroModeBasis& basis, const FieldSpec& b,
                                      double B0);

/// ⟨U Q̄^q u_i, Q̄^q u_j⟩ − C_q ⟨U u_i, u_j⟩. At q = 1 the subtracted
/// coefficient is C'_1·B° = C_1 = 2B°.
ResidualMatrix weighted_identity_residual(int q, const ZeroModeBasis& basis, const FieldSpec& U,
                                          const FieldSpec& b, double B0);

struct ToeplitzMatrix {
  int q = 0;
  Eigen::MatrixXd T;
  std::vector<int> channels;  // channel label of each basis vector
  std::vector<int> source;    // zero-mode channel (T_0 form) or radial index (T_q form)

  /// Eigenvalues, descending.
  std::vector<double> eigenvalues() const;
  std::vector<double> positive_eigenvalues() const;
  bool is_symmetric(double rel_tol = 1e-12) const;
};

/// Bias of the unperturbed q-th level in channel m on `mesh`: the lowest
/// level-q eigenvalue of the b = V = 0 channel operator minus Λ_q.
double level_offset(int q, int m, double B0, const RadialMesh& mesh);

/// Quadratic form of the zero-mode model of the q-th cluster:
///   t_ij = ⟨(P_- − Λ_q − δ_q + V) Q̄^q u_i, Q̄^q u_j⟩
/// with P_- the channel operator without V on the basis' gauge and δ_q the
/// level bias of the target channel (omitted when calibrate is false or q = 0).
ToeplitzMatrix build_T0(int q, const FieldSpec& V, const FieldSpec& b, const ZeroModeBasis& basis,
                        bool calibrate = true);

/// Same form evaluated through the identity
///   ⟨(P_- − Λ_q + V)w, w⟩ = ‖Q̄w‖² − Λ_{q+1}‖w‖² + ⟨(V − 2b)w, w⟩,  w = Q̄^q u.
ToeplitzMatrix build_T0_ladder(int q, const FieldSpec& V, const FieldSpec& b,
                               const ZeroModeBasis& basis);

struct SqAction {
  Eigen::MatrixXd S;          // ⟨𝔖_q v_i, v_j⟩
  std::vector<double> lost;   // 1 − ‖P_0 Q^q v_i‖²/‖Q^q v_i‖²
  double trace() const { return S.trace(); }
};

/// 𝔖_q = C_q⁻¹ Q̄^q P_0 Q^q on the given cluster states. Throws BasisTooSmall
/// when the zero-mode projection loses more than `max_loss` of a state's norm.
SqAction build_Sq_action(int q, const std::vector<RadialFunction>& cluster_states,
                         const ZeroModeBasis& zero_basis, const GaugeData& gauge,
                         double max_loss = 0.01);

/// Cluster eigenvectors (non-boundary) of a table, ordered as cluster_extract.
std::vector<const ChannelEigen*> cluster_eigens(const SpectrumTable& table,
                                                const ClusterWindow& window);

/// T_q(V) = P_q(P_- − Λ_q + V)P_q on the cluster eigenvectors, with P_- built
/// on `gauge` without V and the level bias of each state removed.
ToeplitzMatrix build_Tq(int q, const FieldSpec& V, const SpectrumTable& table,
                        const ClusterWindow& window, const GaugeData& gauge);

struct OffDiagReport {
  std::vector<double> singular_values;  // of (1 − P_q) V P_q, descending
  double largest = 0.0;
  std::vector<double> amplitudes;
  std::vector<double> largest_by_amplitude;
};

/// Singular values of (1 − P_q) V P_q on the truncated space spanned by the mesh
/// in each retained channel, plus the largest singular value when V is scaled
/// by each entry of `amplitudes`.
OffDiagReport offdiag_smallness(int q, const FieldSpec& V, const SpectrumTable& table,
                                const ClusterWindow& window,
                                const std::vector<double>& amplitudes = {});

/// CSV triples (i, j, value).
void write_toeplitz_csv(std::ostream& os, const ToeplitzMatrix& t);

}  // namespace landau
