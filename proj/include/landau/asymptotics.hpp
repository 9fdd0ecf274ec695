#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "landau/fields.hpp"
#include "landau/spectra.hpp"
#include "landau/weights.hpp"

namespace landau {

struct VerificationConfig {
  double B0 = 1.0;
  FieldSpec b;
  FieldSpec V;
  int q = 1;
  Sign sign = Sign::plus;
  double R = 30.0;
  double h = 0.005;
  int M = -1;                     // channel cutoff; negative selects ⌊3R²B°/16⌋
  std::optional<double> gamma;    // cluster half-width, default B°/2
  int per_decade = 24;            // λ grid density
  std::optional<double> lambda_min;
  std::optional<double> lambda_max;
  double ratio_lo = 0.8;
  double ratio_hi = 1.2;
  double min_decades = 1.0;       // required span of the trust region
  int min_count_at_floor = 20;    // required N at the smallest trusted λ
  int min_count = 10;             // trust-region floor on N
  double drift_factor = 10.0;     // shifts must exceed this multiple of their drift
  double R_prime_factor = 1.25;   // boundary-sensitivity radius R' = factor·R
  bool calibrate = true;
  unsigned threads = 0;

  int channel_cutoff() const;
  /// Throws ConfigError on β ≥ −2, q < 0, γ ∉ (0, B°) or a bad mesh.
  void validate() const;
};

struct CountingRow {
  double lambda = 0.0;
  int N = 0;
  double E_measure = 0.0;
  double ratio = 0.0;   // N/E, NaN where E = 0
  double radius = 0.0;  // outer radius of the superlevel set
  bool radius_ok = false;
  bool count_ok = false;
  bool drift_ok = false;
  bool trusted = false;
};

struct CountingReport {
  int q = 0;
  Sign sign = Sign::plus;
  OperatorKind kind = OperatorKind::pauli_minus;
  double level = 0.0;
  std::vector<CountingRow> rows;  // ascending λ

  // Trust region summary (longest contiguous run of trusted rows).
  bool trust_empty = true;
  std::string limiting_constraint;
  double trust_lo = 0.0;
  double trust_hi = 0.0;
  double decades = 0.0;
  int N_at_floor = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double fitted_exponent = 0.0;
  double target_exponent = 0.0;
  double max_drift = 0.0;
  bool pass = false;
  std::vector<std::string> failures;
};

/// Operator-family reduction: H(V) = P_-(V + b) + B°, P_+(V) = P_-(V + 2b) + 2B°.
struct FamilyReduction {
  FieldSpec V;         // potential for the equivalent P_- problem
  double shift = 0.0;  // spectral shift added back
};
FamilyReduction family_reduction(OperatorKind kind, const FieldSpec& V, const FieldSpec& b, double B0);

/// Counting-function sweep for the q-th cluster of `kind` against E_±(λ, V + 2qb)
/// (with V replaced through family_reduction for H and P_+). Never throws
/// TrustRegionEmpty; see assert_trust_region.
CountingReport cluster_asymptotics_report(const VerificationConfig& cfg,
                                          OperatorKind kind = OperatorKind::pauli_minus);

/// Throws TrustRegionEmpty naming the limiting constraint.
void assert_trust_region(const CountingReport& report);

struct UpperEstimate {
  bool skipped = false;  // empty cluster, nothing to fit
  std::string note;
  double fitted_exponent = 0.0;
  double target_exponent = 0.0;
  bool pass = false;
};

/// Least-squares slope of log N against log λ over the trust region compared
/// with 2/β (tolerance ±tol). Throws TrustRegionEmpty.
UpperEstimate upper_estimate_check(const CountingReport& report, double tol = 0.1);
UpperEstimate upper_estimate_check(const VerificationConfig& cfg, double tol = 0.1);

/// Number of eigenvalues of L strictly inside (mu1, mu2).
int eigen_count(const Eigen::MatrixXd& L, double mu1, double mu2);
/// Number of singular values of L strictly greater than tau.
int singular_count(const Eigen::MatrixXd& L, double tau);

struct InequalitySides {
  int lhs = 0;
  int rhs = 0;
  bool holds() const { return lhs <= rhs; }
};

/// N(μ₁, μ₂; L0 + L1) versus N(μ₁ − τ₁, μ₂ + τ₂; L0) + n(τ₁; L1) + n(τ₂; L1).
InequalitySides perturbation_inequality_sides(const Eigen::MatrixXd& L0, const Eigen::MatrixXd& L1,
                                              double mu1, double mu2, double tau1, double tau2);
bool perturbation_inequality_check(const Eigen::MatrixXd& L0, const Eigen::MatrixXd& L1, double mu1,
                                   double mu2, double tau1, double tau2);

}  // namespace landau
