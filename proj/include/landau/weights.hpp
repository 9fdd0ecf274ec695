#pragma once

#include <span>
#include <utility>
#include <vector>

#include "landau/fields.hpp"

namespace landau {

enum class Sign { plus, minus };

inline double sign_value(Sign s) { return s == Sign::plus ? 1.0 : -1.0; }
inline Sign opposite(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }

/// C_q = q!(2B°)^q
double landau_constant(int q, double B0);
/// C'_q = 2^q q! q, the coefficient of the leading b-linear term of ‖Q̄^q u‖².
double landau_constant_prime(int q);

/// Radial profile r ↦ factor·(V(r) + 2q·b(r)).
struct EffectiveWeight {
  int q = 0;
  double B0 = 1.0;
  bool scaled = false;
  double factor = 1.0;  // C_q when scaled, times any extra multiplier
  FieldSpec V;
  FieldSpec b;

  double operator()(double r) const;

  /// Decay exponent of the profile (the slower of V and b, b ignored at q = 0).
  double decay_beta() const;

  EffectiveWeight times(double c) const;
};

EffectiveWeight effective_weight(const FieldSpec& V, const FieldSpec& b, int q, double B0,
                                 bool scaled);

/// Radial intervals [r_in, r_out] on which ±W(r) > λ.
struct SuperlevelSet {
  std::vector<std::pair<double, double>> intervals;
  double outer_radius() const { return intervals.empty() ? 0.0 : intervals.back().second; }
};

inline constexpr double kDefaultReach = 1.0e4;

/// Locates {r : ±W(r) > λ} by sampling and bisection (roots to 1e-12 in r).
/// Throws UnboundedSet if the set is not contained in [0, reach).
SuperlevelSet superlevel_set(const EffectiveWeight& W, double lambda, Sign sign,
                             double reach = kDefaultReach);

/// E_±(λ, W) = (2π)⁻¹ B° meas{x ∈ ℝ² : ±W(|x|) > λ}.
double counting_measure(const EffectiveWeight& W, double lambda, Sign sign,
                        double reach = kDefaultReach);

struct RegularityReport {
  std::vector<double> lambdas;
  std::vector<double> measures;
  std::vector<double> ratios;  // E(λ(1-ε)) / E(λ)
  double max_ratio = 0.0;
  double fitted_exponent = 0.0;  // slope of log E against log λ
  double target_exponent = 0.0;  // 2/β
  double lower_constant = 0.0;   // min over the grid of E(λ)/λ^{2/β}
  bool pass = false;
};

/// Numerical check of the regularity condition
///   lim_{ε→0} limsup_{λ→0} E(λ(1-ε))/E(λ) = 1
/// and of the growth bound E(λ) ≥ C'λ^{2/β} on a finite grid. Passes when the
/// ratio stays below `ratio_bound` and the fitted exponent is no larger than
/// 2/β + exponent_slack. Throws DegenerateWeight if E vanishes on the grid.
RegularityReport check_regularity(const EffectiveWeight& W, std::span<const double> lambda_grid,
                                  double eps, Sign sign, double ratio_bound = 1.1,
                                  double exponent_slack = 0.1, double reach = kDefaultReach);

/// n log-spaced points per decade on [lo, hi], ascending.
std::vector<double> log_grid(double lo, double hi, int per_decade);

}  // namespace landau
