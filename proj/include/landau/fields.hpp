#pragma once

#include <json.hpp>
#include <string_view>
#include <variant>
#include <vector>

namespace landau {

/// c·(1 + r²)^{β/2}
struct PowerDecay {
  double c = 1.0;
  double beta = -3.0;
};

/// amplitude·exp(-((r - center)/width)²)
struct GaussianBump {
  double amplitude = 1.0;
  double center = 0.0;
  double width = 1.0;
};

/// amplitude on [0, inner], C∞ transition to zero on [inner, outer], zero beyond.
struct SmoothBump {
  double amplitude = 1.0;
  double inner = 0.0;
  double outer = 1.0;
};

struct ProfileTerm {
  std::variant<PowerDecay, GaussianBump, SmoothBump> shape;
  double sign = 1.0;

  double operator()(double r) const;
};

/// Radial profile of a magnetic perturbation b or an electric potential V,
/// with its decay class S_β. `delta` is carried for bookkeeping only.
struct FieldSpec {
  std::vector<ProfileTerm> terms;
  double beta = -3.0;
  double delta = 0.5;

  bool is_zero() const { return terms.empty(); }

  /// Same profile multiplied by `factor` (folded into each term's sign).
  FieldSpec scaled(double factor) const;
};

/// Pointwise sum of two profiles; the decay class is the slower of the two.
FieldSpec operator+(const FieldSpec& a, const FieldSpec& b);

double eval_field(const FieldSpec& spec, double r);

/// Checks the per-term invariants (power exponent < 0, 0 <= inner < outer,
/// width > 0). Throws ConfigError naming the term.
void validate_terms(const FieldSpec& spec, std::string_view role);

/// Checks that a non-zero spec is a legal perturbation: β < -2 and no power
/// term decaying slower than the declared class. Throws ConfigError.
void validate_decay_class(const FieldSpec& spec, std::string_view role);

/// Smooth step: 1 for t <= 0, 0 for t >= 1, C∞ in between.
double smooth_cutoff(double t);

void to_json(nlohmann::json& j, const ProfileTerm& t);
void from_json(const nlohmann::json& j, ProfileTerm& t);
void to_json(nlohmann::json& j, const FieldSpec& s);
void from_json(const nlohmann::json& j, FieldSpec& s);

}  // namespace landau
