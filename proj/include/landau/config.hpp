#pragma once

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "landau/asymptotics.hpp"
#include "landau/channel.hpp"
#include "landau/fields.hpp"
#include "landau/spectra.hpp"
#include "landau/weights.hpp"

namespace landau {

/// Everything one CLI run needs, loaded from JSON and validated up front.
struct RunConfig {
  OperatorKind kind = OperatorKind::pauli_minus;
  double B0 = 1.0;
  FieldSpec b;
  FieldSpec V;
  std::vector<int> q{1};
  Sign sign = Sign::plus;

  double R = 20.0;
  double h = 0.005;
  int M = -1;            // channel cutoff, negative = ⌊3R²B°/16⌋
  int m_min = 0;         // lowest channel for `spectrum`; default −M
  bool m_min_set = false;
  std::optional<double> e_max;

  std::optional<double> gamma;
  int per_decade = 24;
  std::optional<double> lambda_min;
  std::optional<double> lambda_max;

  double ratio_lo = 0.8;
  double ratio_hi = 1.2;
  double min_decades = 1.0;
  int min_count_at_floor = 20;
  int min_count = 10;
  double exponent_tol = 0.1;
  double gram_tol = 1e-5;
  int basis_modes = 12;
  double toeplitz_tol = 0.1;

  bool calibrate = true;
  std::filesystem::path output = "landau_out";
  std::uint64_t seed = 1;

  nlohmann::json source;  // canonical input, for hashing

  int channel_cutoff() const;
  int lowest_channel() const { return m_min_set ? m_min : -channel_cutoff(); }
  double spectrum_cutoff() const;
  VerificationConfig verification(int q) const;
  SpectrumProblem spectrum_problem() const;
};

/// Parses and validates. Throws ConfigError naming the offending field.
RunConfig parse_config(const nlohmann::json& j);
/// Reads a JSON file; missing or unreadable files raise ConfigError.
RunConfig load_config(const std::filesystem::path& path);

}  // namespace landau
