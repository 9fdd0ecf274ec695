#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <json.hpp>
#include <string>

#include "landau/asymptotics.hpp"
#include "landau/mesh.hpp"
#include "landau/projections.hpp"
#include "landau/spectra.hpp"
#include "landau/weights.hpp"

namespace landau {

/// FNV-1a (64 bit) of the compact dump of `config`, as 16 hex digits.
std::string config_hash(const nlohmann::json& config);

/// Provenance line written at the top of every emitted file.
struct Provenance {
  std::string hash;
  double R = 0.0;
  double h = 0.0;
  int M = 0;
};

void write_provenance(std::ostream& os, const Provenance& p);

void write_spectrum_report(std::ostream& os, const Provenance& p, const SpectrumTable& table);
/// CSV (lambda, N, E_measure, ratio, radius, trusted).
void write_counting_report(std::ostream& os, const Provenance& p, const CountingReport& report);
/// CSV (lambda, E_plus, E_minus).
void write_weight_table(std::ostream& os, const Provenance& p, const EffectiveWeight& W,
                        const std::vector<double>& lambdas);
void write_toeplitz_report(std::ostream& os, const Provenance& p, const ToeplitzMatrix& t);

nlohmann::json to_json(const CountingReport& report);
nlohmann::json to_json(const RegularityReport& report);
nlohmann::json eigenvalues_json(const ToeplitzMatrix& t);

/// Writes text to dir/name, creating dir. Throws ConfigError on I/O failure.
void write_file(const std::filesystem::path& dir, const std::string& name, const std::string& text);

}  // namespace landau
