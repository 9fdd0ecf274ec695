#include "landau/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "landau/errors.hpp"

namespace landau {

std::string config_hash(const nlohmann::json& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_provenance(std::ostream& os, const Provenance& p) {
  os << "# config_hash=" << p.hash << " R=" << p.R << " h=" << p.h << " M=" << p.M << '\n';
}

void write_spectrum_report(std::ostream& os, const Provenance& p, const SpectrumTable& table) {
  write_provenance(os, p);
  write_spectrum_csv(os, table);
}

void write_counting_report(std::ostream& os, const Provenance& p, const CountingReport& report) {
  write_provenance(os, p);
  os << "lambda,N,E_measure,ratio,radius,trusted\n";
  os.precision(17);
  for (const auto& r : report.rows)
    os << r.lambda << ',' << r.N << ',' << r.E_measure << ',' << r.ratio << ',' << r.radius << ','
       << (r.trusted ? 1 : 0) << '\n';
}

void write_weight_table(std::ostream& os, const Provenance& p, const EffectiveWeight& W,
                        const std::vector<double>& lambdas) {
  write_provenance(os, p);
  os << "lambda,E_plus,E_minus\n";
  os.precision(17);
  for (double l : lambdas)
    os << l << ',' << counting_measure(W, l, Sign::plus) << ',' << counting_measure(W, l, Sign::minus)
       << '\n';
}

void write_toeplitz_report(std::ostream& os, const Provenance& p, const ToeplitzMatrix& t) {
  write_provenance(os, p);
  write_toeplitz_csv(os, t);
}

namespace {

nlohmann::json finite_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(); }

}  // namespace

nlohmann::json to_json(const CountingReport& r) {
  nlohmann::json j;
  j["q"] = r.q;
  j["sign"] = r.sign == Sign::plus ? "+" : "-";
  j["kind"] = std::string(to_string(r.kind));
  j["level"] = r.level;
  j["trust_region"] = r.trust_empty ? nlohmann::json()
                                    : nlohmann::json{{"lambda_lo", r.trust_lo},
                                                     {"lambda_hi", r.trust_hi},
                                                     {"decades", r.decades},
                                                     {"N_at_floor", r.N_at_floor}};
  j["limiting_constraint"] = r.limiting_constraint;
  j["min_ratio"] = finite_or_null(r.min_ratio);
  j["max_ratio"] = finite_or_null(r.max_ratio);
  j["fitted_exponent"] = finite_or_null(r.fitted_exponent);
  j["target_exponent"] = r.target_exponent;
  j["max_drift"] = finite_or_null(r.max_drift);
  j["pass"] = r.pass;
  j["failures"] = r.failures;
  return j;
}

nlohmann::json to_json(const RegularityReport& r) {
  return {{"max_ratio", r.max_ratio},
          {"fitted_exponent", r.fitted_exponent},
          {"target_exponent", r.target_exponent},
          {"lower_constant", finite_or_null(r.lower_constant)},
          {"pass", r.pass}};
}

nlohmann::json eigenvalues_json(const ToeplitzMatrix& t) {
  return {{"q", t.q}, {"eigenvalues", t.eigenvalues()}};
}

void write_file(const std::filesystem::path& dir, const std::string& name, const std::string& text) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
  std::ofstream f(dir / name, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + (dir / name).string());
  f << text;
}

}  // namespace landau
