#include "landau/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "landau/errors.hpp"

namespace landau {

int RunConfig::channel_cutoff() const {
  return M >= 0 ? M : SpectrumProblem::default_channel_cutoff(R, B0);
}

double RunConfig::spectrum_cutoff() const {
  if (e_max) return *e_max;
  const int q_top = q.empty() ? 0 : *std::max_element(q.begin(), q.end());
  return landau_level(q_top, B0, kind) + B0;
}

VerificationConfig RunConfig::verification(int qq) const {
  VerificationConfig v;
  v.B0 = B0;
  v.b = b;
  v.V = V;
  v.q = qq;
  v.sign = sign;
  v.R = R;
  v.h = h;
  v.M = M;
  v.gamma = gamma;
  v.per_decade = per_decade;
  v.lambda_min = lambda_min;
  v.lambda_max = lambda_max;
  v.ratio_lo = ratio_lo;
  v.ratio_hi = ratio_hi;
  v.min_decades = min_decades;
  v.min_count_at_floor = min_count_at_floor;
  v.min_count = min_count;
  v.calibrate = calibrate;
  return v;
}

SpectrumProblem RunConfig::spectrum_problem() const {
  SpectrumProblem p;
  p.kind = kind;
  p.B0 = B0;
  p.b = b;
  p.V = V;
  p.R = R;
  p.h = h;
  p.m_min = lowest_channel();
  p.m_max = channel_cutoff();
  p.e_max = spectrum_cutoff();
  p.calibrate = calibrate;
  return p;
}

namespace {

template <class T>
T field(const nlohmann::json& j, const char* key, const std::string& where, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config field '" + where + key + "' has the wrong type");
  }
}

FieldSpec field_spec(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return {};
  try {
    return j.at(key).get<FieldSpec>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "' is malformed: " + e.what());
  }
}

}  // namespace

RunConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  c.source = j;
  c.kind = parse_operator_kind(field<std::string>(j, "operator", "", "pauli_minus"));
  c.B0 = field(j, "B0", "", 1.0);
  if (!(c.B0 > 0.0)) throw ConfigError("config field 'B0' must be positive");
  c.b = field_spec(j, "b");
  c.V = field_spec(j, "V");
  validate_decay_class(c.b, "b");
  validate_decay_class(c.V, "V");

  if (j.contains("q")) {
    const auto& q = j.at("q");
    c.q = q.is_array() ? field<std::vector<int>>(j, "q", "", {}) : std::vector<int>{field(j, "q", "", 1)};
  }
  if (c.q.empty()) throw ConfigError("config field 'q' must list at least one Landau index");
  for (int q : c.q)
    if (q < 0) throw ConfigError("config field 'q' must hold nonnegative integers");

  const auto sign = field<std::string>(j, "sign", "", "+");
  if (sign == "+" || sign == "plus") {
    c.sign = Sign::plus;
  } else if (sign == "-" || sign == "minus") {
    c.sign = Sign::minus;
  } else {
    throw ConfigError("config field 'sign' must be '+' or '-'");
  }

  if (j.contains("mesh")) {
    const auto& m = j.at("mesh");
    c.R = field(m, "R", "mesh.", c.R);
    c.h = field(m, "h", "mesh.", c.h);
    c.M = field(m, "M", "mesh.", c.M);
    if (m.contains("m_min")) {
      c.m_min = field(m, "m_min", "mesh.", 0);
      c.m_min_set = true;
    }
    if (m.contains("e_max")) c.e_max = field(m, "e_max", "mesh.", 0.0);
  }
  try {
    (void)RadialMesh::from_radius(c.R, c.h);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("config field 'mesh': ") + e.what());
  }
  if (c.m_min_set && c.m_min > c.channel_cutoff())
    throw ConfigError("config field 'mesh.m_min' exceeds the channel cutoff M");

  if (j.contains("window")) {
    const auto& w = j.at("window");
    if (w.contains("gamma")) c.gamma = field(w, "gamma", "window.", 0.5);
  }
  if (c.gamma && !(*c.gamma > 0.0 && *c.gamma < c.B0))
    throw ConfigError("config field 'window.gamma' must satisfy 0 < gamma < B0");

  if (j.contains("lambda")) {
    const auto& l = j.at("lambda");
    c.per_decade = field(l, "per_decade", "lambda.", c.per_decade);
    if (l.contains("min")) c.lambda_min = field(l, "min", "lambda.", 0.0);
    if (l.contains("max")) c.lambda_max = field(l, "max", "lambda.", 0.0);
  }
  if (c.per_decade <= 0) throw ConfigError("config field 'lambda.per_decade' must be positive");
  if (c.lambda_min && !(*c.lambda_min > 0.0)) throw ConfigError("config field 'lambda.min' must be positive");
  if (c.lambda_min && c.lambda_max && !(*c.lambda_max > *c.lambda_min))
    throw ConfigError("config field 'lambda.max' must exceed 'lambda.min'");

  if (j.contains("bands")) {
    const auto& b = j.at("bands");
    c.ratio_lo = field(b, "ratio_lo", "bands.", c.ratio_lo);
    c.ratio_hi = field(b, "ratio_hi", "bands.", c.ratio_hi);
    c.min_decades = field(b, "min_decades", "bands.", c.min_decades);
    c.min_count_at_floor = field(b, "min_count_at_floor", "bands.", c.min_count_at_floor);
    c.min_count = field(b, "min_count", "bands.", c.min_count);
    c.exponent_tol = field(b, "exponent_tol", "bands.", c.exponent_tol);
    c.gram_tol = field(b, "gram_tol", "bands.", c.gram_tol);
    c.toeplitz_tol = field(b, "toeplitz_tol", "bands.", c.toeplitz_tol);
  }
  if (!(c.ratio_lo < c.ratio_hi)) throw ConfigError("config field 'bands.ratio_lo' must be below 'bands.ratio_hi'");

  c.basis_modes = field(j, "basis_modes", "", c.basis_modes);
  if (c.basis_modes < 1) throw ConfigError("config field 'basis_modes' must be at least 1");
  c.calibrate = field(j, "calibrate", "", c.calibrate);
  c.output = field<std::string>(j, "output", "", c.output.string());
  c.seed = field<std::uint64_t>(j, "seed", "", c.seed);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path.string() + "'");
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

}  // namespace landau
