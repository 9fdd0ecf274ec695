#include "landau/fields.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "landau/errors.hpp"

namespace landau {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

double smooth_cutoff(double t) {
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / (1.0 - t));
  const double b = std::exp(-1.0 / t);
  return a / (a + b);
}

double ProfileTerm::operator()(double r) const {
  const double v = std::visit(
      overloaded{
          [r](const PowerDecay& p) { return p.c * std::pow(1.0 + r * r, 0.5 * p.beta); },
          [r](const GaussianBump& g) {
            const double x = (r - g.center) / g.width;
            return g.amplitude * std::exp(-x * x);
          },
          [r](const SmoothBump& s) {
            return s.amplitude * smooth_cutoff((r - s.inner) / (s.outer - s.inner));
          },
      },
      shape);
  return sign * v;
}

double eval_field(const FieldSpec& spec, double r) {
  double sum = 0.0;
  for (const auto& t : spec.terms) sum += t(r);
  return sum;
}

FieldSpec FieldSpec::scaled(double factor) const {
  FieldSpec out = *this;
  for (auto& t : out.terms) t.sign *= factor;
  return out;
}

FieldSpec operator+(const FieldSpec& a, const FieldSpec& b) {
  FieldSpec out;
  out.terms = a.terms;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  if (a.is_zero()) {
    out.beta = b.beta;
    out.delta = b.delta;
  } else if (b.is_zero()) {
    out.beta = a.beta;
    out.delta = a.delta;
  } else {
    out.beta = std::max(a.beta, b.beta);
    out.delta = std::min(a.delta, b.delta);
  }
  return out;
}

void validate_terms(const FieldSpec& spec, std::string_view role) {
  for (std::size_t i = 0; i < spec.terms.size(); ++i) {
    std::ostringstream where;
    where << role << ".terms[" << i << "]";
    const auto& term = spec.terms[i];
    if (!std::isfinite(term.sign)) throw ConfigError(where.str() + ".sign must be finite");
    std::visit(overloaded{
                   [&](const PowerDecay& p) {
                     if (!(p.beta < 0.0))
                       throw ConfigError(where.str() + ".beta must be negative for a power term");
                     if (!std::isfinite(p.c)) throw ConfigError(where.str() + ".c must be finite");
                   },
                   [&](const GaussianBump& g) {
                     if (!(g.width > 0.0))
                       throw ConfigError(where.str() + ".width must be positive");
                   },
                   [&](const SmoothBump& s) {
                     if (!(s.inner >= 0.0 && s.inner < s.outer))
                       throw ConfigError(where.str() + " requires 0 <= inner < outer");
                   },
               },
               term.shape);
  }
}

void validate_decay_class(const FieldSpec& spec, std::string_view role) {
  validate_terms(spec, role);
  if (spec.is_zero()) return;
  if (!(spec.beta < -2.0)) {
    std::ostringstream msg;
    msg << role << ".beta = " << spec.beta
        << " is not admissible: perturbations must belong to S_β for some β < −2 (beta < -2)";
    throw ConfigError(msg.str());
  }
  if (!(spec.delta > 0.0 && spec.delta < -spec.beta)) {
    std::ostringstream msg;
    msg << role << ".delta = " << spec.delta << " must lie in (0, -beta)";
    throw ConfigError(msg.str());
  }
  for (std::size_t i = 0; i < spec.terms.size(); ++i) {
    if (const auto* p = std::get_if<PowerDecay>(&spec.terms[i].shape); p && p->beta > spec.beta) {
      std::ostringstream msg;
      msg << role << ".terms[" << i << "] decays like r^" << p->beta
          << ", slower than the declared class beta = " << spec.beta
          << " (beta < -2 is required)";
      throw ConfigError(msg.str());
    }
  }
}

void to_json(nlohmann::json& j, const ProfileTerm& t) {
  std::visit(overloaded{
                 [&](const PowerDecay& p) {
                   j = {{"kind", "power"}, {"c", p.c}, {"beta", p.beta}};
                 },
                 [&](const GaussianBump& g) {
                   j = {{"kind", "gaussian"},
                        {"amplitude", g.amplitude},
                        {"center", g.center},
                        {"width", g.width}};
                 },
                 [&](const SmoothBump& s) {
                   j = {{"kind", "smooth_bump"},
                        {"amplitude", s.amplitude},
                        {"inner", s.inner},
                        {"outer", s.outer}};
                 },
             },
             t.shape);
  if (t.sign != 1.0) j["sign"] = t.sign;
}

void from_json(const nlohmann::json& j, ProfileTerm& t) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "power") {
    t.shape = PowerDecay{j.at("c").get<double>(), j.at("beta").get<double>()};
  } else if (kind == "gaussian") {
    t.shape = GaussianBump{j.at("amplitude").get<double>(), j.value("center", 0.0),
                           j.at("width").get<double>()};
  } else if (kind == "smooth_bump") {
    t.shape = SmoothBump{j.at("amplitude").get<double>(), j.at("inner").get<double>(),
                         j.at("outer").get<double>()};
  } else {
    throw ConfigError("unknown profile kind '" + kind + "' (expected power, gaussian, smooth_bump)");
  }
  t.sign = j.value("sign", 1.0);
}

void to_json(nlohmann::json& j, const FieldSpec& s) {
  j = {{"terms", s.terms}, {"beta", s.beta}, {"delta", s.delta}};
}

void from_json(const nlohmann::json& j, FieldSpec& s) {
  s.terms = j.value("terms", std::vector<ProfileTerm>{});
  s.beta = j.value("beta", -3.0);
  s.delta = j.value("delta", 0.5);
}

}  // namespace landau
