#include "landau/weights.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <variant>

#include "landau/errors.hpp"

namespace landau {

double landau_constant(int q, double B0) {
  double c = 1.0;
  for (int k = 1; k <= q; ++k) c *= 2.0 * B0 * k;
  return c;
}

double landau_constant_prime(int q) {
  double c = static_cast<double>(q);
  for (int k = 1; k <= q; ++k) c *= 2.0 * k;
  return c;
}

double EffectiveWeight::operator()(double r) const {
  double w = eval_field(V, r);
  if (q != 0) w += 2.0 * q * eval_field(b, r);
  return factor * w;
}

double EffectiveWeight::decay_beta() const {
  const bool has_V = !V.is_zero();
  const bool has_b = q != 0 && !b.is_zero();
  if (has_V && has_b) return std::max(V.beta, b.beta);
  if (has_V) return V.beta;
  if (has_b) return b.beta;
  return -3.0;
}

EffectiveWeight EffectiveWeight::times(double c) const {
  EffectiveWeight w = *this;
  w.factor *= c;
  return w;
}

EffectiveWeight effective_weight(const FieldSpec& V, const FieldSpec& b, int q, double B0,
                                 bool scaled) {
  if (q < 0) throw ConfigError("Landau index q must be nonnegative");
  EffectiveWeight w;
  w.q = q;
  w.B0 = B0;
  w.scaled = scaled;
  w.factor = scaled ? landau_constant(q, B0) : 1.0;
  w.V = V;
  w.b = b;
  return w;
}

namespace {

constexpr int kMaxSignChanges = 64;

// Sample radii: dense near the origin, geometric further out, with extra
// resolution across every localized feature of the profile terms.
std::vector<double> sample_radii(const EffectiveWeight& W, double reach) {
  std::vector<double> r;
  const double inner = std::min(10.0, reach);
  for (double x = 0.0; x < inner; x += 0.01) r.push_back(x);
  for (double x = inner; x < reach; x *= 1.002) r.push_back(x);
  r.push_back(reach);

  auto refine = [&](double a, double b, double step) {
    a = std::max(a, 0.0);
    b = std::min(b, reach);
    if (!(step > 0.0)) return;
    for (double x = a; x < b; x += step) r.push_back(x);
  };
  auto add_terms = [&](const FieldSpec& spec) {
    for (const auto& t : spec.terms) {
      if (const auto* g = std::get_if<GaussianBump>(&t.shape)) {
        refine(g->center - 8.0 * g->width, g->center + 8.0 * g->width, g->width / 32.0);
      } else if (const auto* s = std::get_if<SmoothBump>(&t.shape)) {
        refine(s->inner, s->outer, (s->outer - s->inner) / 64.0);
      }
    }
  };
  add_terms(W.V);
  if (W.q != 0) add_terms(W.b);
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

double bisect_root(const EffectiveWeight& W, double lambda, double s, double a, double b) {
  // Invariant: s·W(a) - λ and s·W(b) - λ have opposite signs.
  const bool a_above = s * W(a) > lambda;
  while (b - a > 1e-12) {
    const double mid = 0.5 * (a + b);
    if (!(mid > a && mid < b)) break;
    if ((s * W(mid) > lambda) == a_above) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

SuperlevelSet superlevel_set(const EffectiveWeight& W, double lambda, Sign sign, double reach) {
  if (!(lambda > 0.0)) throw ConfigError("counting measure requires lambda > 0");
  const double s = sign_value(sign);
  const auto radii = sample_radii(W, reach);

  SuperlevelSet out;
  bool above = s * W(radii.front()) > lambda;
  double start = 0.0;
  int changes = 0;
  for (std::size_t k = 1; k < radii.size(); ++k) {
    const bool now = s * W(radii[k]) > lambda;
    if (now == above) continue;
    if (++changes > kMaxSignChanges) {
      throw NumericError("superlevel set has more than 64 boundary points; profile too oscillatory");
    }
    const double root = bisect_root(W, lambda, s, radii[k - 1], radii[k]);
    if (above) {
      out.intervals.emplace_back(start, root);
    } else {
      start = root;
    }
    above = now;
  }
  if (above) {
    std::ostringstream msg;
    msg << "superlevel set {" << (sign == Sign::plus ? "+" : "-") << "W > " << lambda
        << "} extends past r = " << reach << "; lambda is too small for this domain";
    throw UnboundedSet(msg.str());
  }
  return out;
}

double counting_measure(const EffectiveWeight& W, double lambda, Sign sign, double reach) {
  const auto set = superlevel_set(W, lambda, sign, reach);
  double area_over_pi = 0.0;
  for (const auto& [a, b] : set.intervals) area_over_pi += b * b - a * a;
  return 0.5 * W.B0 * area_over_pi;
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
  std::vector<double> out;
  if (!(lo > 0.0) || !(hi >= lo) || per_decade <= 0) return out;
  const double step = 1.0 / per_decade;
  const double top = std::log10(hi);
  for (double e = std::log10(lo); e <= top + 1e-12; e += step) out.push_back(std::pow(10.0, e));
  return out;
}

RegularityReport check_regularity(const EffectiveWeight& W, std::span<const double> lambda_grid,
                                  double eps, Sign sign, double ratio_bound,
                                  double exponent_slack, double reach) {
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("regularity check requires 0 < eps < 1");
  RegularityReport rep;
  rep.target_exponent = 2.0 / W.decay_beta();
  rep.lower_constant = std::numeric_limits<double>::infinity();

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double lambda : lambda_grid) {
    const double E = counting_measure(W, lambda, sign, reach);
    if (!(E > 0.0)) {
      std::ostringstream msg;
      msg << "E_" << (sign == Sign::plus ? "+" : "-") << "(" << lambda
          << ") = 0: the requested sign of the weight is empty";
      throw DegenerateWeight(msg.str());
    }
    const double E_eps = counting_measure(W, lambda * (1.0 - eps), sign, reach);
    rep.lambdas.push_back(lambda);
    rep.measures.push_back(E);
    rep.ratios.push_back(E_eps / E);
    rep.max_ratio = std::max(rep.max_ratio, E_eps / E);
    rep.lower_constant =
        std::min(rep.lower_constant, E / std::pow(lambda, rep.target_exponent));
    const double x = std::log(lambda), y = std::log(E);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(rep.lambdas.size());
  if (n >= 2) {
    rep.fitted_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  } else {
    rep.fitted_exponent = rep.target_exponent;
  }
  rep.pass = n > 0 && rep.max_ratio <= ratio_bound &&
             rep.fitted_exponent <= rep.target_exponent + exponent_slack &&
             rep.lower_constant > 0.0;
  return rep;
}

}  // namespace landau
