#include "landau/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "landau/errors.hpp"

namespace landau {

int VerificationConfig::channel_cutoff() const {
  return M >= 0 ? M : SpectrumProblem::default_channel_cutoff(R, B0);
}

void VerificationConfig::validate() const {
  if (!(B0 > 0.0)) throw ConfigError("B0 must be positive");
  if (q < 0) throw ConfigError("q must be nonnegative");
  validate_terms(b, "b");
  validate_terms(V, "V");
  validate_decay_class(b, "b");
  validate_decay_class(V, "V");
  if (gamma && !(*gamma > 0.0 && *gamma < B0))
    throw ConfigError("gamma must satisfy 0 < gamma < B0");
  if (per_decade <= 0) throw ConfigError("lambda grid needs a positive number of points per decade");
  if (!(ratio_lo < ratio_hi)) throw ConfigError("ratio band requires ratio_lo < ratio_hi");
  if (!(R_prime_factor > 1.0)) throw ConfigError("R' factor must exceed 1");
  (void)RadialMesh::from_radius(R, h);
}

FamilyReduction family_reduction(OperatorKind kind, const FieldSpec& V, const FieldSpec& b,
                                 double B0) {
  switch (kind) {
    case OperatorKind::pauli_minus:
      return {V, 0.0};
    case OperatorKind::schroedinger:
      return {V + b, B0};
    case OperatorKind::pauli_plus:
      return {V + b.scaled(2.0), 2.0 * B0};
  }
  return {V, 0.0};
}

namespace {

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  return den != 0.0 ? (n * sxy - sx * sy) / den : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

CountingReport cluster_asymptotics_report(const VerificationConfig& cfg, OperatorKind kind) {
  cfg.validate();
  const auto red = family_reduction(kind, cfg.V, cfg.b, cfg.B0);
  const double s = sign_value(cfg.sign);

  SpectrumProblem prob;
  prob.kind = OperatorKind::pauli_minus;
  prob.B0 = cfg.B0;
  prob.b = cfg.b;
  prob.V = red.V;
  prob.R = cfg.R;
  prob.h = cfg.h;
  prob.m_min = -cfg.q - 1;
  prob.m_max = cfg.channel_cutoff();
  prob.e_max = landau_level(cfg.q, cfg.B0) + cfg.B0;
  prob.calibrate = cfg.calibrate;

  const SpectrumTable table = solve_spectrum(prob, cfg.threads);
  const ClusterWindow window = make_window(table, cfg.q, cfg.B0, cfg.gamma);
  const DriftReport drift =
      boundary_sensitivity(prob, table, cfg.q, cfg.R_prime_factor * cfg.R, cfg.threads);
  const EffectiveWeight W = effective_weight(red.V, cfg.b, cfg.q, cfg.B0, false);

  CountingReport rep;
  rep.q = cfg.q;
  rep.sign = cfg.sign;
  rep.kind = kind;
  rep.level = window.level + red.shift;
  rep.target_exponent = 2.0 / W.decay_beta();
  rep.max_drift = drift.max_drift;

  // Signed shifts on the requested side, and the largest one whose drift is
  // not negligible.
  double top = 0.0, bottom = std::numeric_limits<double>::infinity();
  double unconverged_top = 0.0;
  for (const auto& e : drift.entries) {
    const double x = s * e.shift;
    if (!(x > 0.0)) continue;
    top = std::max(top, x);
    bottom = std::min(bottom, x);
    if (!(std::abs(e.shift) > cfg.drift_factor * e.drift)) unconverged_top = std::max(unconverged_top, x);
  }
  if (!(top > 0.0)) {
    rep.limiting_constraint = "empty cluster: no shifts on the requested side of the level";
    rep.failures.push_back(rep.limiting_constraint);
    return rep;
  }
  const double hi = cfg.lambda_max.value_or(top);
  const double lo = cfg.lambda_min.value_or(std::max(bottom, top * 1e-6));
  const auto grid = log_grid(lo, hi, cfg.per_decade);

  for (double lambda : grid) {
    CountingRow row;
    row.lambda = lambda;
    row.N = cfg.sign == Sign::plus
                ? counting_function(table, window.level + lambda, window.lambda_plus)
                : counting_function(table, window.lambda_minus, window.level - lambda);
    try {
      const auto set = superlevel_set(W, lambda, cfg.sign);
      row.radius = set.outer_radius();
      row.E_measure = counting_measure(W, lambda, cfg.sign);
      row.radius_ok = row.radius <= 0.5 * cfg.R;
    } catch (const UnboundedSet&) {
      row.radius = std::numeric_limits<double>::infinity();
      row.E_measure = std::numeric_limits<double>::infinity();
      row.radius_ok = false;
    }
    row.ratio = row.E_measure > 0.0 ? row.N / row.E_measure : std::numeric_limits<double>::quiet_NaN();
    row.count_ok = row.N >= cfg.min_count;
    row.drift_ok = lambda >= unconverged_top;
    row.trusted = row.radius_ok && row.count_ok && row.drift_ok && std::isfinite(row.ratio);
    rep.rows.push_back(row);
  }

  // Longest contiguous trusted run.
  std::size_t best_start = 0, best_len = 0;
  for (std::size_t i = 0; i < rep.rows.size();) {
    if (!rep.rows[i].trusted) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < rep.rows.size() && rep.rows[j].trusted) ++j;
    if (j - i > best_len) {
      best_start = i;
      best_len = j - i;
    }
    i = j;
  }

  if (best_len == 0) {
    bool any_radius = false, any_radius_count = false;
    for (const auto& r : rep.rows) {
      any_radius |= r.radius_ok;
      any_radius_count |= r.radius_ok && r.count_ok;
    }
    if (!any_radius) {
      rep.limiting_constraint = "superlevel radius exceeds R/2 at every lambda";
    } else if (!any_radius_count) {
      rep.limiting_constraint = "N < " + std::to_string(cfg.min_count) +
                                " wherever the superlevel radius fits in R/2";
    } else {
      rep.limiting_constraint = "boundary drift exceeds the counted shifts";
    }
    rep.failures.push_back("trust region empty: " + rep.limiting_constraint);
    return rep;
  }

  rep.trust_empty = false;
  const auto& first = rep.rows[best_start];
  const auto& last = rep.rows[best_start + best_len - 1];
  rep.trust_lo = first.lambda;
  rep.trust_hi = last.lambda;
  rep.decades = std::log10(rep.trust_hi / rep.trust_lo);
  rep.N_at_floor = first.N;
  if (best_start > 0) {
    const auto& below = rep.rows[best_start - 1];
    rep.limiting_constraint = !below.radius_ok  ? "superlevel radius <= R/2"
                              : !below.drift_ok ? "boundary drift"
                              : !below.count_ok ? "minimum count"
                                                : "ratio undefined";
  } else {
    rep.limiting_constraint = "lambda grid floor";
  }
  rep.min_ratio = std::numeric_limits<double>::infinity();
  rep.max_ratio = -rep.min_ratio;
  std::vector<double> lx, ly;
  for (std::size_t i = best_start; i < best_start + best_len; ++i) {
    const auto& r = rep.rows[i];
    rep.min_ratio = std::min(rep.min_ratio, r.ratio);
    rep.max_ratio = std::max(rep.max_ratio, r.ratio);
    lx.push_back(std::log(r.lambda));
    ly.push_back(std::log(static_cast<double>(r.N)));
  }
  rep.fitted_exponent = lx.size() >= 2 ? fit_slope(lx, ly) : std::numeric_limits<double>::quiet_NaN();

  if (rep.min_ratio < cfg.ratio_lo || rep.max_ratio > cfg.ratio_hi) {
    std::ostringstream msg;
    msg << "ratio range [" << rep.min_ratio << ", " << rep.max_ratio << "] leaves band ["
        << cfg.ratio_lo << ", " << cfg.ratio_hi << "]";
    rep.failures.push_back(msg.str());
  }
  if (rep.decades < cfg.min_decades) {
    std::ostringstream msg;
    msg << "trust region spans " << rep.decades << " decades, need " << cfg.min_decades;
    rep.failures.push_back(msg.str());
  }
  if (rep.N_at_floor < cfg.min_count_at_floor) {
    std::ostringstream msg;
    msg << "N = " << rep.N_at_floor << " at the trust-region floor, need " << cfg.min_count_at_floor;
    rep.failures.push_back(msg.str());
  }
  rep.pass = rep.failures.empty();
  return rep;
}

void assert_trust_region(const CountingReport& report) {
  if (report.trust_empty) throw TrustRegionEmpty("trust region empty: " + report.limiting_constraint);
}

UpperEstimate upper_estimate_check(const CountingReport& report, double tol) {
  UpperEstimate u;
  u.target_exponent = report.target_exponent;
  bool any_count = false;
  for (const auto& r : report.rows) any_count |= r.N > 0;
  if (!any_count) {
    u.skipped = true;
    u.note = "EmptyCluster: N vanishes on the whole grid, nothing to fit";
    return u;
  }
  assert_trust_region(report);
  u.fitted_exponent = report.fitted_exponent;
  u.pass = std::isfinite(u.fitted_exponent) && std::abs(u.fitted_exponent - u.target_exponent) <= tol;
  return u;
}

UpperEstimate upper_estimate_check(const VerificationConfig& cfg, double tol) {
  if (cfg.V.is_zero() && (cfg.b.is_zero() || cfg.q == 0)) {
    UpperEstimate u;
    u.skipped = true;
    u.note = "EmptyCluster: the effective weight vanishes, nothing to fit";
    return u;
  }
  return upper_estimate_check(cluster_asymptotics_report(cfg), tol);
}

int eigen_count(const Eigen::MatrixXd& L, double mu1, double mu2) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L, Eigen::EigenvaluesOnly);
  int c = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double x = es.eigenvalues()(i);
    if (x > mu1 && x < mu2) ++c;
  }
  return c;
}

int singular_count(const Eigen::MatrixXd& L, double tau) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(L);
  int c = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tau) ++c;
  return c;
}

InequalitySides perturbation_inequality_sides(const Eigen::MatrixXd& L0, const Eigen::MatrixXd& L1,
                                              double mu1, double mu2, double tau1, double tau2) {
  if (!(tau1 > 0.0 && tau2 > 0.0)) throw ConfigError("perturbation inequality needs tau1, tau2 > 0");
  if (L0.rows() != L1.rows() || L0.cols() != L1.cols() || L0.rows() != L0.cols())
    throw ConfigError("perturbation inequality needs square matrices of equal size");
  InequalitySides s;
  s.lhs = eigen_count(L0 + L1, mu1, mu2);
  s.rhs = eigen_count(L0, mu1 - tau1, mu2 + tau2) + singular_count(L1, tau1) + singular_count(L1, tau2);
  return s;
}

bool perturbation_inequality_check(const Eigen::MatrixXd& L0, const Eigen::MatrixXd& L1, double mu1,
                                   double mu2, double tau1, double tau2) {
  return perturbation_inequality_sides(L0, L1, mu1, mu2, tau1, tau2).holds();
}

}  // namespace landau
