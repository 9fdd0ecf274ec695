#include "landau/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "landau/errors.hpp"
#include "landau/parallel.hpp"

namespace landau {

namespace {

std::vector<ChannelEigen> to_eigen(const ChannelOperator& op, const std::vector<double>& values,
                                   std::size_t first_index, double outer_fraction) {
  std::vector<std::vector<double>> vecs;
  try {
    vecs = eigenvectors(op.matrix, values);
  } catch (const ConvergenceFailure& e) {
    std::ostringstream msg;
    msg << "channel m=" << op.m << " (" << to_string(op.kind) << "): " << e.what();
    throw ConvergenceFailure(msg.str());
  }
  const std::size_t n = op.mesh.n;
  const auto outer_start =
      static_cast<std::size_t>(std::floor((1.0 - outer_fraction) * static_cast<double>(n)));
  const double scale = 1.0 / std::sqrt(op.mesh.h);
  std::vector<ChannelEigen> out;
  out.reserve(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    ChannelEigen e;
    e.n = static_cast<int>(first_index + k);
    e.E = values[k];
    double outer = 0.0;
    for (std::size_t i = outer_start; i < n; ++i) outer += vecs[k][i] * vecs[k][i];
    e.outer_mass = outer;
    for (double& v : vecs[k]) v *= scale;
    e.vector = RadialFunction{op.m, op.mesh, std::move(vecs[k])};
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

std::vector<ChannelEigen> channel_eigs(const ChannelOperator& op, double e_max,
                                       double outer_fraction) {
  const auto values = eigenvalues_below(op.matrix, e_max);
  return to_eigen(op, values, 0, outer_fraction);
}

std::vector<ChannelEigen> channel_eigs_in(const ChannelOperator& op, double lo, double hi,
                                          double outer_fraction) {
  const auto values = eigenvalues_in(op.matrix, lo, hi);
  const std::size_t first = values.empty() ? 0 : sturm_count(op.matrix, values.front());
  // sturm_count counts eigenvalues strictly below; a rounding-level collision
  // with the first eigenvalue is resolved by the bisection tolerance.
  return to_eigen(op, values, first, outer_fraction);
}

std::vector<double> SpectrumTable::energies_in(double lo, double hi) const {
  std::vector<double> out;
  for (const auto& r : rows)
    if (!r.boundary && r.E_cal > lo && r.E_cal < hi) out.push_back(r.E_cal);
  return out;
}

SpectrumTable assemble_spectrum(std::vector<ChannelSpectrum> channels,
                                const BoundaryPolicy& policy) {
  SpectrumTable t;
  t.policy = policy;
  if (!channels.empty()) {
    t.kind = channels.front().kind;
    t.mesh = channels.front().mesh;
  }
  for (const auto& c : channels) {
    if (c.kind != t.kind || !(c.mesh == t.mesh)) {
      std::ostringstream msg;
      msg << "channel m=" << c.m << " was computed for " << to_string(c.kind) << " on (h=" << c.mesh.h
          << ", n=" << c.mesh.n << "), table holds " << to_string(t.kind) << " on (h=" << t.mesh.h
          << ", n=" << t.mesh.n << ")";
      throw InconsistentProvenance(msg.str());
    }
  }
  t.channels = std::move(channels);
  for (std::size_t c = 0; c < t.channels.size(); ++c) {
    const auto& ch = t.channels[c];
    for (std::size_t k = 0; k < ch.eigs.size(); ++k) {
      const auto& e = ch.eigs[k];
      t.rows.push_back(SpectrumRow{ch.m, e.n, e.E, e.E_cal(),
                                   e.outer_mass > policy.mass_threshold, c, k});
    }
  }
  std::sort(t.rows.begin(), t.rows.end(), [](const SpectrumRow& a, const SpectrumRow& b) {
    if (a.E_cal != b.E_cal) return a.E_cal < b.E_cal;
    if (a.m != b.m) return a.m < b.m;
    return a.n < b.n;
  });
  return t;
}

double landau_level(int q, double B0, OperatorKind kind) {
  return 2.0 * q * B0 + field_multiple(kind) * B0;
}

int landau_index(int m, int n) { return n + (std::abs(m) - m) / 2; }

double unperturbed_level(OperatorKind kind, int m, int n, double B0) {
  return landau_level(landau_index(m, n), B0, kind);
}

ClusterWindow make_window(const SpectrumTable& table, int q, double B0,
                          std::optional<double> gamma) {
  if (q < 0) throw ConfigError("Landau index q must be nonnegative");
  const double g = gamma.value_or(0.5 * B0);
  if (!(g > 0.0 && g < B0)) throw ConfigError("cluster half-width gamma must satisfy 0 < gamma < B0");
  ClusterWindow w;
  w.q = q;
  w.level = landau_level(q, B0, table.kind);
  w.gamma = g;
  w.lambda_minus = w.level - g;
  w.lambda_plus = w.level + g;
  auto collides = [&](double x) {
    for (const auto& r : table.rows)
      if (std::abs(r.E_cal - x) <= 1e-12 * std::max(1.0, std::abs(x))) return true;
    return false;
  };
  for (int k = 0; k < 1000 && collides(w.lambda_minus); ++k) w.lambda_minus -= 1e-9;
  for (int k = 0; k < 1000 && collides(w.lambda_plus); ++k) w.lambda_plus += 1e-9;
  return w;
}

std::vector<ClusterState> cluster_extract(const SpectrumTable& table, const ClusterWindow& window) {
  std::vector<ClusterState> out;
  const double lo = window.level - window.gamma;
  const double hi = window.level + window.gamma;
  for (const auto& r : table.rows) {
    if (r.boundary || !(r.E_cal > lo && r.E_cal < hi)) continue;
    out.push_back(ClusterState{r.m, r.n, r.E_cal - window.level, &r});
  }
  std::stable_sort(out.begin(), out.end(), [](const ClusterState& a, const ClusterState& b) {
    if (std::abs(a.shift) != std::abs(b.shift)) return std::abs(a.shift) > std::abs(b.shift);
    if (a.m != b.m) return a.m < b.m;
    return a.n < b.n;
  });
  return out;
}

std::vector<double> cluster_shifts(const SpectrumTable& table, const ClusterWindow& window) {
  std::vector<double> out;
  for (const auto& s : cluster_extract(table, window)) out.push_back(s.shift);
  return out;
}

int counting_function(const SpectrumTable& table, double mu1, double mu2) {
  int count = 0;
  for (const auto& r : table.rows)
    if (!r.boundary && r.E_cal > mu1 && r.E_cal < mu2) ++count;
  return count;
}

int SpectrumProblem::default_channel_cutoff(double R, double B0) {
  return static_cast<int>(std::floor(3.0 * R * R * B0 / 16.0));
}

SpectrumTable solve_spectrum(const SpectrumProblem& p, unsigned threads) {
  if (p.m_min > p.m_max) throw ConfigError("channel range requires m_min <= m_max");
  const RadialMesh mesh = p.mesh();
  const GaugeData gauge = build_gauge(p.b, p.B0, mesh);
  const bool perturbed = !p.b.is_zero() || !p.V.is_zero();
  const bool calibrate = p.calibrate && perturbed;
  GaugeData ref_gauge;
  if (calibrate) ref_gauge = build_gauge(FieldSpec{}, p.B0, mesh);
  const FieldSpec* V = p.V.is_zero() ? nullptr : &p.V;

  const auto count = static_cast<std::size_t>(p.m_max - p.m_min + 1);
  std::vector<ChannelSpectrum> channels(count);
  parallel_for(count, threads, [&](std::size_t k) {
    const int m = p.m_min + static_cast<int>(k);
    const auto op = build_channel(p.kind, m, gauge, V, mesh);
    ChannelSpectrum cs{p.kind, m, mesh, channel_eigs(op, p.e_max, p.policy.outer_fraction)};
    if (calibrate && !cs.eigs.empty()) {
      const auto ref = build_channel(p.kind, m, ref_gauge, nullptr, mesh);
      for (auto& e : cs.eigs) {
        const double E_ref = eigenvalue_k(ref.matrix, static_cast<std::size_t>(e.n));
        e.offset = E_ref - unperturbed_level(p.kind, m, e.n, p.B0);
      }
    }
    channels[k] = std::move(cs);
  });
  return assemble_spectrum(std::move(channels), p.policy);
}

DriftReport boundary_sensitivity(const SpectrumProblem& problem, const SpectrumTable& table, int q,
                                 double R_prime, unsigned threads) {
  if (!(R_prime > problem.R)) throw ConfigError("boundary sensitivity requires R' > R");
  SpectrumProblem wide = problem;
  wide.R = R_prime;
  const SpectrumTable wide_table = solve_spectrum(wide, threads);

  const auto w0 = make_window(table, q, problem.B0);
  const auto w1 = make_window(wide_table, q, problem.B0);
  std::map<std::pair<int, int>, double> wide_shift;
  for (const auto& r : wide_table.rows) wide_shift[{r.m, r.n}] = r.E_cal - w1.level;

  DriftReport rep;
  rep.R = problem.R;
  rep.R_prime = R_prime;
  for (const auto& s : cluster_extract(table, w0)) {
    DriftEntry e{s.m, s.n, s.shift, std::numeric_limits<double>::infinity(), false};
    if (auto it = wide_shift.find({s.m, s.n}); it != wide_shift.end()) {
      e.drift = std::abs(it->second - s.shift);
    }
    e.converged = std::abs(e.shift) > 10.0 * e.drift;
    if (!e.converged) ++rep.unconverged;
    rep.max_drift = std::max(rep.max_drift, e.drift);
    rep.entries.push_back(e);
  }
  return rep;
}

DriftReport boundary_sensitivity(const SpectrumProblem& problem, int q, double R_prime,
                                 unsigned threads) {
  return boundary_sensitivity(problem, solve_spectrum(problem, threads), q, R_prime, threads);
}

void write_spectrum_csv(std::ostream& os, const SpectrumTable& table) {
  os << "m,n,E,E_cal,boundary\n";
  os.precision(17);
  for (const auto& r : table.rows)
    os << r.m << ',' << r.n << ',' << r.E << ',' << r.E_cal << ',' << (r.boundary ? 1 : 0) << '\n';
}

}  // namespace landau
