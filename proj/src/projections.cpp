#include "landau/projections.hpp"

#include <algorithm>
#include <map>
#include <cmath>
#include <ostream>
#include <sstream>

#include "landau/errors.hpp"
#include "landau/weights.hpp"

namespace landau {

Eigen::MatrixXd ZeroModeBasis::gram() const {
  const auto n = static_cast<Eigen::Index>(modes.size());
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    G(i, i) = modes[i].mesh.dot(modes[i].values, modes[i].values);
  return G;
}

ZeroModeBasis make_zero_mode_basis(std::shared_ptr<const GaugeData> gauge, int M0) {
  if (!gauge) throw ConfigError("zero-mode basis needs a gauge");
  if (M0 < 0) throw ConfigError("zero-mode basis needs M0 >= 0");
  ZeroModeBasis basis;
  basis.modes.reserve(static_cast<std::size_t>(M0) + 1);
  for (int m = 0; m <= M0; ++m) basis.modes.push_back(zero_mode(m, *gauge, gauge->mesh));
  basis.gauge = std::move(gauge);
  return basis;
}

double ResidualMatrix::max_entry() const {
  return values.size() == 0 ? 0.0 : values.cwiseAbs().maxCoeff();
}

double ResidualMatrix::frobenius() const { return values.norm(); }

RadialFunction raise_power(const RadialFunction& u, const GaugeData& gauge, int q) {
  RadialFunction w = u;
  for (int k = 0; k < q; ++k) w = ladder_raise(w, gauge);
  return w;
}

RadialFunction lower_power(const RadialFunction& u, const GaugeData& gauge, int q) {
  RadialFunction w = u;
  for (int k = 0; k < q; ++k) w = ladder_lower(w, gauge);
  return w;
}

namespace {

std::vector<double> sample(const FieldSpec& f, const RadialMesh& mesh) {
  std::vector<double> out(mesh.n);
  for (std::size_t i = 0; i < mesh.n; ++i) out[i] = eval_field(f, mesh.r(i));
  return out;
}

void require_q(int q) {
  if (q < 1) throw ConfigError("identity residuals are defined for q >= 1");
}

}  // namespace

ResidualMatrix gram_identity_residual(int q, const ZeroModeBasis& basis, const FieldSpec& b,
                                      double B0) {
  require_q(q);
  const auto& g = *basis.gauge;
  const auto bs = sample(b, g.mesh);
  const double Cq = landau_constant(q, B0);
  const double lead = landau_constant_prime(q) * std::pow(B0, q - 1);
  const auto n = static_cast<Eigen::Index>(basis.size());
  ResidualMatrix res{Eigen::MatrixXd::Zero(n, n)};
  // Raised modes stay in distinct channels, so the matrix is diagonal.
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& u = basis.modes[i];
    const auto w = raise_power(u, g, q);
    res.values(i, i) = g.mesh.dot(w.values, w.values) - Cq * g.mesh.dot(u.values, u.values) -
                       lead * g.mesh.weighted_dot(bs, u.values, u.values);
  }
  return res;
}

ResidualMatrix weighted_identity_residual(int q, const ZeroModeBasis& basis, const FieldSpec& U,
                                          const FieldSpec& /*b*/, double B0) {
  require_q(q);
  const auto& g = *basis.gauge;
  const auto Us = sample(U, g.mesh);
  const double Cq = landau_constant(q, B0);
  const auto n = static_cast<Eigen::Index>(basis.size());
  ResidualMatrix res{Eigen::MatrixXd::Zero(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& u = basis.modes[i];
    const auto w = raise_power(u, g, q);
    res.values(i, i) =
        g.mesh.weighted_dot(Us, w.values, w.values) - Cq * g.mesh.weighted_dot(Us, u.values, u.values);
  }
  return res;
}

std::vector<double> ToeplitzMatrix::eigenvalues() const {
  if (T.size() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T, Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

std::vector<double> ToeplitzMatrix::positive_eigenvalues() const {
  auto ev = eigenvalues();
  ev.erase(std::remove_if(ev.begin(), ev.end(), [](double x) { return !(x > 0.0); }), ev.end());
  return ev;
}

bool ToeplitzMatrix::is_symmetric(double rel_tol) const {
  const double scale = std::max(1e-300, T.cwiseAbs().maxCoeff());
  return (T - T.transpose()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

double level_offset(int q, int m, double B0, const RadialMesh& mesh) {
  const int n = q - (std::abs(m) - m) / 2;
  if (n < 0) throw ConfigError("channel carries no state of the requested Landau level");
  const auto ref_gauge = build_gauge(FieldSpec{}, B0, mesh);
  const auto op = build_channel(OperatorKind::pauli_minus, m, ref_gauge, nullptr, mesh);
  return eigenvalue_k(op.matrix, static_cast<std::size_t>(n)) - landau_level(q, B0);
}

ToeplitzMatrix build_T0(int q, const FieldSpec& V, const FieldSpec& /*b*/,
                        const ZeroModeBasis& basis, bool calibrate) {
  if (q < 0) throw ConfigError("Landau index q must be nonnegative");
  const auto& g = *basis.gauge;
  const auto Vs = sample(V, g.mesh);
  const double level = landau_level(q, g.B0);
  const auto n = static_cast<Eigen::Index>(basis.size());
  ToeplitzMatrix t;
  t.q = q;
  t.T = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& u = basis.modes[i];
    const auto w = raise_power(u, g, q);
    const auto op = build_channel(OperatorKind::pauli_minus, w.m, g, nullptr, g.mesh);
    const double shift = level + (calibrate && q > 0 ? level_offset(q, w.m, g.B0, g.mesh) : 0.0);
    const double ww = g.mesh.dot(w.values, w.values);
    t.T(i, i) = quadratic_form(op, w) - shift * ww + g.mesh.weighted_dot(Vs, w.values, w.values);
    t.channels.push_back(w.m);
    t.source.push_back(u.m);
  }
  return t;
}

ToeplitzMatrix build_T0_ladder(int q, const FieldSpec& V, const FieldSpec& b,
                               const ZeroModeBasis& basis) {
  if (q < 0) throw ConfigError("Landau index q must be nonnegative");
  const auto& g = *basis.gauge;
  const auto Vs = sample(V, g.mesh);
  const auto bs = sample(b, g.mesh);
  std::vector<double> weight(g.mesh.n);
  for (std::size_t i = 0; i < weight.size(); ++i) weight[i] = Vs[i] - 2.0 * bs[i];
  const double next_level = landau_level(q + 1, g.B0);
  const auto n = static_cast<Eigen::Index>(basis.size());
  ToeplitzMatrix t;
  t.q = q;
  t.T = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& u = basis.modes[i];
    const auto w = raise_power(u, g, q);
    const auto w1 = ladder_raise(w, g);
    t.T(i, i) = g.mesh.dot(w1.values, w1.values) - next_level * g.mesh.dot(w.values, w.values) +
                g.mesh.weighted_dot(weight, w.values, w.values);
    t.channels.push_back(w.m);
    t.source.push_back(u.m);
  }
  return t;
}

SqAction build_Sq_action(int q, const std::vector<RadialFunction>& states,
                         const ZeroModeBasis& zero_basis, const GaugeData& gauge, double max_loss) {
  if (q < 0) throw ConfigError("Landau index q must be nonnegative");
  const auto n = static_cast<Eigen::Index>(states.size());
  const double sign = (q % 2 == 0) ? 1.0 : -1.0;
  const double inv_Cq = 1.0 / landau_constant(q, gauge.B0);
  SqAction out;
  out.S = Eigen::MatrixXd::Zero(n, n);
  std::vector<RadialFunction> images;
  images.reserve(states.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& v = states[i];
    const auto w = lower_power(v, gauge, q);
    const double ww = gauge.mesh.dot(w.values, w.values);
    double c = 0.0;
    if (w.m >= 0 && w.m <= zero_basis.max_channel()) c = gauge.mesh.dot(w.values, zero_basis.modes[w.m].values);
    const double lost = ww > 0.0 ? 1.0 - c * c / ww : 0.0;
    out.lost.push_back(lost);
    if (lost > max_loss) {
      std::ostringstream msg;
      msg << "zero-mode projection of Q^" << q << " v (channel " << w.m << ") keeps only "
          << 100.0 * (1.0 - lost) << "% of its norm; the basis stops at m = "
          << zero_basis.max_channel();
      throw BasisTooSmall(msg.str());
    }
    RadialFunction p = w.m >= 0 && w.m <= zero_basis.max_channel() ? zero_basis.modes[w.m]
                                                                    : RadialFunction{w.m, w.mesh, std::vector<double>(w.mesh.n, 0.0)};
    for (double& x : p.values) x *= c;
    auto z = raise_power(p, gauge, q);
    for (double& x : z.values) x *= sign * inv_Cq;
    images.push_back(std::move(z));
  }
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (images[i].m == states[j].m) out.S(i, j) = gauge.mesh.dot(images[i].values, states[j].values);
  return out;
}

std::vector<const ChannelEigen*> cluster_eigens(const SpectrumTable& table,
                                                const ClusterWindow& window) {
  std::vector<const ChannelEigen*> out;
  for (const auto& s : cluster_extract(table, window)) out.push_back(&table.eigen(*s.row));
  return out;
}

ToeplitzMatrix build_Tq(int q, const FieldSpec& V, const SpectrumTable& table,
                        const ClusterWindow& window, const GaugeData& gauge) {
  if (!(gauge.mesh == table.mesh)) throw MeshMismatch("Toeplitz gauge and spectrum mesh differ");
  const auto states = cluster_eigens(table, window);
  const auto Vs = sample(V, gauge.mesh);
  const auto n = static_cast<Eigen::Index>(states.size());
  ToeplitzMatrix t;
  t.q = q;
  t.T = Eigen::MatrixXd::Zero(n, n);
  std::map<int, ChannelOperator> ops;
  for (const auto* s : states) {
    const int m = s->vector.m;
    if (!ops.count(m)) ops.emplace(m, build_channel(OperatorKind::pauli_minus, m, gauge, nullptr, gauge.mesh));
    t.channels.push_back(m);
    t.source.push_back(s->n);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& vi = states[i]->vector;
    const auto Pv = apply(ops.at(vi.m), vi);
    const double shift = window.level + states[i]->offset;
    for (Eigen::Index j = 0; j <= i; ++j) {
      const auto& vj = states[j]->vector;
      if (vj.m != vi.m) continue;
      double val = gauge.mesh.dot(Pv, vj.values) - shift * gauge.mesh.dot(vi.values, vj.values) +
                   gauge.mesh.weighted_dot(Vs, vi.values, vj.values);
      t.T(i, j) = val;
      t.T(j, i) = val;
    }
  }
  return t;
}

OffDiagReport offdiag_smallness(int /*q*/, const FieldSpec& V, const SpectrumTable& table,
                                const ClusterWindow& window, const std::vector<double>& amplitudes) {
  OffDiagReport rep;
  const auto states = cluster_eigens(table, window);
  const auto& mesh = table.mesh;
  const auto Vs = sample(V, mesh);
  std::map<int, std::vector<const ChannelEigen*>> by_channel;
  for (const auto* s : states) by_channel[s->vector.m].push_back(s);

  for (const auto& [m, group] : by_channel) {
    // x_i = (1 − P_q) V v_i within channel m; singular values from the Gram of x.
    std::vector<std::vector<double>> xs;
    for (const auto* s : group) {
      std::vector<double> x(mesh.n);
      for (std::size_t k = 0; k < mesh.n; ++k) x[k] = Vs[k] * s->vector.values[k];
      for (const auto* t : group) {
        const double c = mesh.dot(x, t->vector.values);
        for (std::size_t k = 0; k < mesh.n; ++k) x[k] -= c * t->vector.values[k];
      }
      xs.push_back(std::move(x));
    }
    const auto g = static_cast<Eigen::Index>(xs.size());
    Eigen::MatrixXd K(g, g);
    for (Eigen::Index i = 0; i < g; ++i)
      for (Eigen::Index j = 0; j < g; ++j) K(i, j) = mesh.dot(xs[i], xs[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < g; ++i) rep.singular_values.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i))));
  }
  std::sort(rep.singular_values.begin(), rep.singular_values.end(), std::greater<>());
  rep.largest = rep.singular_values.empty() ? 0.0 : rep.singular_values.front();
  for (double a : amplitudes) {
    rep.amplitudes.push_back(a);
    rep.largest_by_amplitude.push_back(std::abs(a) * rep.largest);
  }
  return rep;
}

void write_toeplitz_csv(std::ostream& os, const ToeplitzMatrix& t) {
  os << "i,j,value\n";
  os.precision(17);
  for (Eigen::Index i = 0; i < t.T.rows(); ++i)
    for (Eigen::Index j = 0; j < t.T.cols(); ++j)
      if (t.T(i, j) != 0.0) os << i << ',' << j << ',' << t.T(i, j) << '\n';
}

}  // namespace landau
