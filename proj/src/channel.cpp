#include "landau/channel.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

#include "landau/errors.hpp"

namespace landau {

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::pauli_minus:
      return "pauli_minus";
    case OperatorKind::pauli_plus:
      return "pauli_plus";
    case OperatorKind::schroedinger:
      return "schroedinger";
  }
  return "unknown";
}

OperatorKind parse_operator_kind(std::string_view name) {
  if (name == "pauli_minus" || name == "PauliMinus") return OperatorKind::pauli_minus;
  if (name == "pauli_plus" || name == "PauliPlus") return OperatorKind::pauli_plus;
  if (name == "schroedinger" || name == "Schroedinger") return OperatorKind::schroedinger;
  throw ConfigError("unknown operator kind '" + std::string(name) + "'");
}

double field_multiple(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::pauli_minus:
      return 0.0;
    case OperatorKind::pauli_plus:
      return 2.0;
    case OperatorKind::schroedinger:
      return 1.0;
  }
  return 0.0;
}

namespace {

constexpr double kExpClamp = 700.0;

void check_mesh(const GaugeData& gauge, const RadialMesh& mesh) {
  if (!(gauge.mesh == mesh) || gauge.A_theta.size() != mesh.n) {
    std::ostringstream msg;
    msg << "gauge mesh (h=" << gauge.mesh.h << ", n=" << gauge.mesh.n
        << ") does not match operator mesh (h=" << mesh.h << ", n=" << mesh.n << ")";
    throw MeshMismatch(msg.str());
  }
}

// P_- diagonal for m >= 0 in factorized form. With φ_i = (m+½)ln r_i − Ψ_i,
// row i reads (−w_{i−1} − w_{i+1} + (e^{φ_{i+1}−φ_i} + e^{φ_{i−1}−φ_i}) w_i)/h².
std::vector<double> factorized_diag(int m, const GaugeData& g) {
  const std::size_t n = g.mesh.n;
  const double inv_h2 = 1.0 / (g.mesh.h * g.mesh.h);
  const double mu = m + 0.5;
  std::vector<double> d(n);
  auto psi_at = [&](std::size_t j) { return j < n ? g.Psi_total[j] : g.Psi_wall; };
  for (std::size_t i = 0; i < n; ++i) {
    const double k = static_cast<double>(i + 1);  // r_i = k·h
    // φ_{i+1} − φ_i
    const double up = mu * std::log1p(1.0 / k) - (psi_at(i + 1) - g.Psi_total[i]);
    double s = std::exp(std::min(up, kExpClamp));
    if (i > 0) {
      const double down = -mu * std::log1p(1.0 / (k - 1.0)) - (g.Psi_total[i - 1] - g.Psi_total[i]);
      s += std::exp(std::min(down, kExpClamp));
    }
    d[i] = s * inv_h2;
  }
  return d;
}

std::vector<double> sampled_diag(int m, const GaugeData& g) {
  const std::size_t n = g.mesh.n;
  const double inv_h2 = 1.0 / (g.mesh.h * g.mesh.h);
  const double mm = static_cast<double>(m);
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = g.mesh.r(i);
    const double A = g.A_theta[i];
    d[i] = 2.0 * inv_h2 + (mm * mm - 0.25) / (r * r) - 2.0 * mm * A / r + A * A - g.B_total[i];
  }
  return d;
}

}  // namespace

ChannelOperator build_channel(OperatorKind kind, int m, const GaugeData& gauge,
                              const FieldSpec* V, const RadialMesh& mesh) {
  check_mesh(gauge, mesh);
  const std::size_t n = mesh.n;
  ChannelOperator op;
  op.kind = kind;
  op.m = m;
  op.mesh = mesh;
  op.includes_V = V != nullptr && !V->is_zero();

  op.base_diag = m >= 0 ? factorized_diag(m, gauge) : sampled_diag(m, gauge);
  const double s = field_multiple(kind);
  if (s != 0.0) {
    for (std::size_t i = 0; i < n; ++i) op.base_diag[i] += s * gauge.B_total[i];
  }
  op.potential.assign(n, 0.0);
  if (op.includes_V) {
    for (std::size_t i = 0; i < n; ++i) op.potential[i] = eval_field(*V, mesh.r(i));
  }
  op.matrix.diag.resize(n);
  for (std::size_t i = 0; i < n; ++i) op.matrix.diag[i] = op.base_diag[i] + op.potential[i];
  op.matrix.off.assign(n - 1, -1.0 / (mesh.h * mesh.h));
  return op;
}

double RadialFunction::norm() const { return std::sqrt(mesh.dot(values, values)); }

RadialFunction& RadialFunction::normalize() {
  const double nrm = norm();
  if (nrm > 0.0)
    for (double& v : values) v /= nrm;
  return *this;
}

RadialFunction zero_mode(int m, const GaugeData& gauge, const RadialMesh& mesh) {
  if (m < 0) throw ConfigError("zero modes exist only in channels m >= 0");
  check_mesh(gauge, mesh);
  const std::size_t n = mesh.n;
  std::vector<double> logw(n);
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    logw[i] = (m + 0.5) * std::log(mesh.r(i)) - gauge.Psi_total[i];
    peak = std::max(peak, logw[i]);
  }
  RadialFunction w{m, mesh, std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) w.values[i] = std::exp(logw[i] - peak);
  w.normalize();
  return w;
}

std::vector<double> derivative(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  if (n < 5) {
    for (std::size_t i = 0; i < n; ++i) {
      const double fp = i + 1 < n ? f[i + 1] : f[i];
      const double fm = i > 0 ? f[i - 1] : f[i];
      const double span = static_cast<double>((i + 1 < n ? 1 : 0) + (i > 0 ? 1 : 0));
      d[i] = span > 0 ? (fp - fm) / (span * h) : 0.0;
    }
    return d;
  }
  const double c = 1.0 / (12.0 * h);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    d[i] = c * (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]);
  }
  // One-sided fourth-order stencils at both ends.
  d[0] = c * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
  d[1] = c * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
  const std::size_t k = n - 1;
  d[k] = c * (25.0 * f[k] - 48.0 * f[k - 1] + 36.0 * f[k - 2] - 16.0 * f[k - 3] + 3.0 * f[k - 4]);
  d[k - 1] = c * (3.0 * f[k] + 10.0 * f[k - 1] - 18.0 * f[k - 2] + 6.0 * f[k - 3] - f[k - 4]);
  return d;
}

namespace {

RadialFunction ladder(const RadialFunction& w, const GaugeData& gauge, double sign, int new_m) {
  check_mesh(gauge, w.mesh);
  const std::size_t n = w.mesh.n;
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = w.values[i] / std::sqrt(w.mesh.r(i));
  const auto dg = derivative(g, w.mesh.h);
  RadialFunction out{new_m, w.mesh, std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double r = w.mesh.r(i);
    const double coeff = static_cast<double>(w.m) / r - gauge.A_theta[i];
    out.values[i] = std::sqrt(r) * (dg[i] + sign * coeff * g[i]);
  }
  return out;
}

}  // namespace

RadialFunction ladder_raise(const RadialFunction& w, const GaugeData& gauge) {
  return ladder(w, gauge, +1.0, w.m - 1);
}

RadialFunction ladder_lower(const RadialFunction& w, const GaugeData& gauge) {
  return ladder(w, gauge, -1.0, w.m + 1);
}

std::vector<double> apply(const ChannelOperator& op, const RadialFunction& w) {
  if (!(op.mesh == w.mesh)) throw MeshMismatch("function and operator live on different meshes");
  return op.matrix.apply(w.values);
}

double quadratic_form(const ChannelOperator& op, const RadialFunction& w) {
  const auto Aw = apply(op, w);
  return w.mesh.dot(Aw, w.values);
}

double rayleigh_quotient(const ChannelOperator& op, const RadialFunction& w) {
  return quadratic_form(op, w) / w.mesh.dot(w.values, w.values);
}

void write_matrix_csv(std::ostream& os, const ChannelOperator& op) {
  os << "i,j,value\n";
  os.precision(17);
  const auto& T = op.matrix;
  for (std::size_t i = 0; i < T.size(); ++i) {
    if (i > 0) os << i << ',' << i - 1 << ',' << T.off[i - 1] << '\n';
    os << i << ',' << i << ',' << T.diag[i] << '\n';
    if (i + 1 < T.size()) os << i << ',' << i + 1 << ',' << T.off[i] << '\n';
  }
}

void write_function_csv(std::ostream& os, const RadialFunction& w) {
  os << "r,value\n";
  os.precision(17);
  for (std::size_t i = 0; i < w.mesh.n; ++i) os << w.mesh.r(i) << ',' << w.values[i] << '\n';
}

}  // namespace landau
