#include "landau/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "landau/errors.hpp"

namespace landau {

double SymTridiag::operator()(std::size_t i, std::size_t j) const {
  if (i == j) return diag[i];
  if (i + 1 == j) return off[i];
  if (j + 1 == i) return off[j];
  return 0.0;
}

std::vector<double> SymTridiag::apply(const std::vector<double>& x) const {
  const std::size_t n = size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[i] * x[i];
    if (i > 0) s += off[i - 1] * x[i - 1];
    if (i + 1 < n) s += off[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

namespace {

double pivmin(const SymTridiag& T) {
  double m = 1.0;
  for (double e : T.off) m = std::max(m, e * e);
  return m * std::numeric_limits<double>::min();
}

std::size_t count_below(const SymTridiag& T, double x, double pmin) {
  std::size_t neg = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < T.size(); ++i) {
    const double e2 = i > 0 ? T.off[i - 1] * T.off[i - 1] : 0.0;
    d = (T.diag[i] - x) - (i > 0 ? e2 / d : 0.0);
    if (std::abs(d) < pmin) d = -pmin;
    if (d < 0.0) ++neg;
  }
  return neg;
}

}  // namespace

std::size_t sturm_count(const SymTridiag& T, double x) { return count_below(T, x, pivmin(T)); }

std::pair<double, double> gershgorin(const SymTridiag& T) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const std::size_t n = T.size();
  for (std::size_t i = 0; i < n; ++i) {
    double rad = 0.0;
    if (i > 0) rad += std::abs(T.off[i - 1]);
    if (i + 1 < n) rad += std::abs(T.off[i]);
    lo = std::min(lo, T.diag[i] - rad);
    hi = std::max(hi, T.diag[i] + rad);
  }
  return {lo, hi};
}

namespace {

// Smallest x in [lo, hi] (to roundoff) with count_below(x) > k.
double bisect(const SymTridiag& T, std::size_t k, double lo, double hi, double pmin) {
  const double eps = std::numeric_limits<double>::epsilon();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 2.0 * eps * std::max(std::abs(lo), std::abs(hi)) + 4.0 * pmin) break;
    if (!(mid > lo && mid < hi)) break;
    if (count_below(T, mid, pmin) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double eigenvalue_k(const SymTridiag& T, std::size_t k) {
  if (k >= T.size()) throw NumericError("eigenvalue index out of range");
  auto [lo, hi] = gershgorin(T);
  const double pad = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  return bisect(T, k, lo - pad, hi + pad, pivmin(T));
}

std::vector<double> eigenvalues_in(const SymTridiag& T, double lo, double hi) {
  std::vector<double> out;
  if (T.size() == 0 || !(hi > lo)) return out;
  const double pmin = pivmin(T);
  auto [g_lo, g_hi] = gershgorin(T);
  const double pad = 1e-12 * std::max(1.0, std::max(std::abs(g_lo), std::abs(g_hi)));
  const double a = std::max(lo, g_lo - pad);
  const double b = std::min(hi, g_hi + pad);
  if (!(b > a)) return out;
  const std::size_t k0 = count_below(T, a, pmin);
  const std::size_t k1 = count_below(T, b, pmin);
  out.reserve(k1 - k0);
  for (std::size_t k = k0; k < k1; ++k) out.push_back(bisect(T, k, a, b, pmin));
  return out;
}

std::vector<double> eigenvalues_below(const SymTridiag& T, double e_max) {
  if (!std::isfinite(e_max)) throw NumericError("eigenvalue cutoff must be finite");
  auto [g_lo, g_hi] = gershgorin(T);
  (void)g_hi;
  const double pad = 1e-12 * std::max(1.0, std::abs(g_lo));
  // Half-open [lo, hi) must still include e_max itself.
  return eigenvalues_in(T, g_lo - pad, std::nextafter(e_max, std::numeric_limits<double>::infinity()));
}

namespace {

// Solves (T - λ)x = rhs in place with Gaussian elimination and partial
// pivoting; the factorization has up to two superdiagonals.
struct ShiftedLU {
  std::vector<double> u0, u1, u2, l;
  std::vector<char> swapped;

  ShiftedLU(const SymTridiag& T, double lambda) {
    const std::size_t n = T.size();
    u0.assign(n, 0.0);
    u1.assign(n, 0.0);
    u2.assign(n, 0.0);
    l.assign(n, 0.0);
    swapped.assign(n, 0);
    const double tiny = std::max(1.0, std::abs(lambda)) * std::numeric_limits<double>::epsilon() *
                        1e-3;
    // Working rows: current row i holds (a, b, c) at columns (i, i+1, i+2).
    double a = T.diag[0] - lambda;
    double b = n > 1 ? T.off[0] : 0.0;
    double c = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double sub = T.off[i];
      const double na = T.diag[i + 1] - lambda;
      const double nb = i + 2 < n ? T.off[i + 1] : 0.0;
      if (std::abs(sub) > std::abs(a)) {
        // Swap rows i and i+1.
        swapped[i] = 1;
        const double m = a / sub;
        l[i] = m;
        u0[i] = sub;
        u1[i] = na;
        u2[i] = nb;
        a = b - m * na;
        b = c - m * nb;
        c = 0.0;
      } else {
        if (a == 0.0) a = tiny;
        const double m = sub / a;
        l[i] = m;
        u0[i] = a;
        u1[i] = b;
        u2[i] = c;
        a = na - m * b;
        b = nb - m * c;
        c = 0.0;
      }
    }
    if (a == 0.0) a = tiny;
    u0[n - 1] = a;
  }

  void solve_upper(std::vector<double>& x) const {
    const std::size_t n = x.size();
    for (std::size_t k = n; k-- > 0;) {
      double s = x[k];
      if (k + 1 < n) s -= u1[k] * x[k + 1];
      if (k + 2 < n) s -= u2[k] * x[k + 2];
      x[k] = s / u0[k];
    }
  }

  void solve(std::vector<double>& x) const {
    const std::size_t n = x.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (swapped[i]) {
        std::swap(x[i], x[i + 1]);
        x[i + 1] -= l[i] * x[i];
      } else {
        x[i + 1] -= l[i] * x[i];
      }
    }
    solve_upper(x);
  }
};

double norm2(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

std::vector<std::vector<double>> eigenvectors(const SymTridiag& T,
                                              const std::vector<double>& lambdas) {
  const std::size_t n = T.size();
  std::vector<std::vector<double>> out;
  out.reserve(lambdas.size());
  // Graded matrices can carry enormous diagonal entries far from where the
  // eigenvectors live, so tolerances follow the coupling scale, not ‖T‖.
  double coupling = 0.0;
  for (double e : T.off) coupling = std::max(coupling, std::abs(e));
  std::size_t group_start = 0;
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    const double scale = std::max({1.0, std::abs(lambdas[j]), 2.0 * coupling});
    if (j > 0 && lambdas[j] - lambdas[j - 1] > 1e-9 * scale) group_start = j;
    // Separate coincident shifts inside a group slightly.
    double shift = lambdas[j];
    if (j > group_start) shift += static_cast<double>(j - group_start) * 1e-14 * scale;
    ShiftedLU lu(T, shift);

    std::vector<double> x(n);
    // Deterministic, non-symmetric start vector.
    for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i + 1) + 0.3 * static_cast<double>(j));
    bool ok = false;
    for (int it = 0; it < 8; ++it) {
      lu.solve(x);
      for (std::size_t k = group_start; k < j; ++k) {
        double d = 0.0;
        for (std::size_t i = 0; i < n; ++i) d += x[i] * out[k][i];
        for (std::size_t i = 0; i < n; ++i) x[i] -= d * out[k][i];
      }
      const double nrm = norm2(x);
      if (!(nrm > 0.0) || !std::isfinite(nrm)) break;
      for (double& v : x) v /= nrm;
      // Residual ‖(T − λ)x‖ relative to the matrix scale.
      const auto Tx = T.apply(x);
      double res = 0.0;
      for (std::size_t i = 0; i < n; ++i) res += (Tx[i] - lambdas[j] * x[i]) * (Tx[i] - lambdas[j] * x[i]);
      res = std::sqrt(res);
      if (it >= 1 && res <= 1e-9 * scale) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      std::ostringstream msg;
      msg << "inverse iteration did not converge for eigenvalue " << lambdas[j] << " (index " << j
          << ", dimension " << n << ")";
      throw ConvergenceFailure(msg.str());
    }
    // Fix the sign: largest-magnitude component positive.
    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(x[i]) > std::abs(x[imax])) imax = i;
    if (x[imax] < 0.0)
      for (double& v : x) v = -v;
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace landau
