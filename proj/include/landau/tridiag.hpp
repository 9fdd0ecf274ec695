#pragma once

#include <cstddef>
#include <vector>

namespace landau {

/// Real symmetric tridiagonal matrix: diag[0..n-1], off[0..n-2] with
/// off[i] = T(i, i+1) = T(i+1, i).
struct SymTridiag {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const { return diag.size(); }
  double operator()(std::size_t i, std::size_t j) const;
  std::vector<double> apply(const std::vector<double>& x) const;
};

/// Number of eigenvalues strictly less than x (Sturm sequence count).
std::size_t sturm_count(const SymTridiag& T, double x);

/// Gershgorin enclosure [lo, hi] of the spectrum.
std::pair<double, double> gershgorin(const SymTridiag& T);

/// k-th smallest eigenvalue (k = 0-based) by bisection.
double eigenvalue_k(const SymTridiag& T, std::size_t k);

/// All eigenvalues in [lo, hi), ascending.
std::vector<double> eigenvalues_in(const SymTridiag& T, double lo, double hi);

/// All eigenvalues <= e_max, ascending.
std::vector<double> eigenvalues_below(const SymTridiag& T, double e_max);

/// Unit eigenvectors (Euclidean norm) for the given ascending eigenvalues, by
/// inverse iteration with reorthogonalization inside near-degenerate groups.
/// Throws ConvergenceFailure if a vector does not settle.
std::vector<std::vector<double>> eigenvectors(const SymTridiag& T,
                                              const std::vector<double>& lambdas);

}  // namespace landau
