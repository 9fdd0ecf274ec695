#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace landau {

/// Uniform radial mesh r_i = (i+1)·h, i = 0..n-1. The origin is not a node and
/// Dirichlet walls sit at r = 0 and r = (n+1)·h.
struct RadialMesh {
  double h = 0.0;
  std::size_t n = 0;

  /// Mesh with step h whose last node is the node closest to r_max.
  static RadialMesh from_radius(double r_max, double h);

  double r(std::size_t i) const { return static_cast<double>(i + 1) * h; }
  double r_max() const { return static_cast<double>(n) * h; }
  std::size_t size() const { return n; }

  std::vector<double> nodes() const;

  /// Discrete L2(0, R; dr) inner product h·Σ a_i b_i.
  double dot(std::span<const double> a, std::span<const double> b) const;
  double weighted_dot(std::span<const double> w, std::span<const double> a,
                      std::span<const double> b) const;

  bool operator==(const RadialMesh&) const = default;
};

}  // namespace landau
