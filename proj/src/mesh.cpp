#include "landau/mesh.hpp"

#include <cmath>
#include <sstream>

#include "landau/errors.hpp"

namespace landau {

RadialMesh RadialMesh::from_radius(double r_max, double h) {
  if (!(h > 0.0) || !(r_max > 0.0)) {
    throw ConfigError("radial mesh requires h > 0 and R > 0");
  }
  const auto n = static_cast<std::size_t>(std::llround(r_max / h));
  if (n < 16) {
    std::ostringstream msg;
    msg << "radial mesh R = " << r_max << ", h = " << h << " has " << n
        << " nodes; at least 16 are required";
    throw ConfigError(msg.str());
  }
  return RadialMesh{h, n};
}

std::vector<double> RadialMesh::nodes() const {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = r(i);
  return out;
}

double RadialMesh::dot(std::span<const double> a, std::span<const double> b) const {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return h * s;
}

double RadialMesh::weighted_dot(std::span<const double> w, std::span<const double> a,
                                std::span<const double> b) const {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += w[i] * a[i] * b[i];
  return h * s;
}

}  // namespace landau
