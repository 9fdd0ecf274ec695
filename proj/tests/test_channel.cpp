#include <doctest.h>

#include <cmath>
#include <sstream>

#include "landau/channel.hpp"
#include "landau/errors.hpp"
#include "landau/weights.hpp"
#include "oracles.hpp"

using namespace landau;

namespace {

FieldSpec gaussian_b(double amp = 0.3) {
  FieldSpec b;
  b.terms.push_back({GaussianBump{amp, 2.0, 1.0}, 1.0});
  b.terms.push_back({PowerDecay{0.05, -3.0}, 1.0});
  b.beta = -3.0;
  return b;
}

// Smooth test function w = √r·g with g = e^{−2(r−4)²}, negligible at both walls.
RadialFunction bump_function(int m, const RadialMesh& mesh) {
  RadialFunction w{m, mesh, std::vector<double>(mesh.n, 0.0)};
  for (std::size_t i = 0; i < mesh.n; ++i) {
    const double r = mesh.r(i);
    w.values[i] = std::sqrt(r) * std::exp(-2.0 * (r - 4.0) * (r - 4.0));
  }
  return w;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("operator kind names") {
  CHECK(parse_operator_kind("pauli_minus") == OperatorKind::pauli_minus);
  CHECK(parse_operator_kind("PauliPlus") == OperatorKind::pauli_plus);
  CHECK(parse_operator_kind("Schroedinger") == OperatorKind::schroedinger);
  CHECK(to_string(OperatorKind::pauli_plus) == "pauli_plus");
  CHECK_THROWS_AS(parse_operator_kind("dirac"), ConfigError);
  CHECK(field_multiple(OperatorKind::pauli_minus) == 0.0);
  CHECK(field_multiple(OperatorKind::pauli_plus) == 2.0);
  CHECK(field_multiple(OperatorKind::schroedinger) == 1.0);
}

TEST_CASE("unperturbed channel spectra sit on the Landau levels") {
  const auto mesh = RadialMesh::from_radius(20.0, 0.005);
  const auto gauge = build_gauge(FieldSpec{}, 1.0, mesh);
  const auto pm = eigenvalues_below(build_channel(OperatorKind::pauli_minus, 0, gauge, nullptr, mesh).matrix, 5.0);
  REQUIRE(pm.size() == 3);
  CHECK(std::abs(pm[0]) < 1e-10);
  CHECK(pm[1] == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(pm[2] == doctest::Approx(4.0).epsilon(1e-4));
  const auto hs = eigenvalues_below(build_channel(OperatorKind::schroedinger, 0, gauge, nullptr, mesh).matrix, 2.0);
  REQUIRE(hs.size() == 1);
  CHECK(hs[0] == doctest::Approx(1.0).epsilon(1e-8));
  const auto pp = eigenvalues_below(build_channel(OperatorKind::pauli_plus, 0, gauge, nullptr, mesh).matrix, 3.0);
  REQUIRE(pp.size() == 1);
  CHECK(pp[0] == doctest::Approx(2.0).epsilon(1e-8));
  // Negative channels start at Landau index |m|.
  const auto neg = eigenvalues_below(build_channel(OperatorKind::pauli_minus, -2, gauge, nullptr, mesh).matrix, 7.0);
  REQUIRE(neg.size() == 2);
  CHECK(neg[0] == doctest::Approx(4.0).epsilon(1e-4));
  CHECK(neg[1] == doctest::Approx(6.0).epsilon(1e-4));
}

TEST_CASE("channel matrices have the uniform off-diagonal and are nonnegative for P_-") {
  const auto mesh = RadialMesh::from_radius(12.0, 0.01);
  const auto gauge = build_gauge(gaussian_b(), 1.0, mesh);
  for (int m : {-3, 0, 4}) {
    const auto op = build_channel(OperatorKind::pauli_minus, m, gauge, nullptr, mesh);
    REQUIRE(op.matrix.size() == mesh.n);
    REQUIRE(op.matrix.off.size() == mesh.n - 1);
    for (double e : op.matrix.off) CHECK(e == doctest::Approx(-1.0 / (mesh.h * mesh.h)));
    CHECK(eigenvalue_k(op.matrix, 0) > -1e-8);
    CHECK_FALSE(op.includes_V);
  }
}

TEST_CASE("zero modes") {
  const auto mesh = RadialMesh::from_radius(20.0, 0.005);
  SUBCASE("free field zero mode matches the Gaussian") {
    const auto gauge = build_gauge(FieldSpec{}, 1.0, mesh);
    const auto u = zero_mode(0, gauge, mesh);
    CHECK(u.norm() == doctest::Approx(1.0).epsilon(1e-14));
    std::vector<double> ref(mesh.n);
    for (std::size_t i = 0; i < mesh.n; ++i) ref[i] = oracle::landau_state(0, 0, 1.0, mesh.r(i));
    const double s = std::sqrt(mesh.dot(ref, ref));
    double worst = 0.0;
    for (std::size_t i = 0; i < mesh.n; ++i) worst = std::max(worst, std::abs(u.values[i] - ref[i] / s));
    CHECK(worst < 1e-12);
  }
  SUBCASE("perturbed zero mode is in the discrete kernel") {
    const auto gauge = build_gauge(gaussian_b(), 1.0, mesh);
    for (int m : {0, 5, 30}) {
      const auto op = build_channel(OperatorKind::pauli_minus, m, gauge, nullptr, mesh);
      const auto u = zero_mode(m, gauge, mesh);
      CHECK(std::abs(rayleigh_quotient(op, u)) < 1e-6);
      CHECK(max_abs(ladder_lower(u, gauge).values) < 1e-6);
    }
  }
}

TEST_CASE("ladder norms reproduce the Landau constants") {
  const auto mesh = RadialMesh::from_radius(20.0, 0.005);
  const auto gauge = build_gauge(FieldSpec{}, 1.0, mesh);
  auto w = zero_mode(0, gauge, mesh);
  for (int q = 1; q <= 3; ++q) {
    w = ladder_raise(w, gauge);
    CHECK(w.m == -q);
    CHECK(w.norm() * w.norm() == doctest::Approx(landau_constant(q, 1.0)).epsilon(1e-4));
  }
}

TEST_CASE("ladder commutator equals twice the field") {
  const auto mesh = RadialMesh::from_radius(10.0, 0.005);
  const auto gauge = build_gauge(gaussian_b(), 1.0, mesh);
  const auto w = bump_function(2, mesh);
  const auto rl = ladder_raise(ladder_lower(w, gauge), gauge);
  const auto lr = ladder_lower(ladder_raise(w, gauge), gauge);
  REQUIRE(rl.m == 2);
  REQUIRE(lr.m == 2);
  double worst = 0.0;
  for (std::size_t i = 0; i < mesh.n; ++i)
    worst = std::max(worst, std::abs(rl.values[i] - lr.values[i] - 2.0 * gauge.B_total[i] * w.values[i]));
  CHECK(worst < 1e-6 * max_abs(w.values));
}

TEST_CASE("P_- quadratic form factorizes through the lowering operator") {
  const auto mesh = RadialMesh::from_radius(10.0, 0.005);
  const auto gauge = build_gauge(gaussian_b(), 1.0, mesh);
  for (int m : {-2, 0, 3}) {
    const auto op = build_channel(OperatorKind::pauli_minus, m, gauge, nullptr, mesh);
    const auto w = bump_function(m, mesh);
    const auto lw = ladder_lower(w, gauge);
    // The three-point matrix is second order, so agreement is O(h²).
    CHECK(quadratic_form(op, w) == doctest::Approx(mesh.dot(lw.values, lw.values)).epsilon(1e-4));
  }
}

TEST_CASE("eigenvalues converge at second order") {
  FieldSpec b;
  b.terms.push_back({PowerDecay{0.05, -3.0}, 1.0});
  for (int m : {-1, 1, 3}) {
    std::vector<double> E;
    for (double h : {0.02, 0.01, 0.005}) {
      const auto mesh = RadialMesh::from_radius(12.0, h);
      const auto gauge = build_gauge(b, 1.0, mesh);
      const auto op = build_channel(OperatorKind::pauli_minus, m, gauge, nullptr, mesh);
      E.push_back(eigenvalue_k(op.matrix, 1));
    }
    const double ratio = (E[0] - E[1]) / (E[1] - E[2]);
    CAPTURE(m);
    CHECK(ratio > 3.6);
    CHECK(ratio < 4.4);
  }
}

TEST_CASE("H and P_+ differ from P_- by multiples of B") {
  const auto mesh = RadialMesh::from_radius(12.0, 0.01);
  const auto b = gaussian_b();
  const auto gauge = build_gauge(b, 1.0, mesh);
  FieldSpec V;
  V.terms.push_back({PowerDecay{0.2, -4.0}, 1.0});
  V.beta = -4.0;
  const FieldSpec Vb = V + b;
  const FieldSpec V2b = V + b.scaled(2.0);
  for (int m : {-4, 0, 6}) {
    const auto H = build_channel(OperatorKind::schroedinger, m, gauge, &V, mesh);
    const auto Pp = build_channel(OperatorKind::pauli_plus, m, gauge, &V, mesh);
    const auto P1 = build_channel(OperatorKind::pauli_minus, m, gauge, &Vb, mesh);
    const auto P2 = build_channel(OperatorKind::pauli_minus, m, gauge, &V2b, mesh);
    CHECK(H.includes_V);
    for (std::size_t i = 0; i < mesh.n; ++i) {
      const double d1 = H.matrix.diag[i] - P1.matrix.diag[i] - 1.0;
      const double d2 = Pp.matrix.diag[i] - P2.matrix.diag[i] - 2.0;
      CHECK(std::abs(d1) <= 1e-12 * std::abs(H.matrix.diag[i]));
      CHECK(std::abs(d2) <= 1e-12 * std::abs(Pp.matrix.diag[i]));
    }
    CHECK(H.matrix.off == P1.matrix.off);
  }
}

TEST_CASE("mesh consistency is enforced") {
  const auto mesh = RadialMesh::from_radius(10.0, 0.01);
  const auto other = RadialMesh::from_radius(10.0, 0.02);
  const auto gauge = build_gauge(FieldSpec{}, 1.0, mesh);
  CHECK_THROWS_AS(build_channel(OperatorKind::pauli_minus, 0, gauge, nullptr, other), MeshMismatch);
  const auto op = build_channel(OperatorKind::pauli_minus, 0, gauge, nullptr, mesh);
  RadialFunction w{0, other, std::vector<double>(other.n, 1.0)};
  CHECK_THROWS_AS(apply(op, w), MeshMismatch);
}

TEST_CASE("CSV export") {
  const auto mesh = RadialMesh::from_radius(0.2, 0.01);
  const auto gauge = build_gauge(FieldSpec{}, 1.0, mesh);
  const auto op = build_channel(OperatorKind::pauli_minus, 1, gauge, nullptr, mesh);
  std::ostringstream os;
  write_matrix_csv(os, op);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "i,j,value");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == static_cast<int>(3 * mesh.n - 2));
  std::ostringstream fs;
  write_function_csv(fs, zero_mode(1, gauge, mesh));
  CHECK(fs.str().rfind("r,value\n", 0) == 0);
}
