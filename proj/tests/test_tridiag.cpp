#include <doctest.h>

#include <cmath>
#include <random>

#include "landau/errors.hpp"
#include "landau/tridiag.hpp"
#include "oracles.hpp"

using namespace landau;

namespace {

SymTridiag random_tridiag(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SymTridiag T;
  T.diag.resize(n);
  T.off.resize(n - 1);
  for (auto& d : T.diag) d = 4.0 * u(rng);
  for (auto& e : T.off) e = u(rng);
  return T;
}

double residual(const SymTridiag& T, const std::vector<double>& x, double lambda) {
  const auto y = T.apply(x);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (y[i] - lambda * x[i]) * (y[i] - lambda * x[i]);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("diagonal matrix returns its diagonal") {
  SymTridiag T;
  for (int i = 1; i <= 16; ++i) T.diag.push_back(i);
  T.off.assign(15, 0.0);
  const auto ev = eigenvalues_below(T, 100.0);
  REQUIRE(ev.size() == 16);
  for (int i = 0; i < 16; ++i) CHECK(ev[i] == doctest::Approx(i + 1.0).epsilon(1e-15));
  CHECK(eigenvalues_below(T, 5.0).size() == 5);
  CHECK(eigenvalues_in(T, 3.0, 6.0).size() == 3);
  const auto vecs = eigenvectors(T, ev);
  for (int i = 0; i < 16; ++i) CHECK(std::abs(vecs[i][i]) == doctest::Approx(1.0));
}

TEST_CASE("bisection agrees with a dense eigensolver") {
  std::mt19937_64 rng(7);
  const auto T = random_tridiag(200, rng);
  const auto dense = oracle::dense_eigenvalues(T);
  const auto ev = eigenvalues_below(T, 1e6);
  REQUIRE(ev.size() == dense.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < ev.size(); ++i) worst = std::max(worst, std::abs(ev[i] - dense[i]));
  CHECK(worst < 1e-10);
  for (std::size_t k : {std::size_t{0}, std::size_t{57}, std::size_t{199}})
    CHECK(eigenvalue_k(T, k) == doctest::Approx(dense[k]).epsilon(1e-12));
  CHECK_THROWS_AS(eigenvalue_k(T, 200), NumericError);
}

TEST_CASE("Sturm count and Gershgorin bounds") {
  std::mt19937_64 rng(11);
  const auto T = random_tridiag(60, rng);
  const auto dense = oracle::dense_eigenvalues(T);
  for (double x : {-3.0, -0.5, 0.0, 1.7, 3.9}) {
    const auto expected = static_cast<std::size_t>(std::count_if(dense.begin(), dense.end(), [&](double e) { return e < x; }));
    CHECK(sturm_count(T, x) == expected);
  }
  const auto [lo, hi] = gershgorin(T);
  CHECK(lo <= dense.front());
  CHECK(hi >= dense.back());
}

TEST_CASE("eigenvalues interlace under deletion of the last row") {
  std::mt19937_64 rng(3);
  const auto T = random_tridiag(80, rng);
  SymTridiag S{std::vector<double>(T.diag.begin(), T.diag.end() - 1),
               std::vector<double>(T.off.begin(), T.off.end() - 1)};
  const auto a = eigenvalues_below(T, 1e6);
  const auto b = eigenvalues_below(S, 1e6);
  REQUIRE(b.size() + 1 == a.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    CHECK(a[i] <= b[i] + 1e-12);
    CHECK(b[i] <= a[i + 1] + 1e-12);
  }
}

TEST_CASE("inverse iteration yields orthonormal eigenvectors") {
  std::mt19937_64 rng(5);
  const auto T = random_tridiag(150, rng);
  const auto ev = eigenvalues_in(T, -1.0, 1.0);
  REQUIRE(ev.size() > 3);
  const auto vecs = eigenvectors(T, ev);
  for (std::size_t i = 0; i < ev.size(); ++i) {
    CHECK(residual(T, vecs[i], ev[i]) < 1e-9);
    for (std::size_t j = 0; j <= i; ++j) {
      double d = 0.0;
      for (std::size_t k = 0; k < T.size(); ++k) d += vecs[i][k] * vecs[j][k];
      CHECK(d == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("graded matrices keep accurate low eigenpairs") {
  // Entries near the top grow like 2^{80}; the low spectrum lives far away.
  const std::size_t n = 400;
  SymTridiag T;
  T.diag.resize(n);
  T.off.assign(n - 1, -1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / 20.0;
    T.diag[i] = 2.0 + 0.01 * (x - 10.0) * (x - 10.0) + (i < 40 ? std::pow(2.0, 80.0 - 2.0 * i) : 0.0);
  }
  const auto ev = eigenvalues_below(T, 2.2);
  REQUIRE(ev.size() >= 3);
  const auto vecs = eigenvectors(T, ev);
  for (std::size_t i = 0; i < ev.size(); ++i) {
    CHECK(residual(T, vecs[i], ev[i]) < 1e-8);
    double head = 0.0;
    for (std::size_t k = 0; k < 20; ++k) head += vecs[i][k] * vecs[i][k];
    CHECK(head < 1e-12);
  }
}
