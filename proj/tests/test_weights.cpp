#include <doctest.h>

#include <cmath>

#include "landau/errors.hpp"
#include "landau/weights.hpp"
#include "oracles.hpp"

using namespace landau;

namespace {

FieldSpec power(double c, double beta) {
  FieldSpec f;
  f.terms.push_back(ProfileTerm{PowerDecay{c, beta}});
  f.beta = beta;
  return f;
}

// E_+(λ) for W = a(1+r²)^{β/2}, B° = 1.
double closed_form(double a, double beta, double lambda) {
  if (lambda >= a) return 0.0;
  return 0.5 * (std::pow(a / lambda, -2.0 / beta) - 1.0);
}

}  // namespace

TEST_CASE("Landau constants") {
  CHECK(landau_constant(0, 1.0) == 1.0);
  CHECK(landau_constant(1, 1.0) == 2.0);
  CHECK(landau_constant(2, 1.0) == 8.0);
  CHECK(landau_constant(3, 0.5) == doctest::Approx(6.0));
  CHECK(landau_constant_prime(1) == 2.0);
  CHECK(landau_constant_prime(2) == 16.0);
  CHECK(landau_constant_prime(3) == 144.0);
}

TEST_CASE("effective weight combines V and 2qb") {
  const auto V = power(0.02, -4.0);
  const auto b = power(0.05, -3.0);
  const auto W = effective_weight(V, b, 2, 1.0, false);
  CHECK(W(1.0) == doctest::Approx(eval_field(V, 1.0) + 4.0 * eval_field(b, 1.0)));
  CHECK(W.decay_beta() == -3.0);
  const auto Ws = effective_weight(V, b, 2, 1.0, true);
  CHECK(Ws(1.0) == doctest::Approx(8.0 * W(1.0)));
  CHECK(effective_weight(V, b, 0, 1.0, false).decay_beta() == -4.0);
  CHECK_THROWS_AS(effective_weight(V, b, -1, 1.0, false), ConfigError);
}

TEST_CASE("counting measure matches the closed form for power weights") {
  const auto W = effective_weight(FieldSpec{}, power(0.05, -3.0), 1, 1.0, false);
  for (double lambda : log_grid(1e-5, 0.09, 6)) {
    CHECK(counting_measure(W, lambda, Sign::plus) ==
          doctest::Approx(closed_form(0.1, -3.0, lambda)).epsilon(1e-9));
    CHECK(counting_measure(W, lambda, Sign::minus) == 0.0);
  }
  CHECK(counting_measure(W, 0.2, Sign::plus) == 0.0);

  const auto W4 = effective_weight(FieldSpec{}, power(0.05, -4.0), 1, 1.0, false);
  for (double lambda : {1e-6, 1e-4, 1e-2})
    CHECK(counting_measure(W4, lambda, Sign::plus) ==
          doctest::Approx(closed_form(0.1, -4.0, lambda)).epsilon(1e-9));
}

TEST_CASE("counting measure agrees with cell counting") {
  FieldSpec V = power(0.02, -4.0);
  V.terms.push_back(ProfileTerm{GaussianBump{0.01, 3.0, 0.5}});
  const auto W = effective_weight(V, power(0.05, -3.0), 1, 1.0, false);
  for (double lambda : {3e-4, 4e-3, 2e-2}) {
    const double fast = counting_measure(W, lambda, Sign::plus);
    const double slow = oracle::brute_force_measure(W, lambda, Sign::plus, 1e4);
    CHECK(fast == doctest::Approx(slow).epsilon(1e-7));
  }
}

TEST_CASE("annular superlevel set of a Gaussian ring") {
  FieldSpec V;
  V.terms.push_back(ProfileTerm{GaussianBump{1.0, 5.0, 0.5}});
  const auto W = effective_weight(V, FieldSpec{}, 0, 2.0, false);
  const double lambda = 0.25;
  const double d = 0.5 * std::sqrt(std::log(1.0 / lambda));
  const auto set = superlevel_set(W, lambda, Sign::plus);
  REQUIRE(set.intervals.size() == 1);
  CHECK(set.intervals[0].first == doctest::Approx(5.0 - d).epsilon(1e-10));
  CHECK(set.intervals[0].second == doctest::Approx(5.0 + d).epsilon(1e-10));
  // (B°/2)((c+d)² − (c−d)²) = 2B°cd
  CHECK(counting_measure(W, lambda, Sign::plus) == doctest::Approx(2.0 * 2.0 * 5.0 * d).epsilon(1e-10));
}

TEST_CASE("sign flip symmetry of the counting measure") {
  FieldSpec V = power(0.03, -3.0);
  V.terms.push_back(ProfileTerm{GaussianBump{-0.02, 2.0, 0.7}});
  const auto b = power(0.01, -3.5);
  const auto W = effective_weight(V, b, 1, 1.0, false);
  const auto Wneg = effective_weight(V.scaled(-1.0), b.scaled(-1.0), 1, 1.0, false);
  for (double lambda : {1e-4, 1e-3, 5e-3}) {
    CHECK(counting_measure(Wneg, lambda, Sign::minus) == doctest::Approx(counting_measure(W, lambda, Sign::plus)));
    CHECK(counting_measure(Wneg, lambda, Sign::plus) == doctest::Approx(counting_measure(W, lambda, Sign::minus)));
  }
}

TEST_CASE("superlevel sets reaching the domain edge are reported") {
  const auto W = effective_weight(FieldSpec{}, power(0.05, -3.0), 1, 1.0, false);
  CHECK_THROWS_AS(counting_measure(W, 1e-6, Sign::plus, 10.0), UnboundedSet);
  CHECK_THROWS_AS(counting_measure(W, 0.0, Sign::plus), ConfigError);
}

TEST_CASE("regularity of power weights") {
  const auto W = effective_weight(FieldSpec{}, power(0.05, -3.0), 1, 1.0, false);
  const auto grid = log_grid(1e-6, 1e-4, 8);
  const auto rep = check_regularity(W, grid, 0.05, Sign::plus);
  CHECK(rep.pass);
  // E(λ(1−ε))/E(λ) → (1−ε)^{2/β} as λ → 0
  CHECK(rep.ratios.front() == doctest::Approx(std::pow(0.95, -2.0 / 3.0)).epsilon(1e-3));
  CHECK(rep.fitted_exponent == doctest::Approx(-2.0 / 3.0).epsilon(0.01));
  CHECK(rep.lower_constant > 0.0);

  CHECK_THROWS_AS(check_regularity(W, grid, 0.05, Sign::minus), DegenerateWeight);
  CHECK_THROWS_AS(check_regularity(W, grid, 1.5, Sign::plus), ConfigError);
}

TEST_CASE("compactly supported weights fail the growth bound") {
  FieldSpec V;
  V.terms.push_back(ProfileTerm{SmoothBump{0.1, 1.0, 2.0}});
  const auto W = effective_weight(V, FieldSpec{}, 0, 1.0, false);
  const auto rep = check_regularity(W, log_grid(1e-8, 1e-6, 8), 0.05, Sign::plus);
  CHECK(rep.max_ratio < 1.1);
  CHECK_FALSE(rep.pass);
}

TEST_CASE("log grid") {
  const auto g = log_grid(1e-3, 1.0, 24);
  CHECK(g.size() == 73);
  CHECK(g.front() == doctest::Approx(1e-3));
  CHECK(g.back() == doctest::Approx(1.0));
  CHECK(log_grid(1.0, 0.1, 4).empty());
}
