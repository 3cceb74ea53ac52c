#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hawkes/combinat.hpp"
#include "hawkes/polytope.hpp"
#include "hawkes/stats.hpp"

using namespace hawkes;

TEST_CASE("compensator vector validation") {
  CHECK_NOTHROW(validate_compensator({.values = {0.1, 0.4, 1.3}, .boundary_gaps = {}, .rho = 0.75}));
  CHECK_NOTHROW(validate_compensator({.values = {}, .boundary_gaps = {}, .rho = 0.5}));
  CHECK_THROWS_AS(validate_compensator({.values = {0.4, 0.3}, .boundary_gaps = {}, .rho = 0.75}), std::invalid_argument);
  CHECK_THROWS_AS(validate_compensator({.values = {0.8}, .boundary_gaps = {}, .rho = 0.75}), std::invalid_argument);   // >= rho
  CHECK_THROWS_AS(validate_compensator({.values = {-0.1, 0.2}, .boundary_gaps = {}, .rho = 0.75}), std::invalid_argument);
  CHECK_THROWS_AS(validate_compensator({.values = {0.1}, .boundary_gaps = {}, .rho = 1.2}), std::domain_error);
}

TEST_CASE("polytope sampler basics") {
  RandomStream rng(2024);
  CHECK(sample_compensator_points(0, 0.75, rng).size() == 0);

  // k = 1: the single point is uniform on (0, rho).
  const double rho = 0.6;
  std::vector<double> singles(20000);
  for (auto& v : singles) {
    const auto lam = sample_compensator_points(1, rho, rng);
    REQUIRE(lam.size() == 1);
    REQUIRE(lam.values[0] > 0.0);
    REQUIRE(lam.values[0] < rho);
    v = lam.values[0];
  }
  const double d = ks_one_sample(EmpiricalSample(singles),
                                 [rho](double x) { return std::clamp(x / rho, 0.0, 1.0); });
  CHECK(d < 0.015);
}

TEST_CASE("traced draw exposes the spine behind the points") {
  RandomStream rng(2025);
  for (int trial = 0; trial < 200; ++trial) {
    const auto sample = sample_compensator_points_traced(6, 0.75, rng);
    REQUIRE(is_parking_function(sample.pf.entries));
    REQUIRE(sample.uniforms.size() == 6);
    std::vector<double> rebuilt(6);
    for (std::size_t i = 0; i < 6; ++i) {
      REQUIRE(sample.uniforms[i] > 0.0);
      REQUIRE(sample.uniforms[i] < 1.0);
      rebuilt[i] = static_cast<double>(sample.pf.entries[i]) - sample.uniforms[i];
    }
    std::sort(rebuilt.begin(), rebuilt.end());
    for (std::size_t i = 0; i < 6; ++i) {
      REQUIRE(sample.lambda.values[i] == doctest::Approx(0.75 * rebuilt[i]).epsilon(1e-12));
    }
    CHECK_NOTHROW(validate_compensator(sample.lambda));
  }
}

TEST_CASE("plain and traced samplers agree draw for draw") {
  for (int trial = 0; trial < 100; ++trial) {
    RandomStream a(9000 + trial);
    RandomStream b(9000 + trial);
    const std::size_t k = 1 + a.uniform_int(40);
    b.uniform_int(40);
    const auto plain = sample_compensator_points(k, 0.7, a);
    const auto traced = sample_compensator_points_traced(k, 0.7, b);
    REQUIRE(plain.values == traced.lambda.values);
    REQUIRE(plain.boundary_gaps == traced.lambda.boundary_gaps);
  }
}

TEST_CASE("region classification takes ceilings with upward ties") {
  const double rho = 0.5;
  const CompensatorVector ramp{.values = {0.4 * rho, 1.2 * rho, 2.9 * rho}, .boundary_gaps = {}, .rho = rho};
  CHECK(classify_region(ramp).steps == std::vector<int>{1, 2, 3});
  const CompensatorVector low{.values = {0.2 * rho, 0.5 * rho, 0.8 * rho}, .boundary_gaps = {}, .rho = rho};
  CHECK(classify_region(low).steps == std::vector<int>{1, 1, 1});
  // A coordinate exactly on a multiple of rho belongs to the cell above it.
  const CompensatorVector boundary{.values = {0.5 * rho, 1.0 * rho}, .boundary_gaps = {}, .rho = rho};
  CHECK(classify_region(boundary).steps == std::vector<int>{1, 2});
}

TEST_CASE("region frequencies at k = 3 match the cell probabilities") {
  RandomStream rng(2026);
  const double rho = 0.85;
  const auto regions = enumerate_dyck(3);
  std::vector<std::uint64_t> counts(regions.size(), 0);
  const std::size_t n = 200000;
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = classify_region(sample_compensator_points(3, rho, rng));
    const auto hit = std::find(regions.begin(), regions.end(), d);
    REQUIRE(hit != regions.end());
    ++counts[static_cast<std::size_t>(hit - regions.begin())];
  }
  std::vector<double> probs;
  for (const auto& d : regions) {
    probs.push_back(region_probability(d));
  }
  CHECK(chi_square_gof(counts, probs).p_value > 0.001);
}

TEST_CASE("rejection oracle agrees with the direct sampler") {
  RandomStream rng(2027);
  const double rho = 0.75;

  // k = 1: identical law.
  std::vector<double> direct(20000), oracle(20000);
  for (auto& v : direct) v = sample_compensator_points(1, rho, rng).values[0];
  for (auto& v : oracle) v = rejection_sample_polytope(1, rho, rng).values[0];
  CHECK(ks_two_sample(EmpiricalSample(direct), EmpiricalSample(oracle)) < 0.015);

  // k = 2: acceptance probability is the cell volume over the box, 3/4.
  std::uint64_t total_attempts = 0;
  const std::size_t reps = 20000;
  for (std::size_t i = 0; i < reps; ++i) {
    std::uint64_t attempts = 0;
    const auto lam = rejection_sample_polytope(2, rho, rng, &attempts);
    total_attempts += attempts;
    CHECK_NOTHROW(validate_compensator(lam));
  }
  const double rate = static_cast<double>(reps) / static_cast<double>(total_attempts);
  const double se = std::sqrt(0.75 * 0.25 / static_cast<double>(total_attempts));
  CHECK(std::abs(rate - 0.75) < 3.0 * se);

  CHECK_THROWS_AS(rejection_sample_polytope(13, rho, rng), std::length_error);
}

TEST_CASE("every sampled vector satisfies the polytope and parking invariants") {
  RandomStream rng(2028);
  const double rho = 0.75;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t k = 1 + rng.uniform_int(8);
    const auto lam = sample_compensator_points(k, rho, rng);
    REQUIRE_NOTHROW(validate_compensator(lam));
    const auto d = classify_region(lam);
    REQUIRE(is_dyck_path(d.steps));
    // The parking condition only sees the multiset, so the sorted check
    // covers every shuffle of the ceilings.
    REQUIRE(is_parking_function(d.steps));
  }
}
