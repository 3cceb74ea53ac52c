#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hawkes/cluster.hpp"
#include "hawkes/stats.hpp"

using namespace hawkes;

namespace {

std::vector<double> borel_probs(double rho, std::size_t max_k) {
  std::vector<double> probs;
  double head = 0.0;
  for (std::size_t k = 1; k <= max_k; ++k) {
    probs.push_back(borel_pmf(rho, k));
    head += probs.back();
  }
  probs.push_back(1.0 - head);
  return probs;
}

void check_sizes_against_borel(const std::vector<std::uint64_t>& sizes, double rho) {
  constexpr std::size_t max_k = 20;
  std::vector<std::uint64_t> counts(max_k + 1, 0);
  for (const auto n : sizes) {
    ++counts[std::min<std::uint64_t>(n, max_k + 1) - 1];
  }
  const auto binned = merge_tail_categories(counts, borel_probs(rho, max_k), 5.0);
  CHECK(chi_square_gof(binned.observed, binned.probs).p_value > 0.001);
}

}  // namespace

TEST_CASE("closed-form exponential inversion") {
  const double alpha = 3.0, beta = 4.0, rho = alpha / beta;

  // Single point: inverse of the one-event integrated kernel.
  const double a = 0.3;
  const CompensatorVector lam{.values = {rho * (1.0 - std::exp(-beta * a))}, .boundary_gaps = {}, .rho = rho};
  const Cluster cluster = invert_exponential(alpha, beta, lam);
  REQUIRE(cluster.size() == 2);
  CHECK(cluster.epochs[1] == doctest::Approx(a).epsilon(1e-12));

  CHECK_THROWS_AS(invert_exponential(alpha, beta, CompensatorVector{.values = {0.75}, .boundary_gaps = {}, .rho = rho}),
                  std::domain_error);
  CHECK_THROWS_AS(invert_exponential(alpha, beta, CompensatorVector{.values = {0.1}, .boundary_gaps = {}, .rho = 0.5}),
                  std::domain_error);
  CHECK_THROWS_AS(invert_exponential(5.0, 4.0, CompensatorVector{.values = {0.1}, .boundary_gaps = {}, .rho = 1.25}),
                  std::domain_error);
}

TEST_CASE("closed-form inversion reproduces the compensator it was fed") {
  RandomStream rng(30);
  const ExponentialKernel expo(3.0, 4.0);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t k = 1 + rng.uniform_int(10);
    const auto lam = sample_compensator_points(k, expo.branching_ratio(), rng);
    const Cluster cluster = invert_exponential(3.0, 4.0, lam);
    const auto rebuilt = compensator_at_epochs(expo, cluster);
    for (std::size_t i = 0; i < k; ++i) {
      worst = std::max(worst, std::abs(rebuilt.values[i] - lam.values[i]));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("inversion round-trips the forward compensator map") {
  RandomStream rng(31);
  const ExponentialKernel expo(3.0, 4.0);
  const PowerLawKernel power(1.0, 2.0);
  for (const ExcitationKernel* kernel : {static_cast<const ExcitationKernel*>(&expo),
                                         static_cast<const ExcitationKernel*>(&power)}) {
    double worst = 0.0;
    double worst_residual = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
      const Cluster cluster = branching_cluster(*kernel, rng);
      if (cluster.size() == 1) continue;
      const auto lam = compensator_at_epochs(*kernel, cluster);
      InversionReport report;
      const Cluster rebuilt = invert_compensator(*kernel, lam, &report);
      REQUIRE(rebuilt.size() == cluster.size());
      for (std::size_t i = 0; i < cluster.size(); ++i) {
        worst = std::max(worst, std::abs(rebuilt.epochs[i] - cluster.epochs[i]));
      }
      worst_residual = std::max(worst_residual, report.max_residual());
    }
    CHECK(worst <= 1e-9);
    CHECK(worst_residual <= 1e-10);
  }
}

TEST_CASE("forced newton agrees with the exponential closed form") {
  RandomStream rng(32);
  const ExponentialKernel expo(3.0, 4.0);
  double worst = 0.0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = 1 + rng.uniform_int(12);
    const auto lam = sample_compensator_points(k, expo.branching_ratio(), rng);
    InversionReport newton_report;
    const Cluster via_newton =
        invert_compensator(expo, lam, &newton_report, InversionStrategy::force_newton);
    CHECK(newton_report.method == InversionMethod::newton_bisection);
    CHECK(newton_report.max_residual() <= 1e-10);
    const Cluster closed = invert_exponential(3.0, 4.0, lam);
    for (std::size_t i = 0; i < closed.size(); ++i) {
      worst = std::max(worst, std::abs(via_newton.epochs[i] - closed.epochs[i]));
    }
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("automatic inversion reports the closed-form method for exponentials") {
  RandomStream rng(33);
  const ExponentialKernel expo(3.0, 4.0);
  const auto lam = sample_compensator_points(4, expo.branching_ratio(), rng);
  InversionReport report;
  invert_compensator(expo, lam, &report);
  CHECK(report.method == InversionMethod::closed_form);
  CHECK(report.residuals.size() == 4);

  const PowerLawKernel power(1.0, 2.0);
  CHECK_THROWS_AS(invert_compensator(power, lam), std::domain_error);  // rho mismatch
}

TEST_CASE("simulated clusters respect the contract") {
  RandomStream rng(34);
  const ExponentialKernel expo(3.0, 4.0);

  const Cluster singleton = simulate_cluster(expo, rng, std::uint64_t{1});
  CHECK(singleton.epochs == std::vector<double>{0.0});
  CHECK(singleton.duration() == 0.0);

  const Cluster conditioned = simulate_cluster(expo, rng, std::uint64_t{50});
  CHECK(conditioned.size() == 50);
  CHECK_NOTHROW(validate_cluster(conditioned));

  CHECK_THROWS_AS(simulate_cluster(expo, rng, std::uint64_t{0}), std::domain_error);

  std::vector<std::uint64_t> sizes(20000);
  for (auto& n : sizes) {
    const Cluster cluster = simulate_cluster(expo, rng);
    validate_cluster(cluster);
    n = cluster.size();
  }
  check_sizes_against_borel(sizes, 0.75);
}

TEST_CASE("branching construction matches the Borel size law") {
  RandomStream rng(35);
  const PowerLawKernel power(1.0, 2.0);
  std::vector<std::uint64_t> sizes(20000);
  std::size_t singletons = 0;
  for (auto& n : sizes) {
    const Cluster cluster = branching_cluster(power, rng);
    validate_cluster(cluster);
    n = cluster.size();
    if (n == 1) ++singletons;
  }
  check_sizes_against_borel(sizes, 0.5);
  // P(N = 1) = exp(-rho).
  const double p1 = std::exp(-0.5);
  const double se = std::sqrt(p1 * (1.0 - p1) / 20000.0);
  CHECK(std::abs(static_cast<double>(singletons) / 20000.0 - p1) < 3.0 * se);
}

TEST_CASE("iterative exponential baseline matches the Borel size law") {
  RandomStream rng(36);
  std::vector<std::uint64_t> sizes(20000);
  std::size_t singletons = 0;
  for (auto& n : sizes) {
    const Cluster cluster = dassios_zhao_cluster(3.0, 4.0, rng);
    validate_cluster(cluster);
    n = cluster.size();
    if (n == 1) ++singletons;
  }
  check_sizes_against_borel(sizes, 0.75);
  const double p1 = std::exp(-0.75);
  const double se = std::sqrt(p1 * (1.0 - p1) / 20000.0);
  CHECK(std::abs(static_cast<double>(singletons) / 20000.0 - p1) < 3.0 * se);

  CHECK_THROWS_AS(dassios_zhao_cluster(4.0, 3.0, rng), std::domain_error);
}

TEST_CASE("poisson race yields compensator points with the right size law") {
  RandomStream rng(37);
  const double rho = 0.75;
  std::vector<std::uint64_t> sizes(20000);
  std::size_t empty = 0;
  for (auto& n : sizes) {
    const auto lam = sample_compensator_poisson_race(rho, rng);
    validate_compensator(lam);
    n = lam.size() + 1;
    if (lam.size() == 0) ++empty;
  }
  check_sizes_against_borel(sizes, rho);
  // The race ends immediately with probability exp(-rho).
  const double p1 = std::exp(-rho);
  const double se = std::sqrt(p1 * (1.0 - p1) / 20000.0);
  CHECK(std::abs(static_cast<double>(empty) / 20000.0 - p1) < 3.0 * se);
}

TEST_CASE("race points feed the standard inversion pipeline") {
  RandomStream rng(38);
  const ExponentialKernel expo(3.0, 4.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto lam = sample_compensator_poisson_race(expo.branching_ratio(), rng);
    const Cluster cluster = invert_compensator(expo, lam);
    CHECK_NOTHROW(validate_cluster(cluster));
    CHECK(cluster.size() == lam.size() + 1);
  }
}
