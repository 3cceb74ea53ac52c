#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hawkes/combinat.hpp"
#include "hawkes/stats.hpp"

using namespace hawkes;

TEST_CASE("borel pmf closed values and normalization") {
  CHECK(borel_pmf(0.5, 1) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  CHECK(borel_pmf(0.5, 2) == doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-12));
  CHECK_THROWS_AS(borel_pmf(1.5, 1), std::domain_error);
  CHECK_THROWS_AS(borel_pmf(0.5, 0), std::domain_error);

  double total = 0.0;
  for (std::uint64_t k = 1; k <= 200; ++k) {
    total += borel_pmf(0.5, k);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("borel sampler matches its pmf") {
  RandomStream rng(42);
  const double rho = 0.5;
  const std::size_t n = 100000;
  std::vector<std::uint64_t> counts(21, 0);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t draw = sample_borel(rho, rng);
    mean += static_cast<double>(draw);
    ++counts[std::min<std::uint64_t>(draw, 21) - 1];
  }
  mean /= static_cast<double>(n);

  std::vector<double> probs;
  double head = 0.0;
  for (std::uint64_t k = 1; k <= 20; ++k) {
    probs.push_back(borel_pmf(rho, k));
    head += probs.back();
  }
  probs.push_back(1.0 - head);
  const auto binned = merge_tail_categories(counts, probs, 5.0);
  CHECK(chi_square_gof(binned.observed, binned.probs).p_value > 0.001);

  // Mean 1 / (1 - rho) = 2, variance rho / (1 - rho)^3 = 4.
  CHECK(std::abs(mean - 2.0) < 3.0 * std::sqrt(4.0 / static_cast<double>(n)));
}

TEST_CASE("borel sampler collapses to one as rho vanishes") {
  RandomStream rng(43);
  std::size_t singletons = 0;
  for (int i = 0; i < 2000; ++i) {
    if (sample_borel(0.01, rng) == 1) ++singletons;
  }
  CHECK(singletons > 1940);  // true rate exp(-0.01) ~ 0.99
}

TEST_CASE("circle parking reproduces the worked rotation example") {
  // Preferences over six circular spaces; the empty space ends at 4 and the
  // rotation maps [2,5,1,5,6] onto the parking function [4,1,3,1,2].
  const std::vector<int> preferences{2, 5, 1, 5, 6};
  const ParkingFunction expected{{4, 1, 3, 1, 2}};
  CHECK(park_preferences(preferences) == expected);
  CHECK(park_preferences_reference(preferences) == expected);

  const std::vector<int> all_ones{1, 1, 1, 1};
  CHECK(park_preferences(all_ones).entries == all_ones);
}

TEST_CASE("sorted-gap parking agrees with linear probing") {
  RandomStream rng(44);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t k = 1 + rng.uniform_int(50);
    std::vector<int> preferences(k);
    for (auto& p : preferences) {
      p = static_cast<int>(rng.uniform_int(k + 1)) + 1;
    }
    REQUIRE(park_preferences(preferences) == park_preferences_reference(preferences));
  }
}

TEST_CASE("sampled parking functions are always valid") {
  RandomStream rng(45);
  for (int trial = 0; trial < 5000; ++trial) {
    const std::size_t k = 1 + rng.uniform_int(20);
    const auto pf = sample_parking_function(k, rng);
    REQUIRE(pf.length() == k);
    REQUIRE(is_parking_function(pf.entries));
  }
  CHECK_THROWS_AS(sample_parking_function(0, rng), std::domain_error);
}

TEST_CASE("parking function sampler is uniform at k = 3") {
  RandomStream rng(46);
  const auto pfs = enumerate_parking_functions(3);
  REQUIRE(pfs.size() == 16);
  std::vector<std::uint64_t> counts(pfs.size(), 0);
  const std::size_t n = 160000;
  for (std::size_t i = 0; i < n; ++i) {
    const auto pf = sample_parking_function(3, rng);
    const auto hit = std::find(pfs.begin(), pfs.end(), pf);
    REQUIRE(hit != pfs.end());
    ++counts[static_cast<std::size_t>(hit - pfs.begin())];
  }
  const std::vector<double> probs(pfs.size(), 1.0 / 16.0);
  CHECK(chi_square_gof(counts, probs).p_value > 0.001);
}

TEST_CASE("dyck enumeration matches the catalog at k = 3") {
  const auto paths = enumerate_dyck(3);
  REQUIRE(paths.size() == 5);
  const std::vector<std::vector<int>> expected{
      {1, 1, 1}, {1, 1, 2}, {1, 1, 3}, {1, 2, 2}, {1, 2, 3}};
  for (const auto& steps : expected) {
    CHECK(std::find(paths.begin(), paths.end(), DyckPath{steps}) != paths.end());
  }
  CHECK(enumerate_dyck(1).size() == 1);
  CHECK(enumerate_dyck(4).size() == 14);
  CHECK_THROWS_AS(enumerate_dyck(15), std::length_error);
}

TEST_CASE("enumeration counts follow the closed formulas") {
  const std::vector<std::uint64_t> pf_counts{1, 3, 16, 125, 1296};
  const std::vector<std::uint64_t> catalan{1, 2, 5, 14, 42};
  for (std::size_t k = 1; k <= 5; ++k) {
    CHECK(enumerate_parking_functions(k).size() == pf_counts[k - 1]);
    CHECK(parking_function_count(k) == pf_counts[k - 1]);
    CHECK(enumerate_dyck(k).size() == catalan[k - 1]);
    CHECK(catalan_number(k) == catalan[k - 1]);
  }
}

TEST_CASE("sorting a parking function yields a dyck path") {
  const ParkingFunction pf{{4, 1, 3, 1, 2}};
  CHECK(sort_to_dyck(pf).steps == std::vector<int>{1, 1, 2, 3, 4});
  const ParkingFunction flat{{1, 1, 1}};
  CHECK(sort_to_dyck(flat).steps == std::vector<int>{1, 1, 1});
  CHECK_THROWS_AS(sort_to_dyck(ParkingFunction{{2, 2, 2}}), std::invalid_argument);

  for (const auto& candidate : enumerate_parking_functions(4)) {
    REQUIRE(is_dyck_path(sort_to_dyck(candidate).steps));
  }
}

TEST_CASE("region probabilities and weights") {
  CHECK(region_probability(DyckPath{{1, 2, 3}}) == doctest::Approx(3.0 / 8.0));
  CHECK(region_probability(DyckPath{{1, 1, 1}}) == doctest::Approx(1.0 / 16.0));
  CHECK(region_probability(DyckPath{{1, 2}}) == doctest::Approx(2.0 / 3.0));

  // Cell weights refine the parking-function count exactly.
  for (std::size_t k = 1; k <= 6; ++k) {
    std::uint64_t total = 0;
    for (const auto& d : enumerate_dyck(k)) {
      total += region_weight(d);
    }
    CHECK(total == parking_function_count(k));
  }

  // Weight of a cell equals the number of parking functions sorting to it.
  for (std::size_t k = 2; k <= 6; ++k) {
    const auto cells = enumerate_dyck(k);
    std::vector<std::uint64_t> matches(cells.size(), 0);
    for (const auto& pf : enumerate_parking_functions(k)) {
      const auto sorted = sort_to_dyck(pf);
      const auto hit = std::find(cells.begin(), cells.end(), sorted);
      REQUIRE(hit != cells.end());
      ++matches[static_cast<std::size_t>(hit - cells.begin())];
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      REQUIRE(matches[c] == region_weight(cells[c]));
    }
  }
}

TEST_CASE("occupancy counts restate the parking condition") {
  RandomStream rng(47);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t k = 1 + rng.uniform_int(12);
    const auto pf = sample_parking_function(k, rng);
    const auto counts = occupancy_counts(pf.entries, k);
    int running = 0;
    for (std::size_t m = 0; m < k; ++m) {
      running += counts[m];
      REQUIRE(running >= static_cast<int>(m) + 1);
    }
    REQUIRE(running == static_cast<int>(k));
  }
}
