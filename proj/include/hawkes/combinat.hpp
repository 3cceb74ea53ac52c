#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hawkes/rng.hpp"

namespace hawkes {

// Integer vector in {1..k}^k whose ascending sort satisfies pi_(i) <= i.
struct ParkingFunction {
  std::vector<int> entries;

  std::size_t length() const noexcept { return entries.size(); }
  bool operator==(const ParkingFunction&) const = default;
};

// Nondecreasing vector with d_i <= i; equivalently a sorted parking function.
struct DyckPath {
  std::vector<int> steps;

  std::size_t length() const noexcept { return steps.size(); }
  bool operator==(const DyckPath&) const = default;
};

bool is_parking_function(std::span<const int> entries);
bool is_dyck_path(std::span<const int> steps);

// Multiplicity of each value 1..length among the entries; slot v - 1 holds
// the count of value v.
std::vector<int> occupancy_counts(std::span<const int> entries, std::size_t length);

// Borel(rho) mass at k >= 1: exp(-rho k) (rho k)^(k-1) / k!, in log space.
double borel_log_pmf(double rho, std::uint64_t k);
double borel_pmf(double rho, std::uint64_t k);

// Total progeny of a Poisson(rho) branching process, drawn by a sequential
// inverse-CDF walk over the log-space pmf recursion. Throws
// std::overflow_error if the walk passes the hard cap (rho extremely close
// to one paired with an extreme uniform draw).
std::uint64_t sample_borel(double rho, RandomStream& rng);

inline constexpr std::uint64_t kBorelSampleCap = 100000000;  // 1e8

// Circle parking: preferences over k + 1 circular spaces, one car per entry,
// each car taking its preferred space or the next free one around the
// circle. Returns the parking function obtained by rotating the one empty
// space to position k + 1. Free-space successor scan with path compression,
// O(k log k) worst case and near-linear in practice.
ParkingFunction park_preferences(std::span<const int> preferences);

// Same map via naive linear probing; kept for differential testing.
ParkingFunction park_preferences_reference(std::span<const int> preferences);

// Uniformly random parking function of length k >= 1.
ParkingFunction sample_parking_function(std::size_t k, RandomStream& rng);
ParkingFunction sample_parking_function_reference(std::size_t k, RandomStream& rng);

// All k-step Dyck paths (Catalan(k) of them). Guard: k <= 14.
std::vector<DyckPath> enumerate_dyck(std::size_t k);

// All parking functions of length k by brute-force filter. Guard: k <= 8.
std::vector<ParkingFunction> enumerate_parking_functions(std::size_t k);

// Ascending sort of a valid parking function.
DyckPath sort_to_dyck(const ParkingFunction& pf);

// Number of parking functions sorting to d: k! / prod_v kappa_v(d)!.
std::uint64_t region_weight(const DyckPath& d);

// region_weight / (k+1)^(k-1): the chance that a uniform polytope draw of
// dimension k lands in the cell indexed by d.
double region_probability(const DyckPath& d);

std::uint64_t parking_function_count(std::size_t k);  // (k+1)^(k-1)
std::uint64_t catalan_number(std::size_t k);

}  // namespace hawkes
