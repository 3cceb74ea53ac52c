#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hawkes/combinat.hpp"
#include "hawkes/polytope.hpp"
#include "hawkes/rng.hpp"

namespace hawkes {

// Pre-event intensities of an exponential-kernel cluster, recovered from the
// compensator points alone: lambda_i = alpha * i - beta * Lambda_i.
struct IntensitySkeleton {
  std::vector<double> intensities;
};

// Throws std::invalid_argument if any recovered intensity is nonpositive
// (equivalent to the compensator leaving its polytope).
IntensitySkeleton intensity_skeleton(double alpha, double beta, const CompensatorVector& lam);

// Integer rates of the duration decomposition for the exponential kernel.
// For a parking function of length k, rate_i = i + 1 minus the number of
// entries valued above k - i; every rate lands in 1..i+1.
std::vector<int> duration_rates(const ParkingFunction& pf);

// One draw of the closed-form duration law: cluster size N, the parking
// function spine, the exponential draws, and the duration
// tau = sum(draws) / beta.
struct DurationSample {
  std::uint64_t cluster_size = 1;
  ParkingFunction pf;               // length N - 1 (empty when N = 1)
  std::vector<double> rate_draws;
  double duration = 0.0;
};

// Samples the duration of an exponential-kernel cluster without touching
// epochs: N Borel (or pinned), pi uniform, then conditionally independent
// exponentials at the duration rates.
DurationSample sample_cluster_duration(double alpha, double beta, RandomStream& rng,
                                       std::optional<std::uint64_t> conditioned_size = std::nullopt);

// Two-sample KS statistic between beta1 * tau1 and beta2 * tau2. Without a
// conditioned size the branching ratios must match (the rescaled laws are
// then equal); with one, any stable parameter pairs are comparable.
double scaled_duration_ks(double alpha1, double beta1, double alpha2, double beta2,
                          std::size_t reps, RandomStream& rng,
                          std::optional<std::uint64_t> conditioned_size = std::nullopt);

}  // namespace hawkes
