#pragma once

#include <cstdint>
#include <vector>

#include "hawkes/combinat.hpp"
#include "hawkes/rng.hpp"

namespace hawkes {

// Sorted compensator points 0 < v_1 < ... < v_k with v_i < i * rho: one
// point per post-initial epoch, in compensator units.
//
// boundary_gaps optionally carries i * rho - v_i at full relative precision.
// Near the polytope boundary the subtraction loses almost every significant
// digit, while producers can compute the gap directly (it is a sum of kernel
// survival masses); inversion then stays sharp even where the intensity is
// nearly extinct. Consumers use gap(); vectors built from bare values fall
// back to the subtraction.
struct CompensatorVector {
  std::vector<double> values;
  std::vector<double> boundary_gaps;  // empty, or one entry per value
  double rho = 0.0;

  std::size_t size() const noexcept { return values.size(); }

  bool has_boundary_gaps() const noexcept {
    return !values.empty() && boundary_gaps.size() == values.size();
  }

  double gap(std::size_t i) const {
    return has_boundary_gaps() ? boundary_gaps[i]
                               : static_cast<double>(i + 1) * rho - values[i];
  }
};

// Throws std::invalid_argument when the polytope constraints do not hold
// (including an inconsistent boundary_gaps side channel).
void validate_compensator(const CompensatorVector& lam);

// A polytope draw together with the parking function and uniforms behind it.
struct PolytopeSample {
  CompensatorVector lambda;
  ParkingFunction pf;
  std::vector<double> uniforms;
};

// Uniform draw from the compensator polytope of dimension k:
// rho * sort(pi - U) for a uniform parking function pi and iid uniforms U.
CompensatorVector sample_compensator_points(std::size_t k, double rho, RandomStream& rng);
PolytopeSample sample_compensator_points_traced(std::size_t k, double rho, RandomStream& rng);

// Cell of the Dyck-path decomposition containing lam; entry i is
// floor(v_i / rho) + 1, so exact multiples of rho are pushed upward.
DyckPath classify_region(const CompensatorVector& lam);

// Independent uniform sampler on the same polytope by rejection from the
// box of per-coordinate ranges; exact but exponentially slow in k (guard:
// k <= 12). Throws std::runtime_error once the attempt budget is spent.
CompensatorVector rejection_sample_polytope(std::size_t k, double rho, RandomStream& rng,
                                            std::uint64_t* attempts_out = nullptr);

}  // namespace hawkes
