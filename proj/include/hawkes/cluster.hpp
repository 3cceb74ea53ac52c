#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hawkes/kernel.hpp"
#include "hawkes/polytope.hpp"
#include "hawkes/rng.hpp"

namespace hawkes {

enum class InversionMethod { closed_form, newton_bisection };

// Per-epoch diagnostics from compensator inversion.
struct InversionReport {
  InversionMethod method = InversionMethod::closed_form;
  std::vector<double> residuals;   // |sum_j G(A_i - A_j) - Lambda_i|
  std::vector<int> iterations;     // root-finder iterations (0 on the closed form)

  double max_residual() const noexcept;
};

class InversionError : public std::runtime_error {
 public:
  InversionError(const std::string& what, InversionReport report)
      : std::runtime_error(what), report_(std::move(report)) {}

  const InversionReport& report() const noexcept { return report_; }

 private:
  InversionReport report_;
};

enum class InversionStrategy {
  automatic,    // closed form when the kernel family has one
  force_newton  // always take the safeguarded-Newton path
};

// Recovers epochs from compensator points by solving the triangular system
// sum_{j < i} G(A_i - A_j) = Lambda_i front to back. Each equation is
// strictly increasing in A_i, so a bracketed Newton iteration always
// converges; exponential kernels dispatch to the closed form instead.
// Throws InversionError (with the partial report) on non-convergence.
Cluster invert_compensator(const ExcitationKernel& kernel, const CompensatorVector& lam,
                           InversionReport* report = nullptr,
                           InversionStrategy strategy = InversionStrategy::automatic);

// Closed-form inversion for the exponential kernel: each inter-arrival is
// S_i = -log((i rho - Lambda_i) / (i rho - Lambda_{i-1})) / beta.
Cluster invert_exponential(double alpha, double beta, const CompensatorVector& lam);

// Size -> polytope point -> epochs pipeline. Pass conditioned_size to pin
// the cluster size instead of drawing it from the Borel law.
Cluster simulate_cluster(const ExcitationKernel& kernel, RandomStream& rng,
                         std::optional<std::uint64_t> conditioned_size = std::nullopt);

// Baseline: breadth-first branching construction; every event spawns a
// Poisson(rho) brood at offsets drawn from the normalized offset law.
Cluster branching_cluster(const ExcitationKernel& kernel, RandomStream& rng);

// Baseline for the exponential kernel: after each event with post-jump
// intensity w, a further event occurs with probability 1 - e^{-w / beta};
// when it does, the inter-arrival comes from inverting the conditional
// integrated-intensity CDF, and the intensity decays and jumps by alpha.
Cluster dassios_zhao_cluster(double alpha, double beta, RandomStream& rng);

// Unit-rate Poisson race: epochs T_1, T_2, ... are kept while T_i < i * rho
// and the race stops at the first index that crosses; the kept prefix has
// the same joint law as a cluster's compensator points.
CompensatorVector sample_compensator_poisson_race(double rho, RandomStream& rng);

}  // namespace hawkes
