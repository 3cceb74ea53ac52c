#include "hawkes/markov.hpp"

#include <cmath>
#include <stdexcept>

#include "hawkes/stats.hpp"

namespace hawkes {

namespace {

void require_exponential_params(double alpha, double beta) {
  if (!(alpha > 0.0) || !(alpha < beta)) {
    throw std::domain_error("exponential kernel requires 0 < alpha < beta");
  }
}

}  // namespace

IntensitySkeleton intensity_skeleton(double alpha, double beta, const CompensatorVector& lam) {
  require_exponential_params(alpha, beta);
  const double rho = alpha / beta;
  if (std::abs(lam.rho - rho) > 1e-12 * rho) {
    throw std::domain_error("intensity_skeleton: compensator was built for a different rho");
  }
  validate_compensator(lam);
  IntensitySkeleton out;
  out.intensities.reserve(lam.size());
  for (std::size_t i = 0; i < lam.size(); ++i) {
    // alpha i - beta Lambda_i, taken through the boundary gap when present.
    const double value = beta * lam.gap(i);
    if (!(value > 0.0)) {
      throw std::invalid_argument("intensity_skeleton: nonpositive intensity (corrupt points)");
    }
    out.intensities.push_back(value);
  }
  return out;
}

std::vector<int> duration_rates(const ParkingFunction& pf) {
  if (!is_parking_function(pf.entries)) {
    throw std::invalid_argument("duration_rates: input violates the parking condition");
  }
  const std::size_t k = pf.length();
  const auto counts = occupancy_counts(pf.entries, k);
  // suffix[v - 1] = number of entries valued v or above.
  std::vector<int> suffix(k + 1, 0);
  for (std::size_t v = k; v >= 1; --v) {
    suffix[v - 1] = suffix[v] + counts[v - 1];
  }
  std::vector<int> rates(k);
  for (std::size_t i = 1; i <= k; ++i) {
    rates[i - 1] = static_cast<int>(i) + 1 - suffix[k - i];
  }
  return rates;
}

DurationSample sample_cluster_duration(double alpha, double beta, RandomStream& rng,
                                       std::optional<std::uint64_t> conditioned_size) {
  require_exponential_params(alpha, beta);
  const double rho = alpha / beta;
  DurationSample out;
  if (conditioned_size.has_value()) {
    if (*conditioned_size == 0) {
      throw std::domain_error("sample_cluster_duration: conditioned size must be >= 1");
    }
    out.cluster_size = *conditioned_size;
  } else {
    out.cluster_size = sample_borel(rho, rng);
  }
  if (out.cluster_size == 1) {
    return out;
  }
  const std::size_t k = static_cast<std::size_t>(out.cluster_size - 1);
  out.pf = sample_parking_function(k, rng);
  const auto rates = duration_rates(out.pf);
  out.rate_draws.reserve(k);
  double total = 0.0;
  for (const int rate : rates) {
    const double draw = rng.exponential(static_cast<double>(rate));
    out.rate_draws.push_back(draw);
    total += draw;
  }
  out.duration = total / beta;
  return out;
}

double scaled_duration_ks(double alpha1, double beta1, double alpha2, double beta2,
                          std::size_t reps, RandomStream& rng,
                          std::optional<std::uint64_t> conditioned_size) {
  require_exponential_params(alpha1, beta1);
  require_exponential_params(alpha2, beta2);
  if (!conditioned_size.has_value() &&
      std::abs(alpha1 / beta1 - alpha2 / beta2) > 1e-12) {
    throw std::domain_error("scaled_duration_ks: unconditioned comparison needs equal rho");
  }
  if (reps == 0) {
    throw std::domain_error("scaled_duration_ks: needs at least one replication");
  }
  std::vector<double> first;
  std::vector<double> second;
  first.reserve(reps);
  second.reserve(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    first.push_back(beta1 * sample_cluster_duration(alpha1, beta1, rng, conditioned_size).duration);
  }
  for (std::size_t r = 0; r < reps; ++r) {
    second.push_back(beta2 * sample_cluster_duration(alpha2, beta2, rng, conditioned_size).duration);
  }
  return ks_two_sample(EmpiricalSample(std::move(first)), EmpiricalSample(std::move(second)));
}

}  // namespace hawkes
