#include "hawkes/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace hawkes {

namespace {

constexpr double kResidualTolerance = 1e-10;
constexpr int kNewtonBudget = 200;
constexpr int kBracketDoublings = 200;

void require_rho(double rho) {
  if (!(rho > 0.0) || !(rho < 1.0)) {
    throw std::domain_error("branching ratio must lie strictly inside (0, 1)");
  }
}

void require_exponential_params(double alpha, double beta) {
  if (!(alpha > 0.0) || !(alpha < beta)) {
    throw std::domain_error("exponential kernel requires 0 < alpha < beta");
  }
}

// Bracket width at which a root is considered pinned: a couple of ulps for
// large roots, 1e-10 absolute otherwise. Bisection always reaches this, and
// it keeps recovered epochs near the representable limit even where the
// intensity is nearly extinct.
double bracket_width_tolerance(double t) {
  return std::max(1e-10, 4.0 * std::numeric_limits<double>::epsilon() * std::abs(t));
}

}  // namespace

double InversionReport::max_residual() const noexcept {
  double worst = 0.0;
  for (const double r : residuals) {
    worst = std::max(worst, r);
  }
  return worst;
}

Cluster invert_exponential(double alpha, double beta, const CompensatorVector& lam) {
  require_exponential_params(alpha, beta);
  const double rho = alpha / beta;
  if (std::abs(lam.rho - rho) > 1e-12 * rho) {
    throw std::domain_error("invert_exponential: compensator was built for a different rho");
  }
  Cluster cluster;
  cluster.epochs.reserve(lam.size() + 1);
  cluster.epochs.push_back(0.0);
  double prev_lambda = 0.0;
  double prev_gap = 0.0;  // (i - 1) rho - Lambda_{i-1}
  double epoch = 0.0;
  for (std::size_t i = 0; i < lam.size(); ++i) {
    const double boundary_gap = lam.gap(i);  // i rho - Lambda_i
    if (!(lam.values[i] > prev_lambda) || !(boundary_gap > 0.0)) {
      throw std::domain_error("invert_exponential: point outside the feasible polytope");
    }
    const double step = -std::log(boundary_gap / (prev_gap + rho)) / beta;
    epoch += step;
    cluster.epochs.push_back(epoch);
    prev_lambda = lam.values[i];
    prev_gap = boundary_gap;
  }
  return cluster;
}

Cluster invert_compensator(const ExcitationKernel& kernel, const CompensatorVector& lam,
                           InversionReport* report, InversionStrategy strategy) {
  validate_compensator(lam);
  const double rho = kernel.branching_ratio();
  if (std::abs(lam.rho - rho) > 1e-12 * rho) {
    throw std::domain_error("invert_compensator: compensator was built for a different rho");
  }

  if (strategy == InversionStrategy::automatic) {
    if (const auto* exponential = dynamic_cast<const ExponentialKernel*>(&kernel)) {
      Cluster cluster = invert_exponential(exponential->alpha(), exponential->beta(), lam);
      if (report != nullptr) {
        report->method = InversionMethod::closed_form;
        report->residuals.assign(lam.size(), 0.0);
        report->iterations.assign(lam.size(), 0);
      }
      return cluster;
    }
  }

  InversionReport local;
  local.method = InversionMethod::newton_bisection;
  local.residuals.reserve(lam.size());
  local.iterations.reserve(lam.size());

  Cluster cluster;
  cluster.epochs.reserve(lam.size() + 1);
  cluster.epochs.push_back(0.0);

  auto fail = [&](const std::string& message) {
    if (report != nullptr) {
      *report = local;
    }
    throw InversionError(message, std::move(local));
  };

  double prev_lambda = 0.0;
  double prev_gap = 0.0;  // (i - 1) rho - Lambda_{i-1}
  for (std::size_t i = 0; i < lam.size(); ++i) {
    const double target = lam.values[i];
    const double target_gap = lam.gap(i);  // i rho - Lambda_i
    const double prev_epoch = cluster.epochs.back();

    // Residual in survival form: i rho - sum_j G(t - A_j) - (i rho -
    // Lambda_i). Algebraically the usual sum_j G - Lambda_i, but it keeps
    // full precision near the polytope boundary, where every survival term
    // is tiny and the plain form cancels to roundoff.
    auto residual = [&](double t) {
      double survival = 0.0;
      for (const double a : cluster.epochs) {
        survival += kernel.G_complement(t - a);
      }
      return target_gap - survival;
    };
    auto slope = [&](double t) {
      double sum = 0.0;
      for (const double a : cluster.epochs) {
        sum += kernel.g(t - a);
      }
      return sum;
    };

    // Initial offset: invert the one-event kernel against the share of the
    // remaining compensator mass this epoch consumes (exact for the
    // exponential family, a decent warm start otherwise).
    const double remaining = prev_gap + rho;  // i rho - Lambda_{i-1}
    const double share =
        std::clamp((target - prev_lambda) / remaining, 1e-12, 1.0 - 1e-12);
    const double warm_offset = kernel.offspring_offset_invcdf(share);

    double lo = prev_epoch;  // residual(lo) = prev_lambda - target < 0
    double hi = prev_epoch + std::max(2.0 * warm_offset, 1e-12);
    int doublings = 0;
    while (residual(hi) <= 0.0) {
      if (++doublings > kBracketDoublings) {
        local.residuals.push_back(std::abs(residual(hi)));
        local.iterations.push_back(doublings);
        fail("invert_compensator: failed to bracket the next epoch");
      }
      lo = hi;
      hi = prev_epoch + (hi - prev_epoch) * 2.0;
    }

    double t = prev_epoch + warm_offset;
    if (!(t > lo) || !(t < hi)) {
      t = 0.5 * (lo + hi);
    }
    int iterations = 0;
    bool converged = false;
    double current_residual = 0.0;
    while (iterations < kNewtonBudget) {
      ++iterations;
      current_residual = residual(t);
      if (current_residual < 0.0) {
        lo = t;
      } else {
        hi = t;
      }
      if (std::abs(current_residual) <= kResidualTolerance &&
          hi - lo <= bracket_width_tolerance(t)) {
        converged = true;
        break;
      }
      const double derivative = slope(t);
      double next = derivative > 0.0 ? t - current_residual / derivative : lo;
      if (!(next > lo) || !(next < hi)) {
        next = 0.5 * (lo + hi);
      }
      if (next == t && hi - lo <= bracket_width_tolerance(t)) {
        // Bracket collapsed onto adjacent doubles.
        converged = std::abs(current_residual) <= kResidualTolerance;
        break;
      }
      t = next;
    }
    local.residuals.push_back(std::abs(current_residual));
    local.iterations.push_back(iterations);
    if (!converged) {
      fail("invert_compensator: Newton-bisection did not converge");
    }
    cluster.epochs.push_back(t);
    prev_lambda = target;
    prev_gap = target_gap;
  }

  if (report != nullptr) {
    *report = local;
  }
  return cluster;
}

Cluster simulate_cluster(const ExcitationKernel& kernel, RandomStream& rng,
                         std::optional<std::uint64_t> conditioned_size) {
  const double rho = kernel.branching_ratio();
  std::uint64_t size = 0;
  if (conditioned_size.has_value()) {
    if (*conditioned_size == 0) {
      throw std::domain_error("simulate_cluster: conditioned size must be >= 1");
    }
    size = *conditioned_size;
  } else {
    size = sample_borel(rho, rng);
  }
  if (size == 1) {
    return Cluster{{0.0}};
  }
  const CompensatorVector lam =
      sample_compensator_points(static_cast<std::size_t>(size - 1), rho, rng);
  return invert_compensator(kernel, lam);
}

Cluster branching_cluster(const ExcitationKernel& kernel, RandomStream& rng) {
  const double rho = kernel.branching_ratio();
  const double poisson_floor = std::exp(-rho);
  std::vector<double> epochs{0.0};
  std::deque<double> frontier{0.0};
  while (!frontier.empty()) {
    const double parent = frontier.front();
    frontier.pop_front();
    // Knuth's Poisson(rho) with the floor hoisted out of the loop.
    std::uint64_t brood = 0;
    for (double product = rng.uniform(); product > poisson_floor; product *= rng.uniform()) {
      ++brood;
    }
    for (std::uint64_t child = 0; child < brood; ++child) {
      const double epoch = parent + kernel.offspring_offset_invcdf(rng.uniform());
      epochs.push_back(epoch);
      frontier.push_back(epoch);
    }
  }
  std::sort(epochs.begin() + 1, epochs.end());
  return Cluster{std::move(epochs)};
}

Cluster dassios_zhao_cluster(double alpha, double beta, RandomStream& rng) {
  require_exponential_params(alpha, beta);
  Cluster cluster;
  cluster.epochs.push_back(0.0);
  double intensity = alpha;  // post-jump value right after the newest event
  double epoch = 0.0;
  while (true) {
    // Total remaining mass is intensity / beta, so the cluster dies here
    // with probability exp(-intensity / beta).
    const double survival = std::exp(-intensity / beta);
    const double continue_prob = -std::expm1(-intensity / beta);
    if (rng.uniform() >= continue_prob) {
      break;
    }
    // Invert the conditional inter-arrival CDF: draw the integrated-
    // intensity survival level uniformly over its feasible range.
    const double level = survival + rng.uniform() * continue_prob;
    const double gap = -std::log1p(beta * std::log(level) / intensity) / beta;
    epoch += gap;
    cluster.epochs.push_back(epoch);
    intensity = intensity * std::exp(-beta * gap) + alpha;
  }
  return cluster;
}

CompensatorVector sample_compensator_poisson_race(double rho, RandomStream& rng) {
  require_rho(rho);
  CompensatorVector out;
  out.rho = rho;
  double arrival = 0.0;
  for (std::uint64_t index = 1;; ++index) {
    arrival += rng.exponential(1.0);
    if (arrival >= static_cast<double>(index) * rho) {
      return out;
    }
    out.values.push_back(arrival);
  }
}

}  // namespace hawkes
