#include "hawkes/kernel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hawkes {

namespace {

constexpr double kInvCdfTolerance = 1e-10;

void require_nonnegative(double x) {
  if (!(x >= 0.0)) {
    throw std::domain_error("kernel argument must be nonnegative");
  }
}

void require_open_unit(double u) {
  if (!(u > 0.0) || !(u < 1.0)) {
    throw std::domain_error("probability argument must lie strictly inside (0, 1)");
  }
}

std::string format_param(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

}  // namespace

void validate_cluster(const Cluster& cluster) {
  if (cluster.epochs.empty()) {
    throw std::invalid_argument("cluster must contain the initial epoch");
  }
  if (cluster.epochs.front() != 0.0) {
    throw std::invalid_argument("cluster must start at exactly time zero");
  }
  for (std::size_t i = 1; i < cluster.epochs.size(); ++i) {
    if (!(cluster.epochs[i] > cluster.epochs[i - 1])) {
      throw std::invalid_argument("cluster epochs must increase strictly");
    }
  }
}

ExcitationKernel::ExcitationKernel(double rho) : rho_(rho) {
  if (!(rho > 0.0) || !(rho < 1.0)) {
    throw std::domain_error("kernel is unstable: branching ratio must lie in (0, 1)");
  }
}

double ExcitationKernel::g(double x) const {
  require_nonnegative(x);
  return g_impl(x);
}

double ExcitationKernel::G(double x) const {
  require_nonnegative(x);
  return G_impl(x);
}

double ExcitationKernel::G_complement(double x) const {
  require_nonnegative(x);
  return G_complement_impl(x);
}

double ExcitationKernel::offspring_offset_invcdf(double u) const {
  require_open_unit(u);
  return offset_invcdf_impl(u);
}

double ExcitationKernel::offset_invcdf_impl(double u) const {
  // Bisection on the normalized CDF G(x) / rho, bracketing by doubling.
  double hi = 1.0;
  while (G_impl(hi) / rho_ < u) {
    hi *= 2.0;
    if (!std::isfinite(hi)) {
      throw std::runtime_error("offspring_offset_invcdf: failed to bracket the quantile");
    }
  }
  double lo = 0.0;
  while (hi - lo > kInvCdfTolerance * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      break;
    }
    if (G_impl(mid) / rho_ < u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ExponentialKernel::ExponentialKernel(double alpha, double beta)
    : ExcitationKernel(alpha / beta), alpha_(alpha), beta_(beta) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw std::domain_error("exponential kernel requires alpha > 0 and beta > 0");
  }
}

std::string ExponentialKernel::label() const {
  return "exponential(alpha=" + format_param(alpha_) + ";beta=" + format_param(beta_) + ")";
}

double ExponentialKernel::g_impl(double x) const { return alpha_ * std::exp(-beta_ * x); }

double ExponentialKernel::G_impl(double x) const {
  return branching_ratio() * -std::expm1(-beta_ * x);
}

double ExponentialKernel::G_complement_impl(double x) const {
  return branching_ratio() * std::exp(-beta_ * x);
}

double ExponentialKernel::offset_invcdf_impl(double u) const {
  return -std::log1p(-u) / beta_;
}

PowerLawKernel::PowerLawKernel(double c, double d)
    : ExcitationKernel(c / d), c_(c), d_(d) {
  if (!(c > 0.0) || !(d > 0.0)) {
    throw std::domain_error("power-law kernel requires c > 0 and d > 0");
  }
}

std::string PowerLawKernel::label() const {
  return "powerlaw(c=" + format_param(c_) + ";d=" + format_param(d_) + ")";
}

double PowerLawKernel::g_impl(double x) const {
  const double shifted = d_ + x;
  return c_ / (shifted * shifted);
}

double PowerLawKernel::G_impl(double x) const { return c_ * x / (d_ * (d_ + x)); }

double PowerLawKernel::G_complement_impl(double x) const { return c_ / (d_ + x); }

double PowerLawKernel::offset_invcdf_impl(double u) const { return d_ * u / (1.0 - u); }

CompensatorVector compensator_at_epochs(const ExcitationKernel& kernel, const Cluster& cluster) {
  validate_cluster(cluster);
  CompensatorVector lam;
  lam.rho = kernel.branching_ratio();
  if (cluster.size() <= 1) {
    return lam;
  }
  lam.values.reserve(cluster.size() - 1);
  lam.boundary_gaps.reserve(cluster.size() - 1);
  for (std::size_t i = 1; i < cluster.size(); ++i) {
    double sum = 0.0;
    double gap = 0.0;  // i rho - sum, accumulated as survival masses
    for (std::size_t j = 0; j < i; ++j) {
      sum += kernel.G(cluster.epochs[i] - cluster.epochs[j]);
      gap += kernel.G_complement(cluster.epochs[i] - cluster.epochs[j]);
    }
    lam.values.push_back(sum);
    lam.boundary_gaps.push_back(gap);
  }
  validate_compensator(lam);
  return lam;
}

}  // namespace hawkes
