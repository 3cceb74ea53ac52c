#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hawkes/polytope.hpp"

namespace hawkes {

// A cluster: the initial epoch at time 0 plus every descendant epoch,
// strictly increasing. duration() is the gap from first to last epoch.
struct Cluster {
  std::vector<double> epochs;

  std::size_t size() const noexcept { return epochs.size(); }
  double duration() const noexcept { return epochs.empty() ? 0.0 : epochs.back(); }
};

// Throws std::invalid_argument unless epochs start at exactly zero and
// increase strictly.
void validate_cluster(const Cluster& cluster);

// Self-excitation kernel g with integrated form G and branching ratio
// rho = lim G < 1. Construction rejects unstable parameterizations.
// Instances are immutable and safe to share across threads.
class ExcitationKernel {
 public:
  virtual ~ExcitationKernel() = default;

  // Pointwise kernel value g(x); throws std::domain_error for x < 0.
  double g(double x) const;

  // Integrated kernel G(x); throws std::domain_error for x < 0.
  double G(double x) const;

  // Survival mass rho - G(x), kept at full relative precision even where it
  // is tiny; throws std::domain_error for x < 0.
  double G_complement(double x) const;

  double branching_ratio() const noexcept { return rho_; }

  // Inverse CDF of the normalized offspring-offset law G(x) / rho; throws
  // std::domain_error unless 0 < u < 1.
  double offspring_offset_invcdf(double u) const;

  virtual const char* family() const noexcept = 0;

  // Single-token label for record output, e.g. "exponential(alpha=3;beta=4)".
  virtual std::string label() const = 0;

 protected:
  explicit ExcitationKernel(double rho);

  virtual double g_impl(double x) const = 0;
  virtual double G_impl(double x) const = 0;
  virtual double G_complement_impl(double x) const { return rho_ - G_impl(x); }
  // Numeric fallback by bisection on G(x) / rho; families with a closed
  // form override. Tolerance 1e-10 on the probability scale.
  virtual double offset_invcdf_impl(double u) const;

 private:
  double rho_;
};

// g(x) = alpha e^{-beta x}; rho = alpha / beta.
class ExponentialKernel final : public ExcitationKernel {
 public:
  ExponentialKernel(double alpha, double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  const char* family() const noexcept override { return "exponential"; }
  std::string label() const override;

 protected:
  double g_impl(double x) const override;
  double G_impl(double x) const override;
  double G_complement_impl(double x) const override;
  double offset_invcdf_impl(double u) const override;

 private:
  double alpha_;
  double beta_;
};

// g(x) = c / (d + x)^2; rho = c / d.
class PowerLawKernel final : public ExcitationKernel {
 public:
  PowerLawKernel(double c, double d);

  double c() const noexcept { return c_; }
  double d() const noexcept { return d_; }
  const char* family() const noexcept override { return "powerlaw"; }
  std::string label() const override;

 protected:
  double g_impl(double x) const override;
  double G_impl(double x) const override;
  double G_complement_impl(double x) const override;
  double offset_invcdf_impl(double u) const override;

 private:
  double c_;
  double d_;
};

// Discrete compensator of a cluster: point i is sum_{j < i} G(A_i - A_j),
// one value per post-initial epoch (empty for a singleton cluster).
CompensatorVector compensator_at_epochs(const ExcitationKernel& kernel, const Cluster& cluster);

}  // namespace hawkes
