#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace hawkes {

// Immutable sorted sample.
class EmpiricalSample {
 public:
  // Sorts the values; throws std::invalid_argument on an empty input.
  explicit EmpiricalSample(std::vector<double> values);

  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::vector<double> values_;
};

// Sup distance between the two empirical CDFs, by a single merge scan over
// the sorted samples. Symmetric and invariant under common monotone maps.
double ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b);

// Sup distance between the empirical CDF and a reference CDF.
double ks_one_sample(const EmpiricalSample& a, const std::function<double(double)>& cdf);

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t df = 0;
  double p_value = 1.0;
};

// Pearson goodness of fit of observed counts against category probabilities.
// Requires >= 2 categories, probabilities summing to one, and an expected
// count of at least five in every category (merge the tail first).
ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> expected_probs);

// Homogeneity test between two observed count vectors over shared categories
// (expected counts from the pooled proportions).
ChiSquareResult chi_square_two_sample(std::span<const std::uint64_t> observed_a,
                                      std::span<const std::uint64_t> observed_b);

struct BinnedCategories {
  std::vector<std::uint64_t> observed;
  std::vector<double> probs;
};

// Collapses trailing categories into one bucket until every bucket's
// expected count reaches min_expected.
BinnedCategories merge_tail_categories(std::span<const std::uint64_t> observed,
                                       std::span<const double> probs,
                                       double min_expected);

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;    // unbiased
  double std_error = 0.0;   // sqrt(variance / count)
  double min = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double max = 0.0;
};

Summary summarize(const EmpiricalSample& sample);

// Quantile by linear interpolation between order statistics, q in [0, 1].
double quantile(const EmpiricalSample& sample, double q);

// Upper tail probability of the chi-square distribution with df degrees of
// freedom, via the regularized incomplete gamma function.
double chi_square_survival(double statistic, std::size_t df);

}  // namespace hawkes
