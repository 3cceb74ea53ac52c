#include "hawkes/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hawkes {

namespace {

constexpr double kProbSumTolerance = 1e-9;

// Regularized lower incomplete gamma P(a, x) by power series; valid for
// x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < 1000; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16) {
      break;
    }
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by Lentz's continued fraction;
// valid for x >= a + 1.
double gamma_q_continued_fraction(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) {
      break;
    }
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

EmpiricalSample::EmpiricalSample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("EmpiricalSample requires at least one value");
  }
  std::sort(values_.begin(), values_.end());
}

double ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b) {
  const auto& x = a.values();
  const auto& y = b.values();
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double sup = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    sup = std::max(sup, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return sup;
}

double ks_one_sample(const EmpiricalSample& a, const std::function<double(double)>& cdf) {
  const auto& x = a.values();
  const double n = static_cast<double>(x.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    sup = std::max(sup, std::max(f - static_cast<double>(i) / n,
                                 static_cast<double>(i + 1) / n - f));
  }
  return sup;
}

ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> expected_probs) {
  if (observed.size() != expected_probs.size()) {
    throw std::domain_error("chi_square_gof: observed/expected size mismatch");
  }
  if (observed.size() < 2) {
    throw std::domain_error("chi_square_gof: needs at least two categories");
  }
  double prob_sum = 0.0;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected_probs[i] > 0.0)) {
      throw std::domain_error("chi_square_gof: nonpositive category probability");
    }
    prob_sum += expected_probs[i];
    total += observed[i];
  }
  if (std::abs(prob_sum - 1.0) > kProbSumTolerance) {
    throw std::domain_error("chi_square_gof: probabilities do not sum to one");
  }
  if (total == 0) {
    throw std::domain_error("chi_square_gof: empty observation vector");
  }
  const double n = static_cast<double>(total);
  double statistic = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = n * expected_probs[i];
    if (expected < 5.0) {
      throw std::domain_error("chi_square_gof: expected count below five; merge the tail");
    }
    const double diff = static_cast<double>(observed[i]) - expected;
    statistic += diff * diff / expected;
  }
  const std::size_t df = observed.size() - 1;
  return {statistic, df, chi_square_survival(statistic, df)};
}

ChiSquareResult chi_square_two_sample(std::span<const std::uint64_t> observed_a,
                                      std::span<const std::uint64_t> observed_b) {
  if (observed_a.size() != observed_b.size() || observed_a.size() < 2) {
    throw std::domain_error("chi_square_two_sample: bad category layout");
  }
  std::uint64_t na = 0;
  std::uint64_t nb = 0;
  for (std::size_t i = 0; i < observed_a.size(); ++i) {
    na += observed_a[i];
    nb += observed_b[i];
  }
  if (na == 0 || nb == 0) {
    throw std::domain_error("chi_square_two_sample: empty sample");
  }
  const double total = static_cast<double>(na + nb);
  double statistic = 0.0;
  for (std::size_t i = 0; i < observed_a.size(); ++i) {
    const double pooled = static_cast<double>(observed_a[i] + observed_b[i]) / total;
    if (!(pooled > 0.0)) {
      throw std::domain_error("chi_square_two_sample: empty category");
    }
    const double ea = pooled * static_cast<double>(na);
    const double eb = pooled * static_cast<double>(nb);
    if (ea < 5.0 || eb < 5.0) {
      throw std::domain_error("chi_square_two_sample: expected count below five; merge the tail");
    }
    const double da = static_cast<double>(observed_a[i]) - ea;
    const double db = static_cast<double>(observed_b[i]) - eb;
    statistic += da * da / ea + db * db / eb;
  }
  const std::size_t df = observed_a.size() - 1;
  return {statistic, df, chi_square_survival(statistic, df)};
}

BinnedCategories merge_tail_categories(std::span<const std::uint64_t> observed,
                                       std::span<const double> probs,
                                       double min_expected) {
  if (observed.size() != probs.size() || observed.empty()) {
    throw std::domain_error("merge_tail_categories: bad category layout");
  }
  std::uint64_t total = 0;
  for (const auto count : observed) total += count;
  const double n = static_cast<double>(total);

  // First index whose own bucket would be too small.
  std::size_t cut = 0;
  while (cut < probs.size() && n * probs[cut] >= min_expected) ++cut;
  if (cut == probs.size()) {
    return {{observed.begin(), observed.end()}, {probs.begin(), probs.end()}};
  }
  // Pull categories into the tail bucket until it is big enough.
  auto tail_prob = [&](std::size_t from) {
    double p = 0.0;
    for (std::size_t i = from; i < probs.size(); ++i) p += probs[i];
    return p;
  };
  while (cut > 1 && n * tail_prob(cut) < min_expected) --cut;

  BinnedCategories out;
  out.observed.assign(observed.begin(), observed.begin() + cut);
  out.probs.assign(probs.begin(), probs.begin() + cut);
  std::uint64_t tail_count = 0;
  for (std::size_t i = cut; i < observed.size(); ++i) tail_count += observed[i];
  out.observed.push_back(tail_count);
  out.probs.push_back(tail_prob(cut));
  return out;
}

Summary summarize(const EmpiricalSample& sample) {
  const auto& x = sample.values();
  const double n = static_cast<double>(x.size());
  double mean = 0.0;
  for (const double v : x) mean += v;
  mean /= n;
  double ss = 0.0;
  for (const double v : x) {
    const double d = v - mean;
    ss += d * d;
  }
  const double variance = x.size() > 1 ? ss / (n - 1.0) : 0.0;
  Summary out;
  out.count = x.size();
  out.mean = mean;
  out.variance = variance;
  out.std_error = std::sqrt(variance / n);
  out.min = x.front();
  out.q25 = quantile(sample, 0.25);
  out.median = quantile(sample, 0.5);
  out.q75 = quantile(sample, 0.75);
  out.max = x.back();
  return out;
}

double quantile(const EmpiricalSample& sample, double q) {
  if (q < 0.0 || q > 1.0) {
    throw std::domain_error("quantile: q outside [0, 1]");
  }
  const auto& x = sample.values();
  if (x.size() == 1) {
    return x.front();
  }
  const double h = q * static_cast<double>(x.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= x.size()) {
    return x.back();
  }
  const double w = h - static_cast<double>(lo);
  return x[lo] * (1.0 - w) + x[lo + 1] * w;
}

double chi_square_survival(double statistic, std::size_t df) {
  if (statistic < 0.0 || df == 0) {
    throw std::domain_error("chi_square_survival: bad arguments");
  }
  const double a = 0.5 * static_cast<double>(df);
  const double x = 0.5 * statistic;
  if (x == 0.0) {
    return 1.0;
  }
  if (x < a + 1.0) {
    return 1.0 - gamma_p_series(a, x);
  }
  return gamma_q_continued_fraction(a, x);
}

}  // namespace hawkes
