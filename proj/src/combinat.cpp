#include "hawkes/combinat.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace hawkes {

namespace {

constexpr std::size_t kMaxEnumerableDyck = 14;
constexpr std::size_t kMaxEnumerablePf = 8;

void require_rho(double rho) {
  if (!(rho > 0.0) || !(rho < 1.0)) {
    throw std::domain_error("branching ratio must lie strictly inside (0, 1)");
  }
}

// Shared tail of both parking routines: rotate the empty space to position
// k + 1 and map the preferences into {1..k}.
ParkingFunction rotate_out_empty(std::span<const int> preferences, int empty_space) {
  const int spaces = static_cast<int>(preferences.size()) + 1;
  ParkingFunction pf;
  pf.entries.reserve(preferences.size());
  for (const int p : preferences) {
    int shifted = (p - empty_space) % spaces;
    if (shifted <= 0) {
      shifted += spaces;
    }
    // No car can prefer the space that ends up empty, so shifted < spaces.
    pf.entries.push_back(shifted);
  }
  assert(is_parking_function(pf.entries));
  return pf;
}

std::vector<int> draw_preferences(std::size_t k, RandomStream& rng) {
  std::vector<int> preferences(k);
  for (auto& p : preferences) {
    p = static_cast<int>(rng.uniform_int(k + 1)) + 1;
  }
  return preferences;
}

}  // namespace

bool is_parking_function(std::span<const int> entries) {
  if (entries.empty()) {
    return false;
  }
  std::vector<int> sorted(entries.begin(), entries.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 1 || sorted[i] > static_cast<int>(i) + 1) {
      return false;
    }
  }
  return true;
}

bool is_dyck_path(std::span<const int> steps) {
  if (steps.empty()) {
    return false;
  }
  int prev = 1;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i] < prev || steps[i] > static_cast<int>(i) + 1) {
      return false;
    }
    prev = steps[i];
  }
  return true;
}

std::vector<int> occupancy_counts(std::span<const int> entries, std::size_t length) {
  std::vector<int> counts(length, 0);
  for (const int v : entries) {
    if (v < 1 || v > static_cast<int>(length)) {
      throw std::invalid_argument("occupancy_counts: entry outside 1..length");
    }
    ++counts[static_cast<std::size_t>(v) - 1];
  }
  return counts;
}

double borel_log_pmf(double rho, std::uint64_t k) {
  require_rho(rho);
  if (k == 0) {
    throw std::domain_error("borel pmf is supported on k >= 1");
  }
  const double kd = static_cast<double>(k);
  return -rho * kd + (kd - 1.0) * std::log(rho * kd) - std::lgamma(kd + 1.0);
}

double borel_pmf(double rho, std::uint64_t k) { return std::exp(borel_log_pmf(rho, k)); }

namespace {

// Per-thread cache of the Borel cumulative masses for the last rho used, so
// repeated draws walk plain memory instead of re-running the log recursion.
struct BorelTable {
  double rho = 0.0;
  double log_rho = 0.0;
  double log_p = 0.0;       // log pmf at the last cached k
  std::vector<double> cumulative;

  void reset(double new_rho) {
    rho = new_rho;
    log_rho = std::log(new_rho);
    log_p = -new_rho;  // log pmf at k = 1
    cumulative.assign(1, std::exp(log_p));
  }

  // log p_{k+1} - log p_k = log rho - rho + (k - 1) log((k + 1) / k)
  void extend() {
    const double k = static_cast<double>(cumulative.size());
    log_p += log_rho - rho + (k - 1.0) * std::log1p(1.0 / k);
    cumulative.push_back(cumulative.back() + std::exp(log_p));
  }
};

}  // namespace

std::uint64_t sample_borel(double rho, RandomStream& rng) {
  require_rho(rho);
  thread_local BorelTable table;
  if (table.rho != rho) {
    table.reset(rho);
  }
  const double u = rng.uniform();
  std::uint64_t k = 1;
  while (table.cumulative[k - 1] < u) {
    if (k >= kBorelSampleCap) {
      throw std::overflow_error("sample_borel: inverse-CDF walk passed the hard cap");
    }
    if (k == table.cumulative.size()) {
      table.extend();
    }
    ++k;
  }
  return k;
}

namespace {

// First free space at or after x, by successor pointers with path halving.
// next[s] == s marks a free space; occupied spaces point toward the next
// candidate. Near-linear total cost over a full parking pass.
int find_free(std::vector<int>& next, int x) {
  while (next[static_cast<std::size_t>(x)] != x) {
    next[static_cast<std::size_t>(x)] =
        next[static_cast<std::size_t>(next[static_cast<std::size_t>(x)])];
    x = next[static_cast<std::size_t>(x)];
  }
  return x;
}

}  // namespace

ParkingFunction park_preferences(std::span<const int> preferences) {
  const int spaces = static_cast<int>(preferences.size()) + 1;
  if (preferences.empty()) {
    throw std::invalid_argument("park_preferences: empty preference vector");
  }
  thread_local std::vector<int> next;
  next.resize(static_cast<std::size_t>(spaces) + 2);
  for (int s = 1; s <= spaces + 1; ++s) {
    next[static_cast<std::size_t>(s)] = s;
  }
  for (const int p : preferences) {
    if (p < 1 || p > spaces) {
      throw std::invalid_argument("park_preferences: preference outside 1..k+1");
    }
    int slot = find_free(next, p);
    if (slot == spaces + 1) {
      slot = find_free(next, 1);  // wrap around the circle
    }
    next[static_cast<std::size_t>(slot)] = slot + 1;
  }
  return rotate_out_empty(preferences, find_free(next, 1));
}

ParkingFunction park_preferences_reference(std::span<const int> preferences) {
  const int spaces = static_cast<int>(preferences.size()) + 1;
  if (preferences.empty()) {
    throw std::invalid_argument("park_preferences_reference: empty preference vector");
  }
  std::vector<bool> occupied(static_cast<std::size_t>(spaces) + 1, false);
  for (const int p : preferences) {
    if (p < 1 || p > spaces) {
      throw std::invalid_argument("park_preferences_reference: preference outside 1..k+1");
    }
    int slot = p;
    while (occupied[static_cast<std::size_t>(slot)]) {
      slot = slot % spaces + 1;
    }
    occupied[static_cast<std::size_t>(slot)] = true;
  }
  int empty_space = 0;
  for (int s = 1; s <= spaces; ++s) {
    if (!occupied[static_cast<std::size_t>(s)]) {
      empty_space = s;
      break;
    }
  }
  return rotate_out_empty(preferences, empty_space);
}

ParkingFunction sample_parking_function(std::size_t k, RandomStream& rng) {
  if (k == 0) {
    throw std::domain_error("sample_parking_function: k must be >= 1");
  }
  return park_preferences(draw_preferences(k, rng));
}

ParkingFunction sample_parking_function_reference(std::size_t k, RandomStream& rng) {
  if (k == 0) {
    throw std::domain_error("sample_parking_function_reference: k must be >= 1");
  }
  return park_preferences_reference(draw_preferences(k, rng));
}

std::vector<DyckPath> enumerate_dyck(std::size_t k) {
  if (k == 0 || k > kMaxEnumerableDyck) {
    throw std::length_error("enumerate_dyck: k outside 1..14");
  }
  std::vector<DyckPath> out;
  std::vector<int> current(k, 0);
  // Depth-first over nondecreasing vectors with d_i <= i.
  auto extend = [&](auto&& self, std::size_t i) -> void {
    if (i == k) {
      out.push_back(DyckPath{current});
      return;
    }
    const int lo = i == 0 ? 1 : current[i - 1];
    for (int v = lo; v <= static_cast<int>(i) + 1; ++v) {
      current[i] = v;
      self(self, i + 1);
    }
  };
  extend(extend, 0);
  return out;
}

std::vector<ParkingFunction> enumerate_parking_functions(std::size_t k) {
  if (k == 0 || k > kMaxEnumerablePf) {
    throw std::length_error("enumerate_parking_functions: k outside 1..8");
  }
  std::vector<ParkingFunction> out;
  std::vector<int> current(k, 1);
  while (true) {
    if (is_parking_function(current)) {
      out.push_back(ParkingFunction{current});
    }
    // Odometer over {1..k}^k.
    std::size_t pos = k;
    while (pos > 0 && current[pos - 1] == static_cast<int>(k)) {
      current[pos - 1] = 1;
      --pos;
    }
    if (pos == 0) {
      break;
    }
    ++current[pos - 1];
  }
  return out;
}

DyckPath sort_to_dyck(const ParkingFunction& pf) {
  if (!is_parking_function(pf.entries)) {
    throw std::invalid_argument("sort_to_dyck: input violates the parking condition");
  }
  DyckPath d{pf.entries};
  std::sort(d.steps.begin(), d.steps.end());
  return d;
}

std::uint64_t region_weight(const DyckPath& d) {
  if (!is_dyck_path(d.steps)) {
    throw std::invalid_argument("region_weight: invalid Dyck path");
  }
  const auto counts = occupancy_counts(d.steps, d.length());
  // Multinomial k! / prod kappa_v!, accumulated as a running product of
  // binomials to stay in integers.
  std::uint64_t weight = 1;
  std::uint64_t placed = 0;
  auto binomial = [](std::uint64_t n, std::uint64_t r) {
    std::uint64_t result = 1;
    r = std::min(r, n - r);
    for (std::uint64_t i = 1; i <= r; ++i) {
      result = result * (n - r + i) / i;
    }
    return result;
  };
  for (const int c : counts) {
    if (c == 0) continue;
    placed += static_cast<std::uint64_t>(c);
    weight *= binomial(placed, static_cast<std::uint64_t>(c));
  }
  return weight;
}

double region_probability(const DyckPath& d) {
  return static_cast<double>(region_weight(d)) /
         static_cast<double>(parking_function_count(d.length()));
}

std::uint64_t parking_function_count(std::size_t k) {
  if (k == 0 || k > kMaxEnumerableDyck) {
    throw std::length_error("parking_function_count: k outside 1..14");
  }
  std::uint64_t result = 1;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    result *= static_cast<std::uint64_t>(k) + 1;
  }
  return result;
}

std::uint64_t catalan_number(std::size_t k) {
  if (k == 0 || k > kMaxEnumerableDyck) {
    throw std::length_error("catalan_number: k outside 1..14");
  }
  // C(2k, k) / (k + 1); each partial product below is itself a binomial.
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (static_cast<std::uint64_t>(k) + i) / i;
  }
  return result / (static_cast<std::uint64_t>(k) + 1);
}

}  // namespace hawkes
