#include "hawkes/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace hawkes {

namespace {

constexpr std::size_t kMaxRejectionDim = 12;
constexpr std::uint64_t kRejectionAttemptBudget = 50000000;  // 5e7

void require_rho(double rho) {
  if (!(rho > 0.0) || !(rho < 1.0)) {
    throw std::domain_error("branching ratio must lie strictly inside (0, 1)");
  }
}

}  // namespace

void validate_compensator(const CompensatorVector& lam) {
  require_rho(lam.rho);
  if (!lam.boundary_gaps.empty() && lam.boundary_gaps.size() != lam.values.size()) {
    throw std::invalid_argument("boundary gaps must be absent or match the values");
  }
  double prev = 0.0;
  for (std::size_t i = 0; i < lam.values.size(); ++i) {
    const double v = lam.values[i];
    const double bound = static_cast<double>(i + 1) * lam.rho;
    if (!(v > prev)) {
      throw std::invalid_argument("compensator points must increase strictly from zero");
    }
    if (!(v < bound) || !(lam.gap(i) > 0.0)) {
      throw std::invalid_argument("compensator point exceeds its index bound");
    }
    if (lam.has_boundary_gaps() &&
        std::abs(lam.boundary_gaps[i] - (bound - v)) > 1e-9 * std::max(1.0, bound)) {
      throw std::invalid_argument("boundary gap disagrees with its compensator point");
    }
    prev = v;
  }
}

CompensatorVector sample_compensator_points(std::size_t k, double rho, RandomStream& rng) {
  require_rho(rho);
  CompensatorVector out;
  out.rho = rho;
  if (k == 0) {
    return out;
  }
  // Same draws and the same sorted output as the traced variant, but the
  // sort runs as a bucket pass: each point's integer part is its parking
  // entry, so grouping by entry and ordering the uniforms inside a bucket
  // (descending) yields the ascending points in expected linear time.
  const ParkingFunction pf = sample_parking_function(k, rng);
  thread_local std::vector<int> bucket_end;
  thread_local std::vector<double> bucketed;
  bucket_end.assign(k + 1, 0);
  bucketed.resize(k);
  for (const int entry : pf.entries) {
    ++bucket_end[static_cast<std::size_t>(entry)];
  }
  for (std::size_t v = 1; v <= k; ++v) {
    bucket_end[v] += bucket_end[v - 1];
  }
  // Scatter pass; uniforms are consumed in entry order, and the order
  // inside a bucket is irrelevant once the bucket is sorted.
  thread_local std::vector<int> cursor;
  cursor.assign(bucket_end.begin(), bucket_end.end());
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t v = static_cast<std::size_t>(pf.entries[j]);
    bucketed[static_cast<std::size_t>(--cursor[v])] = rng.uniform();
  }
  out.values.resize(k);
  out.boundary_gaps.resize(k);
  std::size_t begin = 0;
  for (std::size_t v = 1; v <= k; ++v) {
    const std::size_t end = static_cast<std::size_t>(bucket_end[v]);
    if (end > begin) {
      std::sort(bucketed.begin() + static_cast<std::ptrdiff_t>(begin),
                bucketed.begin() + static_cast<std::ptrdiff_t>(end), std::greater<>());
      for (std::size_t i = begin; i < end; ++i) {
        out.values[i] = rho * (static_cast<double>(v) - bucketed[i]);
        out.boundary_gaps[i] =
            rho * (static_cast<double>(static_cast<int>(i) + 1 - static_cast<int>(v)) +
                   bucketed[i]);
      }
      begin = end;
    }
  }
  return out;
}

PolytopeSample sample_compensator_points_traced(std::size_t k, double rho, RandomStream& rng) {
  require_rho(rho);
  PolytopeSample out;
  out.lambda.rho = rho;
  if (k == 0) {
    return out;
  }
  out.pf = sample_parking_function(k, rng);
  out.uniforms.resize(k);
  for (auto& u : out.uniforms) {
    u = rng.uniform();
  }
  std::vector<std::pair<double, std::uint32_t>> points(k);
  for (std::size_t i = 0; i < k; ++i) {
    points[i] = {static_cast<double>(out.pf.entries[i]) - out.uniforms[i],
                 static_cast<std::uint32_t>(i)};
  }
  std::sort(points.begin(), points.end());
  out.lambda.values.resize(k);
  out.lambda.boundary_gaps.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = points[i].second;
    out.lambda.values[i] = rho * points[i].first;
    // (i + 1) - (pi_j - U_j), with the integers cancelled first so the gap
    // stays sharp when the point sits against its bound.
    out.lambda.boundary_gaps[i] =
        rho * (static_cast<double>(static_cast<int>(i) + 1 - out.pf.entries[j]) +
               out.uniforms[j]);
  }
  return out;
}

DyckPath classify_region(const CompensatorVector& lam) {
  validate_compensator(lam);
  DyckPath d;
  d.steps.reserve(lam.size());
  for (const double v : lam.values) {
    d.steps.push_back(static_cast<int>(std::floor(v / lam.rho)) + 1);
  }
  if (!is_dyck_path(d.steps)) {
    throw std::invalid_argument("classify_region: classification left the Dyck lattice");
  }
  return d;
}

CompensatorVector rejection_sample_polytope(std::size_t k, double rho, RandomStream& rng,
                                            std::uint64_t* attempts_out) {
  require_rho(rho);
  if (k == 0 || k > kMaxRejectionDim) {
    throw std::length_error("rejection_sample_polytope: k outside 1..12");
  }
  CompensatorVector out;
  out.rho = rho;
  out.values.resize(k);
  for (std::uint64_t attempt = 1; attempt <= kRejectionAttemptBudget; ++attempt) {
    bool increasing = true;
    double prev = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double v = static_cast<double>(i + 1) * rho * rng.uniform();
      out.values[i] = v;
      if (!(v > prev)) {
        increasing = false;
        break;
      }
      prev = v;
    }
    if (increasing) {
      if (attempts_out != nullptr) {
        *attempts_out = attempt;
      }
      return out;
    }
  }
  throw std::runtime_error("rejection_sample_polytope: attempt budget exhausted");
}

}  // namespace hawkes
