#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hawkes {

// Deterministic random stream: a fixed engine plus fixed mappings to
// uniforms, exponentials, and small Poisson counts. Replication r of a batch
// draws from the stream derived from (master_seed, r), so output never
// depends on how replications are spread across workers.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t replication) {
    // splitmix64 finalizer over the pair; decorrelates adjacent replications.
    std::uint64_t z = master_seed + 0x9e3779b97f4a7c15ULL * (replication + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static RandomStream for_replication(std::uint64_t master_seed, std::uint64_t replication) {
    return RandomStream(derive_seed(master_seed, replication));
  }

  // Uniform on the open interval (0, 1); never returns an endpoint.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform on {0, ..., n - 1} without modulo bias (Lemire's multiply-shift
  // rejection; the slow path almost never runs).
  std::uint64_t uniform_int(std::uint64_t n) {
    unsigned __int128 product = static_cast<unsigned __int128>(engine_()) * n;
    if (static_cast<std::uint64_t>(product) < n) {
      const std::uint64_t threshold = (-n) % n;
      while (static_cast<std::uint64_t>(product) < threshold) {
        product = static_cast<unsigned __int128>(engine_()) * n;
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  double exponential(double rate) { return -std::log(uniform()) / rate; }

  // Knuth's product method; fine for the small means used here.
  std::uint64_t poisson(double mean) {
    const double floor_product = std::exp(-mean);
    std::uint64_t count = 0;
    double product = uniform();
    while (product > floor_product) {
      ++count;
      product *= uniform();
    }
    return count;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hawkes
