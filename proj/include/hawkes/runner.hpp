#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hawkes/kernel.hpp"

namespace hawkes {

// Raised for invalid configurations (maps to CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct KernelSpec {
  std::string family;  // "exponential" | "powerlaw"
  double alpha = 0.0;
  double beta = 0.0;
  double c = 0.0;
  double d = 0.0;
};

std::unique_ptr<ExcitationKernel> make_kernel(const KernelSpec& spec);

// Parses {"family": "exponential", "alpha": .., "beta": ..} or
// {"family": "powerlaw", "c": .., "d": ..}.
KernelSpec kernel_spec_from_json(const std::string& json_text);

enum class Method { parking, branching, dassios_zhao, poisson_race, duration_law };

Method method_from_string(const std::string& name);
const char* method_name(Method method);

enum class RecordFormat { csv, jsonl };

struct RunConfig {
  KernelSpec kernel;
  Method method = Method::parking;
  std::uint64_t replications = 1;
  std::optional<std::uint64_t> conditioned_size;
  std::uint64_t master_seed = 1;
  RecordFormat format = RecordFormat::csv;
  unsigned threads = 1;
};

// Rejects incompatible combinations (dassios-zhao / theorem2 off the
// exponential family, conditioning on methods that cannot honor it, ...).
void validate_config(const RunConfig& config);

// Reads a full RunConfig from JSON; unknown keys are rejected.
RunConfig run_config_from_json(const std::string& json_text);

struct ClusterRecord {
  std::uint64_t seed = 0;  // derived per-replication stream seed
  std::uint64_t n = 1;
  double tau = 0.0;
  std::vector<double> epochs;  // empty for the duration-only method
};

struct RunResult {
  std::vector<ClusterRecord> records;
  std::string method_label;
  std::string kernel_label;
  double wall_seconds = 0.0;
};

// Runs the configured batch. Replication r always draws from the stream
// derived from (master_seed, r), so records are byte-stable across runs and
// across thread counts.
RunResult run_batch(const RunConfig& config);

// Record serialization; epoch and duration floats carry 17 significant
// digits so a parse round-trips bit-exactly.
void write_records_csv(std::ostream& out, const RunResult& result);
void write_records_jsonl(std::ostream& out, const RunResult& result);

// Pretty-printed JSON summary (size histogram, duration summary, timing).
std::string summarize_run(const RunConfig& config, const RunResult& result);

}  // namespace hawkes
