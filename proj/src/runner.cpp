#include "hawkes/runner.hpp"

#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "hawkes/cluster.hpp"
#include "hawkes/markov.hpp"
#include "hawkes/stats.hpp"

namespace hawkes {

namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

const ExponentialKernel* as_exponential(const ExcitationKernel& kernel) {
  return dynamic_cast<const ExponentialKernel*>(&kernel);
}

ClusterRecord run_one(const RunConfig& config, const ExcitationKernel& kernel,
                      std::uint64_t replication) {
  ClusterRecord record;
  record.seed = RandomStream::derive_seed(config.master_seed, replication);
  RandomStream rng(record.seed);
  switch (config.method) {
    case Method::parking: {
      Cluster cluster = simulate_cluster(kernel, rng, config.conditioned_size);
      record.n = cluster.size();
      record.tau = cluster.duration();
      record.epochs = std::move(cluster.epochs);
      break;
    }
    case Method::branching: {
      Cluster cluster = branching_cluster(kernel, rng);
      record.n = cluster.size();
      record.tau = cluster.duration();
      record.epochs = std::move(cluster.epochs);
      break;
    }
    case Method::dassios_zhao: {
      const auto* exponential = as_exponential(kernel);
      Cluster cluster = dassios_zhao_cluster(exponential->alpha(), exponential->beta(), rng);
      record.n = cluster.size();
      record.tau = cluster.duration();
      record.epochs = std::move(cluster.epochs);
      break;
    }
    case Method::poisson_race: {
      const CompensatorVector lam =
          sample_compensator_poisson_race(kernel.branching_ratio(), rng);
      Cluster cluster = invert_compensator(kernel, lam);
      record.n = cluster.size();
      record.tau = cluster.duration();
      record.epochs = std::move(cluster.epochs);
      break;
    }
    case Method::duration_law: {
      const auto* exponential = as_exponential(kernel);
      const DurationSample sample = sample_cluster_duration(
          exponential->alpha(), exponential->beta(), rng, config.conditioned_size);
      record.n = sample.cluster_size;
      record.tau = sample.duration;
      break;
    }
  }
  return record;
}

}  // namespace

std::unique_ptr<ExcitationKernel> make_kernel(const KernelSpec& spec) {
  try {
    if (spec.family == "exponential") {
      return std::make_unique<ExponentialKernel>(spec.alpha, spec.beta);
    }
    if (spec.family == "powerlaw") {
      return std::make_unique<PowerLawKernel>(spec.c, spec.d);
    }
  } catch (const std::domain_error& error) {
    throw ConfigError(std::string("invalid kernel parameters: ") + error.what());
  }
  throw ConfigError("unknown kernel family '" + spec.family + "'");
}

KernelSpec kernel_spec_from_json(const std::string& json_text) {
  json parsed;
  try {
    parsed = json::parse(json_text);
  } catch (const json::parse_error& error) {
    throw ConfigError(std::string("kernel config is not valid JSON: ") + error.what());
  }
  if (!parsed.is_object() || !parsed.contains("family")) {
    throw ConfigError("kernel config must be an object with a 'family' key");
  }
  KernelSpec spec;
  spec.family = parsed.at("family").get<std::string>();
  if (spec.family == "exponential") {
    spec.alpha = parsed.at("alpha").get<double>();
    spec.beta = parsed.at("beta").get<double>();
  } else if (spec.family == "powerlaw") {
    spec.c = parsed.at("c").get<double>();
    spec.d = parsed.at("d").get<double>();
  } else {
    throw ConfigError("unknown kernel family '" + spec.family + "'");
  }
  return spec;
}

Method method_from_string(const std::string& name) {
  if (name == "parking") return Method::parking;
  if (name == "branching") return Method::branching;
  if (name == "dassios-zhao") return Method::dassios_zhao;
  if (name == "poisson-race") return Method::poisson_race;
  if (name == "theorem2") return Method::duration_law;
  throw ConfigError("unknown method '" + name + "'");
}

const char* method_name(Method method) {
  switch (method) {
    case Method::parking: return "parking";
    case Method::branching: return "branching";
    case Method::dassios_zhao: return "dassios-zhao";
    case Method::poisson_race: return "poisson-race";
    case Method::duration_law: return "theorem2";
  }
  return "unknown";
}

void validate_config(const RunConfig& config) {
  if (config.replications == 0) {
    throw ConfigError("replications must be >= 1");
  }
  const bool exponential = config.kernel.family == "exponential";
  if (config.method == Method::dassios_zhao && !exponential) {
    throw ConfigError("method dassios-zhao applies only to the exponential kernel");
  }
  if (config.method == Method::duration_law && !exponential) {
    throw ConfigError("method theorem2 applies only to the exponential kernel");
  }
  if (config.conditioned_size.has_value()) {
    if (*config.conditioned_size == 0) {
      throw ConfigError("conditioned size must be >= 1");
    }
    if (config.method != Method::parking && config.method != Method::duration_law) {
      throw ConfigError("only the parking and theorem2 methods honor a conditioned size");
    }
  }
  if (config.threads == 0) {
    throw ConfigError("threads must be >= 1");
  }
  make_kernel(config.kernel);  // parameter validation
}

RunConfig run_config_from_json(const std::string& json_text) {
  json parsed;
  try {
    parsed = json::parse(json_text);
  } catch (const json::parse_error& error) {
    throw ConfigError(std::string("run config is not valid JSON: ") + error.what());
  }
  if (!parsed.is_object()) {
    throw ConfigError("run config must be a JSON object");
  }
  static const char* known_keys[] = {"kernel", "method",  "replications", "cond_size",
                                     "seed",   "format",  "threads"};
  for (const auto& [key, value] : parsed.items()) {
    (void)value;
    bool known = false;
    for (const char* candidate : known_keys) {
      if (key == candidate) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError("unknown run config key '" + key + "'");
    }
  }
  RunConfig config;
  if (!parsed.contains("kernel")) {
    throw ConfigError("run config needs a 'kernel' object");
  }
  config.kernel = kernel_spec_from_json(parsed.at("kernel").dump());
  if (parsed.contains("method")) {
    config.method = method_from_string(parsed.at("method").get<std::string>());
  }
  if (parsed.contains("replications")) {
    config.replications = parsed.at("replications").get<std::uint64_t>();
  }
  if (parsed.contains("cond_size")) {
    config.conditioned_size = parsed.at("cond_size").get<std::uint64_t>();
  }
  if (parsed.contains("seed")) {
    config.master_seed = parsed.at("seed").get<std::uint64_t>();
  }
  if (parsed.contains("format")) {
    const auto format = parsed.at("format").get<std::string>();
    if (format == "csv") {
      config.format = RecordFormat::csv;
    } else if (format == "jsonl") {
      config.format = RecordFormat::jsonl;
    } else {
      throw ConfigError("unknown format '" + format + "'");
    }
  }
  if (parsed.contains("threads")) {
    config.threads = parsed.at("threads").get<unsigned>();
  }
  return config;
}

RunResult run_batch(const RunConfig& config) {
  validate_config(config);
  const auto kernel = make_kernel(config.kernel);

  RunResult result;
  result.method_label = method_name(config.method);
  result.kernel_label = kernel->label();
  result.records.resize(config.replications);

  const auto started = std::chrono::steady_clock::now();
  const unsigned worker_count =
      static_cast<unsigned>(std::min<std::uint64_t>(config.threads, config.replications));
  if (worker_count <= 1) {
    for (std::uint64_t r = 0; r < config.replications; ++r) {
      result.records[r] = run_one(config, *kernel, r);
    }
  } else {
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      constexpr std::uint64_t chunk = 64;
      while (true) {
        const std::uint64_t begin = next.fetch_add(chunk);
        if (begin >= config.replications) {
          return;
        }
        const std::uint64_t end = std::min(begin + chunk, config.replications);
        try {
          for (std::uint64_t r = begin; r < end; ++r) {
            result.records[r] = run_one(config, *kernel, r);
          }
        } catch (...) {
          const std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) {
            failure = std::current_exception();
          }
          return;
        }
      }
    };
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (unsigned w = 0; w < worker_count; ++w) {
      workers.emplace_back(worker);
    }
    for (auto& thread : workers) {
      thread.join();
    }
    if (failure) {
      std::rethrow_exception(failure);
    }
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

void write_records_csv(std::ostream& out, const RunResult& result) {
  out << "seed,N,tau,method,kernel\n";
  for (const auto& record : result.records) {
    out << record.seed << ',' << record.n << ',' << format_double(record.tau) << ','
        << result.method_label << ',' << result.kernel_label << '\n';
  }
}

void write_records_jsonl(std::ostream& out, const RunResult& result) {
  for (const auto& record : result.records) {
    out << "{\"seed\":" << record.seed << ",\"N\":" << record.n
        << ",\"tau\":" << format_double(record.tau) << ",\"epochs\":[";
    for (std::size_t i = 0; i < record.epochs.size(); ++i) {
      if (i > 0) out << ',';
      out << format_double(record.epochs[i]);
    }
    out << "],\"method\":\"" << result.method_label << "\",\"kernel\":\""
        << result.kernel_label << "\"}\n";
  }
}

std::string summarize_run(const RunConfig& config, const RunResult& result) {
  json summary;
  summary["method"] = result.method_label;
  summary["kernel"] = result.kernel_label;
  summary["replications"] = config.replications;
  summary["seed"] = config.master_seed;
  if (config.conditioned_size.has_value()) {
    summary["cond_size"] = *config.conditioned_size;
  }

  std::map<std::uint64_t, std::uint64_t> size_counts;
  std::vector<double> durations;
  durations.reserve(result.records.size());
  for (const auto& record : result.records) {
    ++size_counts[record.n];
    durations.push_back(record.tau);
  }
  json histogram = json::array();
  for (const auto& [size, count] : size_counts) {
    histogram.push_back(json::array({size, count}));
  }
  summary["size_histogram"] = histogram;

  const Summary duration_summary = summarize(EmpiricalSample(std::move(durations)));
  summary["duration"] = {
      {"mean", duration_summary.mean},     {"variance", duration_summary.variance},
      {"std_error", duration_summary.std_error}, {"min", duration_summary.min},
      {"q25", duration_summary.q25},       {"median", duration_summary.median},
      {"q75", duration_summary.q75},       {"max", duration_summary.max},
  };
  summary["wall_seconds"] = result.wall_seconds;
  return summary.dump(2);
}

}  // namespace hawkes
