// Command-line front end: simulation campaigns, verification suites,
// duration studies, and timing tables for the cluster samplers.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hawkes/cluster.hpp"
#include "hawkes/markov.hpp"
#include "hawkes/runner.hpp"
#include "hawkes/stats.hpp"
#include "hawkes/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitConfigError = 2;

struct SimulateOptions {
  std::string kernel_family = "exponential";
  double alpha = 3.0;
  double beta = 4.0;
  double c = 1.0;
  double d = 2.0;
  std::string method = "parking";
  std::uint64_t reps = 1000;
  std::uint64_t seed = 1;
  std::int64_t cond_size = -1;
  std::string out_path;
  std::string format = "csv";
  unsigned threads = 1;
  std::string config_path;
};

hawkes::RunConfig build_run_config(const SimulateOptions& options) {
  hawkes::RunConfig config;
  if (!options.config_path.empty()) {
    std::ifstream in(options.config_path);
    if (!in) {
      throw hawkes::ConfigError("cannot open config file '" + options.config_path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    config = hawkes::run_config_from_json(buffer.str());
    return config;
  }
  config.kernel.family = options.kernel_family;
  config.kernel.alpha = options.alpha;
  config.kernel.beta = options.beta;
  config.kernel.c = options.c;
  config.kernel.d = options.d;
  config.method = hawkes::method_from_string(options.method);
  config.replications = options.reps;
  config.master_seed = options.seed;
  if (options.cond_size >= 0) {
    config.conditioned_size = static_cast<std::uint64_t>(options.cond_size);
  }
  if (options.format == "csv") {
    config.format = hawkes::RecordFormat::csv;
  } else if (options.format == "jsonl") {
    config.format = hawkes::RecordFormat::jsonl;
  } else {
    throw hawkes::ConfigError("unknown format '" + options.format + "'");
  }
  config.threads = options.threads;
  return config;
}

int cmd_simulate(const SimulateOptions& options) {
  const hawkes::RunConfig config = build_run_config(options);
  const hawkes::RunResult result = hawkes::run_batch(config);

  const bool records_to_stdout = options.out_path.empty() || options.out_path == "-";
  std::ofstream file;
  if (!records_to_stdout) {
    file.open(options.out_path, std::ios::binary);
    if (!file) {
      throw hawkes::ConfigError("cannot open output file '" + options.out_path + "'");
    }
  }
  std::ostream& records_out = records_to_stdout ? std::cout : file;
  if (config.format == hawkes::RecordFormat::csv) {
    hawkes::write_records_csv(records_out, result);
  } else {
    hawkes::write_records_jsonl(records_out, result);
  }
  records_out.flush();

  // Keep the summary away from the record stream.
  std::ostream& summary_out = records_to_stdout ? std::cerr : std::cout;
  summary_out << hawkes::summarize_run(config, result) << '\n';
  return kExitOk;
}

struct VerifyOptions {
  std::string suite = "all";
  std::uint64_t seed = 7;
  double budget = 1.0;
  std::string json_out;
};

int cmd_verify(const VerifyOptions& options) {
  const auto results = hawkes::run_verify_suite(options.suite, options.seed, options.budget);
  std::size_t failures = 0;
  std::size_t skipped = 0;
  for (const auto& check : results) {
    const char* status = check.skipped ? "SKIP" : (check.passed ? "PASS" : "FAIL");
    if (check.skipped) {
      ++skipped;
    } else if (!check.passed) {
      ++failures;
    }
    std::cout << '[' << status << "] " << check.suite << '/' << check.name;
    if (!check.skipped) {
      std::cout << " statistic=" << check.statistic << " threshold=" << check.threshold;
    }
    if (!check.detail.empty()) {
      std::cout << " (" << check.detail << ')';
    }
    std::cout << '\n';
  }
  std::cout << results.size() - failures - skipped << " passed, " << failures << " failed, "
            << skipped << " skipped\n";

  if (!options.json_out.empty()) {
    nlohmann::json report = nlohmann::json::array();
    for (const auto& check : results) {
      report.push_back({{"suite", check.suite},
                        {"name", check.name},
                        {"status", check.skipped ? "skip" : (check.passed ? "pass" : "fail")},
                        {"statistic", check.statistic},
                        {"threshold", check.threshold},
                        {"detail", check.detail}});
    }
    std::ofstream out(options.json_out, std::ios::binary);
    if (!out) {
      throw hawkes::ConfigError("cannot open report file '" + options.json_out + "'");
    }
    out << report.dump(2) << '\n';
  }
  return failures == 0 ? kExitOk : kExitVerificationFailure;
}

struct BenchOptions {
  std::uint64_t reps = 20000;
  std::uint64_t seed = 1;
  std::vector<std::string> families = {"exponential", "powerlaw"};
  std::vector<unsigned> scale_exponents = {1, 2, 3, 4};
  std::vector<std::string> methods = {"parking", "dassios-zhao", "branching"};
  std::string out_path;
};

hawkes::KernelSpec bench_kernel(const std::string& family, unsigned m) {
  hawkes::KernelSpec spec;
  spec.family = family;
  if (family == "exponential") {
    spec.beta = std::pow(4.0, m);
    spec.alpha = spec.beta - 1.0;
  } else {
    spec.d = std::pow(2.0, m);
    spec.c = spec.d - 1.0;
  }
  return spec;
}

int cmd_bench(const BenchOptions& options) {
  std::vector<hawkes::KernelSpec> kernels;
  for (const auto& family : options.families) {
    if (family != "exponential" && family != "powerlaw") {
      throw hawkes::ConfigError("unknown kernel family '" + family + "'");
    }
    for (const unsigned m : options.scale_exponents) {
      kernels.push_back(bench_kernel(family, m));
    }
  }

  std::vector<std::string> kernel_labels;
  for (const auto& spec : kernels) {
    kernel_labels.push_back(hawkes::make_kernel(spec)->label());
  }

  std::ostringstream table;
  table << "method";
  for (const auto& label : kernel_labels) {
    table << ',' << label;
  }
  table << '\n';

  // cells[method][kernel]: median seconds, negative for inapplicable pairs
  std::vector<std::vector<double>> cells(options.methods.size(),
                                         std::vector<double>(kernels.size(), -1.0));
  if (options.reps > 0) {
    for (std::size_t mi = 0; mi < options.methods.size(); ++mi) {
      for (std::size_t ki = 0; ki < kernels.size(); ++ki) {
        hawkes::RunConfig config;
        config.kernel = kernels[ki];
        config.method = hawkes::method_from_string(options.methods[mi]);
        config.master_seed = options.seed;
        config.replications = options.reps;
        try {
          hawkes::validate_config(config);
        } catch (const hawkes::ConfigError&) {
          continue;  // inapplicable pair, stays marked
        }
        // Warm-up batch excluded from the timing, then median of three runs.
        hawkes::RunConfig warmup = config;
        warmup.replications = std::max<std::uint64_t>(options.reps / 10, 1);
        hawkes::run_batch(warmup);
        std::vector<double> timings;
        for (int run = 0; run < 3; ++run) {
          timings.push_back(hawkes::run_batch(config).wall_seconds);
        }
        std::sort(timings.begin(), timings.end());
        cells[mi][ki] = timings[1];
      }
    }
  }

  if (options.reps > 0) {
    for (std::size_t mi = 0; mi < options.methods.size(); ++mi) {
      table << options.methods[mi];
      for (std::size_t ki = 0; ki < kernels.size(); ++ki) {
        table << ',';
        if (cells[mi][ki] < 0.0) {
          table << "×";
        } else {
          table << cells[mi][ki];
        }
      }
      table << '\n';
    }
  }

  if (options.out_path.empty() || options.out_path == "-") {
    std::cout << table.str();
  } else {
    std::ofstream out(options.out_path, std::ios::binary);
    if (!out) {
      throw hawkes::ConfigError("cannot open output file '" + options.out_path + "'");
    }
    out << table.str();
  }

  // Non-gating sanity note: with large exponential clusters the polytope
  // method should not trail the branching baseline.
  const auto method_index = [&](const std::string& name) {
    const auto it = std::find(options.methods.begin(), options.methods.end(), name);
    return it == options.methods.end()
               ? options.methods.size()
               : static_cast<std::size_t>(it - options.methods.begin());
  };
  const std::size_t parking_index = method_index("parking");
  const std::size_t branching_index = method_index("branching");
  if (options.reps > 0 && parking_index < options.methods.size() &&
      branching_index < options.methods.size()) {
    for (std::size_t ki = 0; ki < kernels.size(); ++ki) {
      const auto& spec = kernels[ki];
      if (spec.family != "exponential" || !(spec.beta >= 64.0)) {
        continue;
      }
      const double parking_time = cells[parking_index][ki];
      const double branching_time = cells[branching_index][ki];
      if (parking_time < 0.0 || branching_time < 0.0) {
        continue;
      }
      std::cerr << "note: " << kernel_labels[ki] << " parking=" << parking_time
                << "s branching=" << branching_time << 's'
                << (parking_time <= branching_time ? " (parking ahead, as expected)"
                                                   : " (parking behind)")
                << '\n';
    }
  }
  return kExitOk;
}

struct DurationOptions {
  double alpha = 3.0;
  double beta = 4.0;
  std::uint64_t reps = 100000;
  std::uint64_t seed = 1;
  std::int64_t cond_size = -1;
  bool compare = false;
};

int cmd_duration(const DurationOptions& options) {
  if (!(options.alpha > 0.0) || !(options.alpha < options.beta)) {
    throw hawkes::ConfigError("duration study requires 0 < alpha < beta");
  }
  if (options.reps == 0) {
    throw hawkes::ConfigError("replications must be >= 1");
  }
  std::optional<std::uint64_t> conditioned;
  if (options.cond_size >= 0) {
    if (options.cond_size == 0) {
      throw hawkes::ConfigError("conditioned size must be >= 1");
    }
    conditioned = static_cast<std::uint64_t>(options.cond_size);
  }

  hawkes::RandomStream rng = hawkes::RandomStream::for_replication(options.seed, 0);
  std::vector<double> durations(options.reps);
  for (auto& v : durations) {
    v = hawkes::sample_cluster_duration(options.alpha, options.beta, rng, conditioned).duration;
  }

  nlohmann::json report;
  report["alpha"] = options.alpha;
  report["beta"] = options.beta;
  report["replications"] = options.reps;
  report["seed"] = options.seed;
  if (conditioned.has_value()) {
    report["cond_size"] = *conditioned;
  }
  const hawkes::Summary summary = hawkes::summarize(hawkes::EmpiricalSample(durations));
  report["duration"] = {{"mean", summary.mean},       {"variance", summary.variance},
                        {"std_error", summary.std_error}, {"min", summary.min},
                        {"q25", summary.q25},         {"median", summary.median},
                        {"q75", summary.q75},         {"max", summary.max}};

  if (options.compare) {
    hawkes::RandomStream pipeline_rng = hawkes::RandomStream::for_replication(options.seed, 1);
    const hawkes::ExponentialKernel kernel(options.alpha, options.beta);
    std::vector<double> pipeline(options.reps);
    for (auto& v : pipeline) {
      v = hawkes::simulate_cluster(kernel, pipeline_rng, conditioned).duration();
    }
    report["compare_ks"] = hawkes::ks_two_sample(hawkes::EmpiricalSample(durations),
                                                 hawkes::EmpiricalSample(pipeline));
  }
  std::cout << report.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Hawkes cluster simulation and verification"};
  app.require_subcommand(1);

  SimulateOptions simulate_options;
  auto* simulate = app.add_subcommand("simulate", "Run a cluster simulation campaign");
  simulate->add_option("--kernel", simulate_options.kernel_family,
                       "Kernel family: exponential | powerlaw");
  simulate->add_option("--alpha", simulate_options.alpha, "Exponential jump size");
  simulate->add_option("--beta", simulate_options.beta, "Exponential decay rate");
  simulate->add_option("--c", simulate_options.c, "Power-law scale");
  simulate->add_option("--d", simulate_options.d, "Power-law shift");
  simulate->add_option("--method", simulate_options.method,
                       "parking | branching | dassios-zhao | poisson-race | theorem2");
  simulate->add_option("--reps", simulate_options.reps, "Replication count");
  simulate->add_option("--seed", simulate_options.seed, "Master seed");
  simulate->add_option("--cond-size", simulate_options.cond_size,
                       "Condition every cluster on this exact size");
  simulate->add_option("--out", simulate_options.out_path, "Record output path ('-' = stdout)");
  simulate->add_option("--format", simulate_options.format, "csv | jsonl");
  simulate->add_option("--threads", simulate_options.threads, "Worker threads");
  simulate->add_option("--config", simulate_options.config_path,
                       "JSON config file (replaces the flags above)");

  VerifyOptions verify_options;
  auto* verify = app.add_subcommand("verify", "Run Monte Carlo verification suites");
  verify->add_option("--suite", verify_options.suite,
                     "polytope | combinat | markov | cross-sampler | all");
  verify->add_option("--seed", verify_options.seed, "Master seed");
  verify->add_option("--budget", verify_options.budget,
                     "Replication multiplier (checks skip when underpowered)");
  verify->add_option("--json-out", verify_options.json_out, "Write the JSON report here");

  BenchOptions bench_options;
  auto* bench = app.add_subcommand("bench", "Time the samplers across kernel families");
  bench->add_option("--reps", bench_options.reps, "Replications per timed run");
  bench->add_option("--seed", bench_options.seed, "Master seed");
  bench->add_option("--families", bench_options.families, "Kernel families to sweep")
      ->delimiter(',');
  bench->add_option("--scales", bench_options.scale_exponents,
                    "Scale exponents m (exponential: beta=4^m; powerlaw: d=2^m)")
      ->delimiter(',');
  bench->add_option("--methods", bench_options.methods, "Methods to time")->delimiter(',');
  bench->add_option("--out", bench_options.out_path, "CSV output path ('-' = stdout)");

  DurationOptions duration_options;
  auto* duration = app.add_subcommand("duration", "Closed-form duration study");
  duration->add_option("--alpha", duration_options.alpha, "Exponential jump size");
  duration->add_option("--beta", duration_options.beta, "Exponential decay rate");
  duration->add_option("--reps", duration_options.reps, "Replication count");
  duration->add_option("--seed", duration_options.seed, "Master seed");
  duration->add_option("--cond-size", duration_options.cond_size,
                       "Condition on this exact cluster size");
  duration->add_flag("--compare", duration_options.compare,
                     "Also run the epoch pipeline and report the two-sample KS");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    if (error.get_exit_code() == 0) {
      app.exit(error);  // --help and friends
      return kExitOk;
    }
    app.exit(error);
    return kExitConfigError;
  }

  try {
    if (simulate->parsed()) {
      return cmd_simulate(simulate_options);
    }
    if (verify->parsed()) {
      return cmd_verify(verify_options);
    }
    if (bench->parsed()) {
      return cmd_bench(bench_options);
    }
    if (duration->parsed()) {
      return cmd_duration(duration_options);
    }
  } catch (const hawkes::ConfigError& error) {
    std::cerr << "config error: " << error.what() << '\n';
    return kExitConfigError;
  } catch (const std::domain_error& error) {
    std::cerr << "config error: " << error.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return kExitVerificationFailure;
  }
  return kExitConfigError;
}
