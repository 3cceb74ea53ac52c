#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hawkes {

// Outcome of one Monte Carlo verification check.
struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  bool skipped = false;   // insufficient power at the requested budget
  double statistic = 0.0;
  double threshold = 0.0;
  std::string detail;
};

const std::vector<std::string>& verify_suite_names();  // polytope, combinat, ...

// Runs the named suite ("all" for every suite). budget scales the nominal
// replication counts; checks that would be underpowered at the resulting
// sample size are reported as skipped rather than run.
std::vector<CheckResult> run_verify_suite(const std::string& suite, std::uint64_t seed,
                                          double budget);

}  // namespace hawkes
