// End-to-end checks of the command-line tool: determinism of record output,
// thread invariance, conditioning, config errors, and exit codes. Takes the
// CLI path as argv[1].

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int checks_failed = 0;
std::string cli;

void expect(bool ok, const std::string& label) {
  if (!ok) {
    ++checks_failed;
  }
  std::printf("%s: %s\n", ok ? "ok" : "FAILED", label.c_str());
}

int run(const std::string& args) {
  const std::string command = cli + " " + args;
  const int status = std::system(command.c_str());
  if (status < 0) {
    return -1;
  }
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::size_t count_lines(const std::string& text) {
  std::size_t lines = 0;
  for (const char c : text) {
    if (c == '\n') ++lines;
  }
  return lines;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <path-to-cli>\n", argv[0]);
    return 2;
  }
  cli = argv[1];

  // Identical (config, seed) -> byte-identical records.
  {
    const std::string base =
        "simulate --kernel exponential --alpha 3 --beta 4 --method parking --reps 1000 "
        "--seed 1 --format csv";
    expect(run(base + " --out cli_a.csv 2>/dev/null") == 0, "simulate exits 0");
    expect(run(base + " --out cli_b.csv 2>/dev/null") == 0, "simulate re-run exits 0");
    const std::string a = slurp("cli_a.csv");
    expect(!a.empty() && a == slurp("cli_b.csv"), "re-run is byte-identical");
    expect(count_lines(a) == 1001, "header plus one row per replication");

    expect(run(base + " --threads 4 --out cli_c.csv 2>/dev/null") == 0,
           "threaded simulate exits 0");
    expect(a == slurp("cli_c.csv"), "thread count does not change the records");

    const std::string reseeded =
        "simulate --kernel exponential --alpha 3 --beta 4 --method parking --reps 1000 "
        "--seed 2 --format csv";
    expect(run(reseeded + " --out cli_d.csv 2>/dev/null") == 0, "reseeded simulate exits 0");
    expect(a != slurp("cli_d.csv"), "different seed changes the records");
  }

  // Conditioned simulation pins every record to the requested size.
  {
    const int code = run(
        "simulate --kernel exponential --alpha 2.7 --beta 3 --method parking --reps 40 "
        "--cond-size 100 --seed 5 --format jsonl --out cli_cond.jsonl 2>/dev/null");
    expect(code == 0, "conditioned simulate exits 0");
    std::ifstream in("cli_cond.jsonl");
    std::string line;
    std::size_t rows = 0;
    bool all_conditioned = true;
    while (std::getline(in, line)) {
      ++rows;
      all_conditioned = all_conditioned && line.find("\"N\":100,") != std::string::npos;
    }
    expect(rows == 40, "one JSON line per replication");
    expect(all_conditioned, "every record has the conditioned size");
  }

  // Incompatible method/kernel combinations are config errors (exit 2).
  expect(run("simulate --kernel powerlaw --c 1 --d 2 --method dassios-zhao --reps 10 "
             "2>/dev/null") == 2,
         "dassios-zhao with a power-law kernel is a config error");
  expect(run("simulate --kernel exponential --alpha 5 --beta 4 --method parking --reps 10 "
             "2>/dev/null") == 2,
         "unstable kernel parameters are a config error");
  expect(run("simulate --kernel exponential --alpha 3 --beta 4 --method branching "
             "--cond-size 5 --reps 10 2>/dev/null") == 2,
         "conditioning an unconditionable method is a config error");
  expect(run("bogus-subcommand 2>/dev/null") == 2, "unknown subcommand is a usage error");
  expect(run("verify --suite nonsense 2>/dev/null") == 2, "unknown suite is a usage error");

  // A JSON config file drives the same pipeline.
  {
    std::ofstream config("cli_config.json");
    config << R"({"kernel":{"family":"exponential","alpha":3,"beta":4},)"
           << R"("method":"parking","replications":1000,"seed":1,"format":"csv"})";
    config.close();
    expect(run("simulate --config cli_config.json --out cli_e.csv 2>/dev/null") == 0,
           "config-file simulate exits 0");
    expect(slurp("cli_e.csv") == slurp("cli_a.csv"), "config file reproduces the flag run");
  }

  // Tiny-budget verification completes, flagging underpowered checks.
  {
    expect(run("verify --suite all --budget 0.0005 --json-out cli_verify.json "
               "> cli_verify.txt 2>/dev/null") == 0,
           "tiny-budget verify exits 0");
    const std::string text = slurp("cli_verify.txt");
    expect(text.find("[SKIP]") != std::string::npos, "underpowered checks are flagged");
    expect(text.find("[PASS]") != std::string::npos, "exact checks still run");
    expect(text.find("[FAIL]") == std::string::npos, "nothing fails at a tiny budget");
    const std::string report = slurp("cli_verify.json");
    expect(report.rfind("[", 0) == 0 && report.find("\"status\"") != std::string::npos,
           "verify emits a JSON report");
  }

  // Zero-replication bench emits just the header and exits 0.
  {
    expect(run("bench --reps 0 --out cli_bench.csv 2>/dev/null") == 0, "empty bench exits 0");
    const std::string table = slurp("cli_bench.csv");
    expect(count_lines(table) == 1 && table.rfind("method,", 0) == 0,
           "empty bench table is header-only");
  }

  // Duration study emits a JSON report with the comparison statistic.
  {
    expect(run("duration --alpha 3 --beta 4 --reps 3000 --seed 9 --compare "
               "> cli_duration.json 2>/dev/null") == 0,
           "duration study exits 0");
    const std::string text = slurp("cli_duration.json");
    expect(text.find("\"compare_ks\"") != std::string::npos, "comparison KS is reported");
  }

  std::printf("%s\n", checks_failed == 0 ? "all cli checks passed" : "cli checks FAILED");
  return checks_failed == 0 ? 0 : 1;
}
