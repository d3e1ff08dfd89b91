//
// Command-line front end.
//
//   fsrainbow run --scenario PATH [--seed N] [--bound N] [--out PATH]
//                 [--format json|csv]
//   fsrainbow verify SUITE [--seed N]
//
// run executes one scenario document and writes its report to stdout or to
// --out.  Exit 0 when the task's check holds (coverage is informational and
// always 0), 2 when a check fails, 1 on any input problem; schema errors
// name the offending field by JSON pointer.  verify runs one invariant
// suite and prints a line per check; exit 0 on a clean pass, 2 on a failed
// check or a blown budget, 1 for an unknown suite.  All configuration
// arrives through flags; the environment is never consulted.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "fsr/json_io.hpp"
#include "fsr/verify.hpp"

namespace {

constexpr std::uint64_t kDefaultSuiteSeed = 20260819;

int run_command(const std::string& scenario_path,
                const fsr::ScenarioOverrides& overrides,
                const std::string& out_path) {
  std::ifstream in(scenario_path);
  if (!in) {
    std::cerr << "fsrainbow: cannot read " << scenario_path << "\n";
    return 1;
  }
  std::ostringstream text;
  text << in.rdbuf();

  fsr::ScenarioOutcome outcome;
  try {
    outcome = fsr::run_scenario_text(text.str(), overrides);
  } catch (const fsr::scenario_error& e) {
    std::cerr << "fsrainbow: scenario error at " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "fsrainbow: " << e.what() << "\n";
    return 1;
  }

  if (out_path.empty()) {
    std::cout << outcome.report;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "fsrainbow: cannot write " << out_path << "\n";
      return 1;
    }
    out << outcome.report;
  }
  return outcome.exit_code;
}

int verify_command(const std::string& suite, std::uint64_t seed) {
  fsr::SuiteReport report;
  try {
    report = fsr::run_suite(suite, seed);
  } catch (const std::domain_error& e) {
    std::cerr << "fsrainbow: " << e.what() << "\n";
    return 1;
  }
  std::printf("suite %s (seed %llu)\n", report.suite.c_str(),
              static_cast<unsigned long long>(seed));
  for (const auto& check : report.checks)
    std::printf("  %s %s: %s\n", check.passed ? "ok  " : "FAIL",
                check.name.c_str(), check.detail.c_str());
  if (report.budget_seconds == 0.0)
    std::printf("  %zu checks in %.2fs (untimed)\n", report.checks.size(),
                report.seconds);
  else
    std::printf("  %zu checks in %.2fs (budget %.0fs)\n", report.checks.size(),
                report.seconds, report.budget_seconds);
  std::printf("%s\n", report.passed() ? "PASS" : "FAIL");
  return report.passed() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for ordinal-indexed sums: scenarios and suites"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  std::string format;
  std::uint64_t seed = 0;
  std::uint64_t bound = 0;

  CLI::App* run = app.add_subcommand("run", "Execute a scenario document");
  run->add_option("--scenario", scenario_path, "Scenario JSON path")
      ->required();
  CLI::Option* seed_opt =
      run->add_option("--seed", seed, "Override the scenario seed");
  CLI::Option* bound_opt = run->add_option(
      "--bound", bound, "Override the task's principal bound");
  run->add_option("--out", out_path, "Write the report to this path");
  run->add_option("--format", format, "Report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  std::string suite;
  std::uint64_t suite_seed = kDefaultSuiteSeed;
  CLI::App* verify = app.add_subcommand("verify", "Run an invariant suite");
  verify
      ->add_option("suite", suite,
                   "One of: supports, condensation, witness-f, multicube, "
                   "axioms, fssets, embedding")
      ->required();
  verify->add_option("--seed", suite_seed, "Suite seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (run->parsed()) {
    fsr::ScenarioOverrides overrides;
    if (seed_opt->count() > 0) overrides.seed = seed;
    if (bound_opt->count() > 0) overrides.bound = bound;
    if (!format.empty()) overrides.format = format;
    return run_command(scenario_path, overrides, out_path);
  }
  return verify_command(suite, suite_seed);
}
