// Acceptance gate: runs the eight invariant workloads and prints one
// pass/fail line per criterion, with the per-check details indented below.
// Seeds and budgets are pinned here so runs are comparable.
//
//   acceptance                 run everything
//   acceptance --criterion 4   run one criterion
//   acceptance --criterion 1-7 run a range
//
// Exit status is the number of failed criteria.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>
#include <utility>
#include <vector>

#include "fsr/verify.hpp"

namespace {

constexpr std::uint64_t kSeed = 20260819;

struct Criterion {
  int number;
  const char* name;
  fsr::SuiteReport (*run)();
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "support-algebra", [] { return fsr::run_supports_suite(kSeed); }},
      {2, "condensation", [] { return fsr::run_condensation_suite(kSeed); }},
      {3, "witness-function", [] { return fsr::run_witness_suite(); }},
      {4, "multicube-replay", [] { return fsr::run_multicube_suite(); }},
      {5, "sandwich-checks", [] { return fsr::run_axioms_suite(kSeed); }},
      {6, "embedding", [] { return fsr::run_embedding_suite(kSeed); }},
      {7, "witness-transfers", [] { return fsr::run_fssets_suite(kSeed); }},
      {8, "partition-search", [] { return fsr::run_partition_suite(); }},
  };
  return all;
}

std::string budget_text(const fsr::SuiteReport& rep) {
  if (rep.budget_seconds == 0.0) return "untimed";
  return "budget " + std::to_string(static_cast<int>(rep.budget_seconds)) +
         "s";
}

bool run_criterion(const Criterion& c) {
  fsr::SuiteReport rep;
  try {
    rep = c.run();
  } catch (const std::exception& e) {
    std::printf("[FAIL] %d %s: uncaught %s\n", c.number, c.name, e.what());
    return false;
  }
  bool ok = rep.passed();
  std::printf("[%s] %d %s (%.2fs, %s)\n", ok ? "PASS" : "FAIL", c.number,
              c.name, rep.seconds, budget_text(rep).c_str());
  for (const fsr::SuiteCheck& chk : rep.checks)
    std::printf("       %s %s: %s\n", chk.passed ? "ok " : "BAD",
                chk.name.c_str(), chk.detail.c_str());
  if (!rep.within_budget())
    std::printf("       BAD budget exceeded: %.2fs\n", rep.seconds);
  return ok;
}

// "N" or "N-M", 1-based inclusive.
bool parse_range(const std::string& text, int& lo, int& hi) {
  try {
    std::size_t dash = text.find('-');
    if (dash == std::string::npos) {
      lo = hi = std::stoi(text);
    } else {
      lo = std::stoi(text.substr(0, dash));
      hi = std::stoi(text.substr(dash + 1));
    }
  } catch (const std::exception&) {
    return false;
  }
  return lo >= 1 && hi <= 8 && lo <= hi;
}

}  // namespace

int main(int argc, char** argv) {
  int lo = 1, hi = 8;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      if (!parse_range(argv[++i], lo, hi)) {
        std::fprintf(stderr, "bad criterion range: %s\n", argv[i]);
        return 64;
      }
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N | --criterion N-M]\n",
                   argv[0]);
      return 64;
    }
  }

  int failures = 0;
  for (const Criterion& c : criteria()) {
    if (c.number < lo || c.number > hi) continue;
    if (!run_criterion(c)) ++failures;
  }
  return failures;
}
