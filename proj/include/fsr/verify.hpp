#pragma once
//
// Invariant suites behind the `verify` subcommand and the acceptance
// harness.  Each suite runs a fixed, seeded workload with its own time
// budget and reports one line per invariant; the deterministic suites
// ignore the seed.

#include <cstdint>
#include <string>
#include <vector>

namespace fsr {

struct SuiteCheck {
  std::string name;
  bool passed = false;
  std::string detail;  // counts, bounds, or the first failure
};

struct SuiteReport {
  std::string suite;
  std::vector<SuiteCheck> checks;
  double seconds = 0.0;
  double budget_seconds = 0.0;  // 0 means untimed

  bool within_budget() const {
    return budget_seconds == 0.0 || seconds < budget_seconds;
  }
  bool passed() const;  // every check passed and the budget held
};

// 10^4 randomized Delta-system families: sum supports squeezed between the
// tail union and root + tails.  Budget 5 s.
SuiteReport run_supports_suite(std::uint64_t seed);

// 100 generated inputs of sizes 8..64: the condensation pipeline succeeds,
// certificates re-verify, and sum supports are exact unions for tuples of
// up to 4 outputs, exhaustively.  Budget 30 s.
SuiteReport run_condensation_suite(std::uint64_t seed);

// Scheduler containment f(k) inside k for k < 10^5 and threefold fulfilment
// of every requirement with m <= 8, 1 <= n <= 8, targets inside {0..7},
// below a reported bound.  Budget 60 s.
SuiteReport run_witness_suite();

// Full head-tail-tail replay grid: a,b in {1,2}, a <= m <= 4, b <= n <= 3,
// windows 4..6, every target of size at most 4; the support colouring of
// each replayed sum must equal its target exactly.  Budget 60 s.
SuiteReport run_multicube_suite();

// 30 rectangle and 30 oscillation block instances, each checked on every
// sandwich set; zero mismatches allowed.  Untimed.
SuiteReport run_axioms_suite(std::uint64_t seed);

// 50 random presentations (up to 4 generators, entries in [-10,10]) against
// an independent minor-gcd oracle, plus cyclic tables of orders 1..12 with
// known structure; embeddings re-verified on words of length up to 4.
// Untimed.
SuiteReport run_embedding_suite(std::uint64_t seed);

// Transfer lemmas: 100 random rational families for the divisibility
// transfer (every exhaustively solvable colour must lift) and 100 sumset
// extension instances whose outputs re-evaluate to the requested colour.
// Untimed.
SuiteReport run_fssets_suite(std::uint64_t seed);

// The pentagon colouring realizes both colours inside every triple, and the
// exhaustive meta-search over all two-colourings of six points finds no
// colouring that does.  Budget 120 s.
SuiteReport run_partition_suite();

// name is one of: supports, condensation, witness-f, multicube, axioms,
// fssets, embedding.  domain_error otherwise.
SuiteReport run_suite(const std::string& name, std::uint64_t seed);

}  // namespace fsr
