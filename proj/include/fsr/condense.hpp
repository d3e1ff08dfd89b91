#pragma once
//
// Condensation of a finite list of direct-sum elements: thin the list until
// the supports form a Delta-system whose root coordinates all carry one
// shared value, split the root into its infinite-order part r_inf and the
// finite-order rest, then sum blocks of m elements where m is the least
// common multiple of the finite orders. Block sums then satisfy, provably:
//
//   * their supports form a Delta-system with root r_inf,
//   * every output has an infinite-order value on each root coordinate,
//   * the support of any sum of outputs is the union of their supports.
//
// condense performs the pipeline and re-checks all three properties before
// returning; verify_condensation re-checks a stored certificate against the
// original input, and verify_sum_support checks the third property alone on
// arbitrary lists.

#include <cstdint>
#include <gmpxx.h>
#include <string>
#include <vector>

#include "fsr/group.hpp"
#include "fsr/ordinal_set.hpp"

namespace fsr {

struct CondensationCertificate {
  // Pairwise disjoint index blocks into the original input; output k is the
  // sum of the elements in blocks[k].
  std::vector<std::vector<std::size_t>> blocks;
  FiniteOrdinalSet root_infinite;
  mpz_class multiplier = 1;  // the block size m
};

struct CondensationResult {
  bool ok = false;
  std::vector<DirectSumElement> outputs;  // partial when !ok
  CondensationCertificate certificate;
  // Shortfall report, only meaningful when !ok:
  std::size_t achieved = 0;
  std::size_t requested = 0;
  std::string shortfall;  // which pipeline stage ran out, and why
};

// Thins x (one element kept per distinct support), extracts a Delta-system
// of supports, pigeonholes every root coordinate to a single shared value,
// then shuffles the survivors with the seed and emits `target` block sums.
// target >= 1; all elements must share x[0]'s signature.
CondensationResult condense(const std::vector<DirectSumElement>& x,
                            std::size_t target, std::uint64_t seed);

struct SumSupportReport {
  std::uint64_t checked = 0;
  bool exhaustive = true;  // false when sampling replaced full enumeration
  std::uint64_t violation_count = 0;
  // At most kSumSupportKeptViolations witness tuples, each a set of indices
  // whose sum's support differs from the union of supports.
  std::vector<std::vector<std::size_t>> violations;
};

inline constexpr std::uint64_t kSumSupportBudget = 100000;
inline constexpr std::size_t kSumSupportKeptViolations = 16;

// Checks supp(sum of tuple) == union of supports over n-subsets of y:
// exhaustively when C(|y|, n) <= budget, otherwise on `budget` seeded
// random n-subsets.
SumSupportReport verify_sum_support(const std::vector<DirectSumElement>& y,
                                    std::size_t n,
                                    std::uint64_t sample_seed = 0,
                                    std::uint64_t budget = kSumSupportBudget);

struct CondensationCheck {
  bool ok = true;
  std::string failure;  // empty when ok
};

// Re-derives the outputs from the certificate blocks and checks all three
// condensation properties, the third exhaustively for tuples of up to
// tuple_bound outputs.
CondensationCheck verify_condensation(const std::vector<DirectSumElement>& x,
                                      const std::vector<DirectSumElement>& y,
                                      const CondensationCertificate& cert,
                                      std::size_t tuple_bound = 4);

}  // namespace fsr
