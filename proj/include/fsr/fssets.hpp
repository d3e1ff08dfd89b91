#pragma once
//
// Finite-sum enumeration and partition checking.
//
// fs lists sums over nonempty subsets (up to a size cap), fs_n over exact
// n-subsets, sumset over tuples drawn one element per part, fu over unions
// of a block sequence. Every produced record carries provenance: which
// input indices were summed. Enumeration order is colex throughout:
// subsets compare by their largest elements first, and a set that is a
// top-aligned prefix of another precedes it; tuple enumerations step the
// first slot fastest, which is the same order on the reversed tuple. The
// first witness in this order is canonical, so concurrent searches must
// reduce to the colex-least candidate.
//
// coverage partitions a colour space into attained and missing colours
// over a record list. find_witness returns the first record of a given
// colour. extend_sumset_witness lifts a two-part solver to n+1 parts by
// collapsing the first n parts into one provenance-carrying sumset.
// divisibility_transfer turns an n-fold witness over a translated family
// into an (n+1)-fold witness over the original. brute_force_partition_check
// tests whether a colouring of mu-subsets realizes every colour inside
// every lambda-subset of {0..N-1}.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "fsr/colouring.hpp"
#include "fsr/group.hpp"
#include "fsr/ordinal_set.hpp"

namespace fsr {

inline constexpr std::uint64_t kEnumerationBudget = 1000000;

struct SumRecord {
  DirectSumElement value;
  // For fs / fs_n / divisibility_transfer: strictly increasing indices into
  // the input list. For sumset and the star modes: one index per part.
  std::vector<std::size_t> generators;
};

// Colex comparison of ascending index sets.
bool colex_less(const std::vector<std::size_t>& a,
                const std::vector<std::size_t>& b);

// Sums over every nonempty subset of at most max_terms inputs, in colex
// order. The record count is capped by the budget (resource_error).
std::vector<SumRecord> fs(const std::vector<DirectSumElement>& inputs,
                          std::uint64_t max_terms,
                          std::uint64_t budget = kEnumerationBudget);

// Sums over every exact n-subset, in colex order; n must be positive.
// n beyond the input count yields no records.
std::vector<SumRecord> fs_n(const std::vector<DirectSumElement>& inputs,
                            std::uint64_t n,
                            std::uint64_t budget = kEnumerationBudget);

// Sums of one element per part, first slot stepping fastest. generators[i]
// indexes parts[i]. The tuple count is capped by the budget.
std::vector<SumRecord> sumset(
    const std::vector<std::vector<DirectSumElement>>& parts,
    std::uint64_t budget = kEnumerationBudget);

struct FuRecord {
  FiniteOrdinalSet value;
  std::vector<std::size_t> blocks;  // strictly increasing block indices
};

// Unions over every nonempty subfamily of a block sequence (each block
// entirely below the next), in colex order. Blocks must be nonempty and
// ordered (invalid_argument names the violating pair).
std::vector<FuRecord> fu(const std::vector<FiniteOrdinalSet>& blocks,
                         std::uint64_t budget = kEnumerationBudget);

struct CoverageReport {
  struct Attained {
    std::uint64_t count = 0;
    SumRecord exemplar;  // first record of that colour
  };
  std::uint64_t colour_space = 0;
  std::map<std::uint64_t, Attained> attained;
  std::set<std::uint64_t> missing;
};

CoverageReport coverage(const ElementColouring& c,
                        const std::vector<SumRecord>& records);

// Witness search modes: subset sums up to a size cap, exact n-subset sums,
// or one element per part.
struct FsMode {
  std::uint64_t max_terms = 1;
};
struct FsnMode {
  std::uint64_t n = 1;
};
struct SusMode {
  std::vector<std::vector<DirectSumElement>> parts;
};
using WitnessMode = std::variant<FsMode, FsnMode, SusMode>;

// First record (in the mode's enumeration order) whose colour is delta;
// none after exhaustion, and always none for delta outside the colour
// space. SusMode ignores the input list and draws from its own parts.
std::optional<SumRecord> find_witness(
    const ElementColouring& c, const std::vector<DirectSumElement>& inputs,
    std::uint64_t delta, const WitnessMode& mode,
    std::uint64_t budget = kEnumerationBudget);

// Solver contract: given two value lists, return indices (i, j) such that
// first[i] + second[j] has colour delta, or none.
using PairSolver = std::function<std::optional<std::pair<std::size_t, std::size_t>>(
    const std::vector<DirectSumElement>& first,
    const std::vector<DirectSumElement>& second, std::uint64_t delta)>;

// Inductive step for tuple sums: collapse all but the last part into one
// provenance-carrying sumset, hand the pair (collapsed, last) to the
// solver, and decompose its answer into one index per original part.
// The returned record has parts.size() generators; none propagates.
std::optional<SumRecord> extend_sumset_witness(
    const PairSolver& solver,
    const std::vector<std::vector<DirectSumElement>>& parts,
    std::uint64_t delta, std::uint64_t budget = kEnumerationBudget);

// Solver contract: an n-fold witness over the given inputs with colour
// delta (generators: n strictly increasing indices), or none.
using FsnSolver = std::function<std::optional<SumRecord>(
    const std::vector<DirectSumElement>& inputs, std::uint64_t n,
    std::uint64_t delta)>;

// Turns an n-fold witness into an (n+1)-fold one: split off x = inputs[0],
// translate the rest by divide(n, x), solve over the translated family,
// and map the answer back. The n translations absorb x exactly, so the
// returned record (n+1 strictly increasing indices into inputs, with
// index 0 for x in front) keeps colour delta; this is re-verified.
std::optional<SumRecord> divisibility_transfer(
    const ElementColouring& c, const std::vector<DirectSumElement>& inputs,
    std::uint64_t n, std::uint64_t delta, const FsnSolver& solver);

// Colouring of n-element index sets: s maps to c(sum of the enumerated
// elements at the positions in s). The enumeration must be duplicate-free;
// evaluating a set that is not n naturals below the enumeration size is
// an error.
SetColouring pair_colouring_from_fsn(
    const ElementColouring& c, std::vector<DirectSumElement> enumeration,
    std::uint64_t n);

struct PartitionCheckResult {
  bool holds = true;
  // When holds is false: a lambda-subset on which the colouring misses a
  // colour (colour_missing) or leaves the declared range.
  std::vector<std::uint64_t> counterexample;
  std::uint64_t colour = 0;
  bool colour_missing = true;
};

// True iff the image of every lambda-subset's mu-subsets under d is
// exactly {0..theta-1}. The total evaluation count is capped by the
// budget (resource_error).
PartitionCheckResult brute_force_partition_check(
    std::uint64_t n, std::uint64_t lambda, std::uint64_t mu,
    std::uint64_t theta, const SetColouring& d,
    std::uint64_t budget = kEnumerationBudget);

}  // namespace fsr
