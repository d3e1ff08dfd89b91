#pragma once
//
// Delta-system extraction. A family of finite ordinal sets is a
// Delta-system with root r when every pairwise intersection equals r
// exactly. delta_refine looks for a large subfamily of that shape:
// exhaustively when the family is small enough to scan every subfamily,
// otherwise by two competing heuristics (greedy selection around candidate
// roots ranked by pairwise-intersection frequency, and the classical
// most-frequent-element descent within each cardinality class).
//
// head_tail_tail_refine strengthens a Delta-system into head-tail-tail
// position: root below every tail, tails pairwise order-separated. It
// sweeps members in increasing tail-minimum order and keeps those clearing
// the running bound.

#include <cstddef>
#include <optional>
#include <vector>

#include "fsr/ordinal_set.hpp"

namespace fsr {

// A finite sequence of pairwise distinct sets; duplicates are dropped on
// construction, first occurrence kept, input order preserved.
class SetFamily {
 public:
  SetFamily() = default;
  explicit SetFamily(std::vector<FiniteOrdinalSet> members);

  const std::vector<FiniteOrdinalSet>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

 private:
  std::vector<FiniteOrdinalSet> members_;
};

struct DeltaCertificate {
  FiniteOrdinalSet root;
  std::vector<std::size_t> selected;  // indices into the input family
  bool head_tail_tail = false;        // the stronger predicate also holds
};

enum class DeltaOutcome {
  found,            // subfamily of size >= target delivered
  none_exhaustive,  // every subfamily scanned; no such subfamily exists
  none_heuristic,   // heuristics failed; existence left open
};

struct DeltaResult {
  DeltaOutcome outcome = DeltaOutcome::none_heuristic;
  SetFamily family;             // the selected members, in input order
  DeltaCertificate certificate; // meaningful when outcome == found
};

// Families of at most kDeltaExhaustiveLimit members are searched
// exhaustively, so a none_exhaustive answer is a proof of absence.
inline constexpr std::size_t kDeltaExhaustiveLimit = 12;

// Largest Delta-subfamily the search can find, provided it reaches
// target; target must be >= 2.
DeltaResult delta_refine(const SetFamily& family, std::size_t target);

// Precondition: family is a Delta-system with the given root
// (invalid_argument naming a witness pair otherwise). Returns a subfamily of
// size >= target in head-tail-tail position, or nullopt when the greedy
// sweep keeps fewer than target members.
std::optional<SetFamily> head_tail_tail_refine(const SetFamily& family,
                                               const FiniteOrdinalSet& root,
                                               std::size_t target);

}  // namespace fsr
