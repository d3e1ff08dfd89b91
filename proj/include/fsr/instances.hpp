#pragma once
//
// Seeded instance builders shared by the verification suites and the batch
// front end.  Every builder returns data whose expected behaviour is known
// by construction, so a suite can generate thousands of cases and check the
// library against predictions that do not come from the library itself:
// Delta-system families with predictable sum supports, condensation inputs
// guaranteed to survive the pipeline, head-tail-tail member pools driven by
// the fair scheduler, and block-structured pair tables whose sandwich
// colour is fixed in advance.

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "fsr/group.hpp"
#include "fsr/ordinal_set.hpp"
#include "fsr/pair_oracle.hpp"
#include "fsr/rng.hpp"
#include "fsr/witness.hpp"

namespace fsr {

// Up to six elements over a mixed rational/Prufer signature whose supports
// form a Delta-system with the reported root and pairwise disjoint tails.
// Root coordinates carry varying values (the sum may cancel there); every
// tail coordinate has exactly one nonzero contributor.
struct SupportChainInstance {
  std::vector<DirectSumElement> elements;
  FiniteOrdinalSet root;
};

SupportChainInstance make_support_chain_instance(Rng& rng);

struct SupportChainCheck {
  bool hypothesis_ok = false;  // supports = root + disjoint tails, exactly
  bool chain_ok = false;       // tail union <= supp(sum) <= root + tails
};

// Re-derives the tails from the instance and tests both halves of the
// squeeze on the full sum.
SupportChainCheck check_support_chain(const SupportChainInstance& inst);

// Condensation input: `size` elements (at least 2) sharing a fixed root of
// one rational and, for odd seeds of the generator's coin, one 2-power
// torsion coordinate; every element adds one private tail coordinate.  Root
// values are identical across the family, so the pipeline's pigeonhole
// keeps every survivor and a requested target of at most
// suggested_condensation_target(size) block sums is always reachable.
std::vector<DirectSumElement> make_condensation_input(Rng& rng,
                                                      std::size_t size);

// Largest safe target for inputs from make_condensation_input: block sizes
// never exceed 4, so size / 4 outputs (at least one) always exist.
std::size_t suggested_condensation_target(std::size_t size);

// Head-tail-tail member pool driven by a shared fair scheduler.  Member i
// owns b consecutive coordinates below a boundary (its tail) and n-b above
// it; all members share an m-coordinate root (a below the boundary, m-a
// above); every coordinate carries the rational value 1.  The pool size is
// fixed up front by requesting one fulfilment per target size, after which
// replay() sums k designated members and compares the support-driven colour
// of the sum against the requested target.
struct MulticubeParams {
  std::uint64_t a = 1;       // root coordinates below the boundary
  std::uint64_t b = 1;       // tail width per member
  std::uint64_t m = 1;       // total root coordinates, m >= a
  std::uint64_t n = 1;       // total per-member coordinates, n >= b >= 1
  std::uint64_t window = 4;  // member minima eligible as targets
};

class MulticubeInstance {
 public:
  MulticubeInstance(MulticubeParams params, std::shared_ptr<WitnessF> f);

  const MulticubeParams& params() const { return params_; }
  // The target pool: minima of the first `window` members' tails.
  const std::vector<Ordinal>& window_minima() const { return window_; }
  std::size_t pool_size() const { return pool_; }

  struct Replay {
    FiniteOrdinalSet expected;
    FiniteOrdinalSet actual;
    DirectSumElement sum;
    std::uint64_t k = 0;
    bool match() const { return expected == actual; }
  };

  // pick holds strictly increasing indices into the window (may be empty).
  // The scheduler fixes k; the sum takes the picked members plus enough
  // immediately-following ones.  When k <= check_sum_below the assembled
  // sum is cross-checked against a term-by-term fold of the members
  // (logic_error on disagreement).
  Replay replay(const std::vector<std::size_t>& pick,
                std::uint64_t check_sum_below = 64);

 private:
  DirectSumElement member(std::size_t index) const;

  MulticubeParams params_;
  std::shared_ptr<WitnessF> f_;
  SignaturePtr sig_;
  std::vector<Ordinal> window_;
  std::size_t pool_ = 0;
  std::uint64_t boundary_ = 0;  // first coordinate above all tails
};

// Two overlapping sets x0, x1 whose cross-block pairs carry the rectangle
// code (predicted, eps+1) while every other pair inside the union keeps its
// second component at most eps, so the rectangle colouring must return
// `predicted` on every set between the symmetric difference and the union.
struct PairBlockInstance {
  FiniteOrdinalSet x0;
  FiniteOrdinalSet x1;
  std::uint64_t predicted = 0;
  std::uint64_t theta = 1;
  std::uint64_t chi = 1;
  PairOracle oracle;
};

PairBlockInstance make_pr1_instance(std::uint64_t seed);

// Oscillation analogue: a shifted block family plus psi tables arranged so
// the maximizing pair of every sandwich set lands on the designated head
// block with a maximum of known 2-adic valuation, forcing the oscillation
// colouring to `predicted`.
struct OscBlockInstance {
  FiniteOrdinalSet x0;
  FiniteOrdinalSet x1;
  std::uint64_t predicted = 0;
  PairOracle oracle;
  OscConfig config;
};

OscBlockInstance make_osc_instance(std::uint64_t seed);

// Applies colour to every z with symdiff(x0,x1) <= z <= union(x0,x1) and
// counts results different from predicted.  resource_error when the
// intersection has more than kSandwichIntersectionLimit elements.
std::uint64_t count_sandwich_mismatches(
    const FiniteOrdinalSet& x0, const FiniteOrdinalSet& x1,
    std::uint64_t predicted,
    const std::function<std::uint64_t(const FiniteOrdinalSet&)>& colour);

}  // namespace fsr
