#pragma once
//
// Colourings over finite ordinal sets and over direct-sum elements.
//
// A SetColouring assigns a colour below a declared colour space to every
// finite ordinal set; an ElementColouring does the same for direct-sum
// elements. d_support pulls a colouring of positions back along the
// increasing enumeration of a set's elements, using the witness function
// to pick which positions matter. sandwich_values collects the colours of
// every set squeezed between a symmetric difference and a union, and the
// two axiom checkers ask whether such a sandwich is monochromatic: for a
// single pair, or for a tuple drawn from given families whose maxima
// strictly increase (one set per family, all sets between the union of
// the private parts and the full union sharing one colour).

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "fsr/delta.hpp"
#include "fsr/group.hpp"
#include "fsr/ordinal_set.hpp"
#include "fsr/witness.hpp"

namespace fsr {

struct SetColouring {
  std::uint64_t colour_space = 1;
  std::function<std::uint64_t(const FiniteOrdinalSet&)> evaluator;

  // Runs the evaluator and enforces the declared range.
  std::uint64_t evaluate(const FiniteOrdinalSet& s) const;
};

struct ElementColouring {
  std::uint64_t colour_space = 1;
  std::function<std::uint64_t(const DirectSumElement&)> evaluator;

  std::uint64_t evaluate(const DirectSumElement& x) const;
};

// Image of the mask under the increasing enumeration of s: bit b set means
// the b-th smallest element of s is kept. Bits at or above |s| are out of
// range (invalid_argument).
FiniteOrdinalSet enumeration_image(std::uint64_t mask,
                                   const FiniteOrdinalSet& s);

// The support colouring: s maps to the image of f(|s|) under the increasing
// enumeration of s. The scheduler guarantees f(|s|) lies below |s|, so the
// image is always defined.
FiniteOrdinalSet d_support(WitnessF& f, const FiniteOrdinalSet& s);

// Same with an injected evaluator k -> mask. Masks with bits at or above k
// are rejected (invalid_argument).
FiniteOrdinalSet d_support(
    const std::function<std::uint64_t(std::uint64_t)>& f_mask,
    const FiniteOrdinalSet& s);

// Colour class of floor(log2 |s|) modulo m; the empty set gets colour 0.
// m must be positive.
std::uint64_t log_parity(const FiniteOrdinalSet& s, std::uint64_t m);

SetColouring make_log_parity_colouring(std::uint64_t m);

// Element colouring x -> c(d_support(f, support(x))). The witness function
// is shared and grows on demand.
ElementColouring compose(const SetColouring& c,
                         std::shared_ptr<WitnessF> f);

// Colours of every z with (x symmetric-difference y) within z within
// (x union y). Enumerates one set per subset of the intersection, so the
// intersection is capped (resource_error beyond kSandwichIntersectionLimit).
inline constexpr std::size_t kSandwichIntersectionLimit = 20;
std::set<std::uint64_t> sandwich_values(const SetColouring& d,
                                        const FiniteOrdinalSet& x,
                                        const FiniteOrdinalSet& y);

// True when every sandwich set between x and y gets exactly colour delta.
// x and y must be distinct (invalid_argument).
bool check_axiom_pair(const SetColouring& d, const FiniteOrdinalSet& x,
                      const FiniteOrdinalSet& y, std::uint64_t delta);

struct StarWitness {
  std::vector<std::size_t> indices;      // position picked in each family
  std::vector<FiniteOrdinalSet> tuple;   // the picked sets
};

// Exhaustive search over tuples (one member per family, indices in
// lexicographic order) whose maxima strictly increase, for a tuple where
// every z between the union of private parts (x_i minus the other picks)
// and the full union has colour delta. Returns the first witness, or
// nothing; delta outside the colour space never has a witness. Needs at
// least two nonempty families (invalid_argument).
std::optional<StarWitness> check_axiom_star_instance(
    const SetColouring& d, const std::vector<SetFamily>& families,
    std::uint64_t delta);

}  // namespace fsr
