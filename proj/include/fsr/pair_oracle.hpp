#pragma once
//
// Pair oracles and the set colourings driven by them.
//
// A PairOracle maps ordered pairs of ordinals to naturals. Three families
// are provided: explicit tables, seeded mixing (deterministic pseudo-random
// values below a bound), and synthetic oscillation oracles built from
// blocks so that designated cross-block pairs carry prescribed values and
// everything else stays small.
//
// d_from_pr1 reads each oracle value as a code for a pair (c0, c1) under
// the rectangle pairing (see pair_encode), ranks pairs of z by c1, and
// returns the c0 of the least maximizing pair. d_osc ranks pairs of z by
// the raw oracle value, takes the 2-adic valuation of the maximum as an
// index into a dense function family, and reads the result through a
// per-index surjection table. d_entangled ranks pairs by the first
// disagreement position of attached bit strings and returns the least
// coordinate where the two attached embeddings disagree in order. All
// three return 0 on sets with fewer than two elements.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fsr/colouring.hpp"
#include "fsr/ordinal.hpp"
#include "fsr/ordinal_set.hpp"

namespace fsr {

enum class OracleKind { table, seeded_mixing, synthetic_oscillation };

struct PairOracle {
  OracleKind kind = OracleKind::table;
  std::function<std::uint64_t(const Ordinal&, const Ordinal&)> evaluator;

  std::uint64_t evaluate(const Ordinal& a, const Ordinal& b) const;
};

struct OrdinalPairLess {
  bool operator()(const std::pair<Ordinal, Ordinal>& a,
                  const std::pair<Ordinal, Ordinal>& b) const {
    int c = cmp(a.first, b.first);
    return c != 0 ? c < 0 : cmp(a.second, b.second) < 0;
  }
};

using PairTable =
    std::map<std::pair<Ordinal, Ordinal>, std::uint64_t, OrdinalPairLess>;

// Oracle backed by an explicit table; pairs outside it are a domain error.
PairOracle make_table_oracle(PairTable table);

// Oracle returning a seeded hash of the pair, reduced below bound (>= 1).
PairOracle make_seeded_oracle(std::uint64_t seed, std::uint64_t bound);

// Rectangle pairing between codes below theta*chi and cells (c0, c1) with
// c0 < theta, c1 < chi. Codes walk the anti-diagonals c0 + c1 = 0, 1, 2,
// ... in order; within one diagonal, cells are visited by ascending c0,
// skipping cells outside the rectangle. Both sides check their ranges
// (invalid_argument).
std::uint64_t pair_encode(std::uint64_t c0, std::uint64_t c1,
                          std::uint64_t theta, std::uint64_t chi);
std::pair<std::uint64_t, std::uint64_t> pair_decode(std::uint64_t code,
                                                    std::uint64_t theta,
                                                    std::uint64_t chi);

// Decodes each oracle value on pairs of z into (c0, c1), finds the maximum
// c1, and returns the c0 of the lexicographically least maximizing pair;
// 0 when z has fewer than two elements. The result is below theta.
std::uint64_t d_from_pr1(const PairOracle& c, std::uint64_t theta,
                         std::uint64_t chi, const FiniteOrdinalSet& z);

// Configuration for d_osc: a finite index universe, the value range of the
// dense function family, and one surjection table per universe member.
// The dense family enumerates all functions universe -> {0..value_range-1}
// in mixed-radix order (member i reads digit i) and repeats cyclically, so
// every natural indexes a function and every function on the universe
// appears. psi[i] has value_range entries.
struct OscConfig {
  std::vector<Ordinal> universe;
  std::uint64_t value_range = 1;
  std::vector<std::vector<std::uint64_t>> psi;
};

// Default tables: member i surjects {0..value_range-1} onto {0..i-1} by
// t -> t mod i (member 0 is constantly 0).
OscConfig make_default_osc_config(std::vector<Ordinal> universe,
                                  std::uint64_t value_range);

// Value of the dense family member with index iota at universe member a.
std::uint64_t dense_family_value(const OscConfig& config, std::uint64_t iota,
                                 const Ordinal& a);

// Oscillation colouring: maximize the oracle over pairs of z, take the
// least maximizing pair (alpha, beta), let iota be the 2-adic valuation of
// the maximum (0 for value 0), and return psi_alpha(f_iota(alpha));
// 0 when z has fewer than two elements. Members of z outside the
// configured universe are a domain error.
std::uint64_t d_osc(const PairOracle& osc, const OscConfig& config,
                    const FiniteOrdinalSet& z);

// Synthetic oscillation oracle on blocks: a strictly increasing, tails
// strictly increasing and pairwise disjoint from a and each other, every
// member of a below every member of every tail. The oracle returns
// base[i][j] + m on the pair (a[i], tails[m][j]) and a seeded value at
// most epsilon on every other pair; base values must exceed epsilon so
// the designated pairs always realize the maximum.
PairOracle make_synthetic_osc(const std::vector<Ordinal>& a,
                              const std::vector<std::vector<Ordinal>>& tails,
                              const std::vector<std::vector<std::uint64_t>>& base,
                              std::uint64_t epsilon, std::uint64_t seed);

// One member of an entangled instance: an embedding of coordinates into a
// common finite linear order (values are positions), plus a bit string.
struct EntangledMember {
  std::vector<std::uint64_t> l;  // injective, images pairwise disjoint
  std::string g;                 // '0'/'1', common length, pairwise distinct
};

struct EntangledInstance {
  std::uint64_t order_size = 0;  // positions 0..order_size-1
  std::map<Ordinal, EntangledMember, OrdinalLess> members;
};

// Validates all invariants (invalid_argument on violation).
EntangledInstance make_entangled_instance(
    std::uint64_t order_size,
    std::vector<std::pair<Ordinal, EntangledMember>> members);

// First position where the bit strings of a and b disagree.
std::size_t entangled_delta(const EntangledInstance& e, const Ordinal& a,
                            const Ordinal& b);

// Rank pairs of z by the first disagreement of their bit strings, take the
// least maximizing pair (alpha, beta), and return the least coordinate tau
// with l_alpha(tau) before l_beta(tau), or 0 when there is none; 0 when z
// has fewer than two elements. Members of z without data are a domain
// error.
std::uint64_t d_entangled(const EntangledInstance& e,
                          const FiniteOrdinalSet& z);

// Pair oracle reading a set colouring on doubletons.
PairOracle derive_pair_colouring(const SetColouring& d);

}  // namespace fsr
