#pragma once
//
// Deterministic randomness and string mixing.  mt19937_64 is fully pinned by
// the standard; the reductions and hashes here avoid std::uniform_*
// distributions and std::hash, both of which vary across standard libraries,
// so seeded runs produce identical bytes everywhere.

#include <cstdint>
#include <random>
#include <string_view>

namespace fsr {

using Rng = std::mt19937_64;

// Uniform-ish value in [0, n); modulo bias is irrelevant at desk scale.
inline std::uint64_t rand_below(Rng& rng, std::uint64_t n) {
  return n == 0 ? 0 : rng() % n;
}

// Value in [lo, hi] inclusive.
inline std::int64_t rand_range(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(
                  rand_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Deterministic 64-bit digest of (seed, text).
inline std::uint64_t mix_string(std::uint64_t seed, std::string_view s) {
  return splitmix64(seed ^ fnv1a(s));
}

}  // namespace fsr
