#pragma once
//
// Finite sets of ordinals, kept strictly increasing, plus the order
// bookkeeping used everywhere else: otp_below counts elements below a
// threshold, sigma enumerates a set in increasing order, sigma_inverse
// recovers positions.  is_head_tail_tail checks the strong form of a
// Delta-system in which every member's root sits below its tail and the
// tails are pairwise order-separated.

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "fsr/ordinal.hpp"

namespace fsr {

class FiniteOrdinalSet {
 public:
  FiniteOrdinalSet() = default;
  // Sorts and deduplicates.
  explicit FiniteOrdinalSet(std::vector<Ordinal> elements);
  FiniteOrdinalSet(std::initializer_list<Ordinal> elements);

  static FiniteOrdinalSet naturals(std::initializer_list<std::uint64_t> ns);

  const std::vector<Ordinal>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  bool contains(const Ordinal& a) const;

  const Ordinal& min() const;  // domain_error on empty
  const Ordinal& max() const;  // domain_error on empty

  std::string to_string() const;  // "{a,b,c}"

 private:
  std::vector<Ordinal> elems_;
};

bool operator==(const FiniteOrdinalSet& a, const FiniteOrdinalSet& b);
inline bool operator!=(const FiniteOrdinalSet& a, const FiniteOrdinalSet& b) {
  return !(a == b);
}
// Lexicographic on the increasing element sequences; a deterministic total
// order used for canonical tie-breaking, not a mathematical one.
int cmp(const FiniteOrdinalSet& a, const FiniteOrdinalSet& b);

FiniteOrdinalSet set_union(const FiniteOrdinalSet& a, const FiniteOrdinalSet& b);
FiniteOrdinalSet set_intersection(const FiniteOrdinalSet& a,
                                  const FiniteOrdinalSet& b);
FiniteOrdinalSet set_difference(const FiniteOrdinalSet& a,
                                const FiniteOrdinalSet& b);
FiniteOrdinalSet set_symmetric_difference(const FiniteOrdinalSet& a,
                                          const FiniteOrdinalSet& b);
bool is_subset(const FiniteOrdinalSet& a, const FiniteOrdinalSet& b);

// Number of elements of z strictly below threshold.
std::size_t otp_below(const FiniteOrdinalSet& z, const Ordinal& threshold);

// i-th element of z in increasing order; domain_error when i >= |z|.
const Ordinal& sigma(const FiniteOrdinalSet& z, std::size_t i);

// Position of a in z; domain_error when a is not an element.
std::size_t sigma_inverse(const FiniteOrdinalSet& z, const Ordinal& a);

// True iff family is a Delta-system with the given root (pairwise
// intersections all equal root, root contained in every member), the root
// lies entirely below every tail, and the tails are pairwise
// order-separated: for distinct members x, y either max(x) < min(y \ root)
// or max(y) < min(x \ root).  Vacuous parts of the definition (empty root,
// empty tails, fewer than two members) hold.
bool is_head_tail_tail(const std::vector<FiniteOrdinalSet>& family,
                       const FiniteOrdinalSet& root);

}  // namespace fsr
