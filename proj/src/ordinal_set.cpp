#include "fsr/ordinal_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace fsr {

FiniteOrdinalSet::FiniteOrdinalSet(std::vector<Ordinal> elements)
    : elems_(std::move(elements)) {
  std::sort(elems_.begin(), elems_.end(), OrdinalLess{});
  elems_.erase(std::unique(elems_.begin(), elems_.end(),
                           [](const Ordinal& a, const Ordinal& b) {
                             return cmp(a, b) == 0;
                           }),
               elems_.end());
}

FiniteOrdinalSet::FiniteOrdinalSet(std::initializer_list<Ordinal> elements)
    : FiniteOrdinalSet(std::vector<Ordinal>(elements)) {}

FiniteOrdinalSet FiniteOrdinalSet::naturals(
    std::initializer_list<std::uint64_t> ns) {
  std::vector<Ordinal> v;
  v.reserve(ns.size());
  for (std::uint64_t n : ns) v.push_back(Ordinal::natural(n));
  return FiniteOrdinalSet(std::move(v));
}

bool FiniteOrdinalSet::contains(const Ordinal& a) const {
  return std::binary_search(elems_.begin(), elems_.end(), a, OrdinalLess{});
}

const Ordinal& FiniteOrdinalSet::min() const {
  if (elems_.empty()) throw std::domain_error("min of an empty set");
  return elems_.front();
}

const Ordinal& FiniteOrdinalSet::max() const {
  if (elems_.empty()) throw std::domain_error("max of an empty set");
  return elems_.back();
}

std::string FiniteOrdinalSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (i > 0) out += ',';
    out += elems_[i].to_string();
  }
  out += '}';
  return out;
}

bool operator==(const FiniteOrdinalSet& a, const FiniteOrdinalSet& b) {
  return cmp(a, b) == 0;
}

int cmp(const FiniteOrdinalSet& a, const FiniteOrdinalSet& b) {
  const auto& ea = a.elements();
  const auto& eb = b.elements();
  const std::size_t n = std::min(ea.size(), eb.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cmp(ea[i], eb[i]);
    if (c != 0) return c;
  }
  if (ea.size() != eb.size()) return ea.size() < eb.size() ? -1 : 1;
  return 0;
}

FiniteOrdinalSet set_union(const FiniteOrdinalSet& a, const FiniteOrdinalSet& b) {
  std::vector<Ordinal> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.elements().begin(), a.elements().end(), b.elements().begin(),
                 b.elements().end(), std::back_inserter(out), OrdinalLess{});
  return FiniteOrdinalSet(std::move(out));
}

FiniteOrdinalSet set_intersection(const FiniteOrdinalSet& a,
                                  const FiniteOrdinalSet& b) {
  std::vector<Ordinal> out;
  std::set_intersection(a.elements().begin(), a.elements().end(),
                        b.elements().begin(), b.elements().end(),
                        std::back_inserter(out), OrdinalLess{});
  return FiniteOrdinalSet(std::move(out));
}

FiniteOrdinalSet set_difference(const FiniteOrdinalSet& a,
                                const FiniteOrdinalSet& b) {
  std::vector<Ordinal> out;
  std::set_difference(a.elements().begin(), a.elements().end(),
                      b.elements().begin(), b.elements().end(),
                      std::back_inserter(out), OrdinalLess{});
  return FiniteOrdinalSet(std::move(out));
}

FiniteOrdinalSet set_symmetric_difference(const FiniteOrdinalSet& a,
                                          const FiniteOrdinalSet& b) {
  std::vector<Ordinal> out;
  std::set_symmetric_difference(a.elements().begin(), a.elements().end(),
                                b.elements().begin(), b.elements().end(),
                                std::back_inserter(out), OrdinalLess{});
  return FiniteOrdinalSet(std::move(out));
}

bool is_subset(const FiniteOrdinalSet& a, const FiniteOrdinalSet& b) {
  return std::includes(b.elements().begin(), b.elements().end(),
                       a.elements().begin(), a.elements().end(), OrdinalLess{});
}

std::size_t otp_below(const FiniteOrdinalSet& z, const Ordinal& threshold) {
  return static_cast<std::size_t>(
      std::lower_bound(z.elements().begin(), z.elements().end(), threshold,
                       OrdinalLess{}) -
      z.elements().begin());
}

const Ordinal& sigma(const FiniteOrdinalSet& z, std::size_t i) {
  if (i >= z.size()) {
    throw std::domain_error("sigma: index " + std::to_string(i) +
                            " out of range for a set of size " +
                            std::to_string(z.size()));
  }
  return z.elements()[i];
}

std::size_t sigma_inverse(const FiniteOrdinalSet& z, const Ordinal& a) {
  auto it = std::lower_bound(z.elements().begin(), z.elements().end(), a,
                             OrdinalLess{});
  if (it == z.elements().end() || cmp(*it, a) != 0) {
    throw std::domain_error("sigma_inverse: " + a.to_string() +
                            " is not an element of " + z.to_string());
  }
  return static_cast<std::size_t>(it - z.elements().begin());
}

namespace {

// max(x) < min(y \ root), with an empty difference passing vacuously.
bool separated(const FiniteOrdinalSet& x, const FiniteOrdinalSet& y,
               const FiniteOrdinalSet& root) {
  FiniteOrdinalSet tail = set_difference(y, root);
  if (tail.empty() || x.empty()) return true;
  return x.max() < tail.min();
}

}  // namespace

bool is_head_tail_tail(const std::vector<FiniteOrdinalSet>& family,
                       const FiniteOrdinalSet& root) {
  for (const FiniteOrdinalSet& x : family) {
    if (!is_subset(root, x)) return false;
    FiniteOrdinalSet tail = set_difference(x, root);
    if (!root.empty() && !tail.empty() && !(root.max() < tail.min())) {
      return false;
    }
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      if (cmp(family[i], family[j]) == 0) continue;
      if (set_intersection(family[i], family[j]) != root) return false;
      if (!separated(family[i], family[j], root) &&
          !separated(family[j], family[i], root)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace fsr
