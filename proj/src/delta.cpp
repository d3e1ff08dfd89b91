#include "fsr/delta.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace fsr {

SetFamily::SetFamily(std::vector<FiniteOrdinalSet> members) {
  for (FiniteOrdinalSet& m : members) {
    bool seen = false;
    for (const FiniteOrdinalSet& kept : members_) {
      if (kept == m) {
        seen = true;
        break;
      }
    }
    if (!seen) members_.push_back(std::move(m));
  }
}

namespace {

bool is_delta_subfamily(const std::vector<FiniteOrdinalSet>& members,
                        const std::vector<std::size_t>& idx,
                        FiniteOrdinalSet* root_out) {
  FiniteOrdinalSet root =
      set_intersection(members[idx[0]], members[idx[1]]);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      if (set_intersection(members[idx[i]], members[idx[j]]) != root) {
        return false;
      }
    }
  }
  if (root_out != nullptr) *root_out = std::move(root);
  return true;
}

struct Candidate {
  std::vector<std::size_t> selected;
  FiniteOrdinalSet root;
};

// Every subfamily of size >= 2, best (largest, then first in mask order).
std::optional<Candidate> exhaustive_best(
    const std::vector<FiniteOrdinalSet>& members) {
  const std::size_t n = members.size();
  std::optional<Candidate> best;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) idx.push_back(i);
    }
    if (idx.size() < 2) continue;
    if (best && idx.size() <= best->selected.size()) continue;
    FiniteOrdinalSet root;
    if (is_delta_subfamily(members, idx, &root)) {
      best = Candidate{std::move(idx), std::move(root)};
    }
  }
  return best;
}

// Greedy selection of members pairwise intersecting exactly in root.
Candidate greedy_for_root(const std::vector<FiniteOrdinalSet>& members,
                          const FiniteOrdinalSet& root) {
  Candidate c;
  c.root = root;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (!is_subset(root, members[i])) continue;
    bool fits = true;
    for (std::size_t j : c.selected) {
      if (set_intersection(members[i], members[j]) != root) {
        fits = false;
        break;
      }
    }
    if (fits) c.selected.push_back(i);
  }
  return c;
}

// Classical descent within one cardinality class: either a greedy
// pairwise-disjoint batch of the stripped tails, or recurse on the members
// containing the most frequent remaining element.
Candidate frequent_element_descent(const std::vector<FiniteOrdinalSet>& members,
                                   std::vector<std::size_t> idx,
                                   std::vector<FiniteOrdinalSet> stripped,
                                   std::vector<Ordinal> root_acc) {
  Candidate disjoint;
  disjoint.root = FiniteOrdinalSet(root_acc);
  std::vector<std::size_t> chosen_pos;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    bool fits = true;
    for (std::size_t pos : chosen_pos) {
      if (!set_intersection(stripped[k], stripped[pos]).empty()) {
        fits = false;
        break;
      }
    }
    if (fits) {
      chosen_pos.push_back(k);
      disjoint.selected.push_back(idx[k]);
    }
  }

  // Most frequent element across the stripped tails.
  std::map<std::string, std::pair<Ordinal, std::size_t>> freq;
  for (const FiniteOrdinalSet& s : stripped) {
    for (const Ordinal& e : s.elements()) {
      auto it = freq.try_emplace(e.to_string(), e, 0).first;
      ++it->second.second;
    }
  }
  const Ordinal* pick = nullptr;
  std::size_t pick_count = 1;  // require at least 2 occurrences to recurse
  for (const auto& [key, entry] : freq) {
    if (entry.second > pick_count) {
      pick = &entry.first;
      pick_count = entry.second;
    }
  }
  if (pick == nullptr) return disjoint;

  std::vector<std::size_t> sub_idx;
  std::vector<FiniteOrdinalSet> sub_stripped;
  FiniteOrdinalSet picked({*pick});
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (stripped[k].contains(*pick)) {
      sub_idx.push_back(idx[k]);
      sub_stripped.push_back(set_difference(stripped[k], picked));
    }
  }
  std::vector<Ordinal> sub_root = root_acc;
  sub_root.push_back(*pick);
  Candidate rec = frequent_element_descent(members, std::move(sub_idx),
                                           std::move(sub_stripped),
                                           std::move(sub_root));
  return rec.selected.size() > disjoint.selected.size() ? rec : disjoint;
}

}  // namespace

DeltaResult delta_refine(const SetFamily& family, std::size_t target) {
  if (target < 2) {
    throw std::invalid_argument("delta_refine target must be at least 2");
  }
  const std::vector<FiniteOrdinalSet>& members = family.members();
  DeltaResult out;

  std::optional<Candidate> best;
  bool exhaustive = members.size() <= kDeltaExhaustiveLimit;
  if (exhaustive) {
    best = exhaustive_best(members);
  } else {
    // Candidate roots ranked by pairwise-intersection frequency, ties by
    // canonical serialization.
    std::map<std::string, std::pair<FiniteOrdinalSet, std::size_t>> roots;
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        FiniteOrdinalSet r = set_intersection(members[i], members[j]);
        std::string key = r.to_string();
        auto it = roots.try_emplace(std::move(key), std::move(r), 0).first;
        ++it->second.second;
      }
    }
    std::vector<const std::pair<FiniteOrdinalSet, std::size_t>*> ranked;
    ranked.reserve(roots.size());
    for (const auto& [key, entry] : roots) ranked.push_back(&entry);
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto* a, const auto* b) {
                       return a->second > b->second;
                     });
    if (ranked.size() > 128) ranked.resize(128);
    for (const auto* entry : ranked) {
      Candidate c = greedy_for_root(members, entry->first);
      if (!best || c.selected.size() > best->selected.size()) {
        best = std::move(c);
      }
    }
    // Classical per-cardinality descent as a second opinion.
    std::map<std::size_t, std::vector<std::size_t>> by_card;
    for (std::size_t i = 0; i < members.size(); ++i) {
      by_card[members[i].size()].push_back(i);
    }
    for (const auto& [card, idx] : by_card) {
      std::vector<FiniteOrdinalSet> stripped;
      stripped.reserve(idx.size());
      for (std::size_t i : idx) stripped.push_back(members[i]);
      Candidate c = frequent_element_descent(members, idx, std::move(stripped),
                                             {});
      if (c.selected.size() >= 2 &&
          (!best || c.selected.size() > best->selected.size())) {
        best = std::move(c);
      }
    }
  }

  if (!best || best->selected.size() < target) {
    out.outcome = exhaustive ? DeltaOutcome::none_exhaustive
                             : DeltaOutcome::none_heuristic;
    return out;
  }
  out.outcome = DeltaOutcome::found;
  std::vector<FiniteOrdinalSet> chosen;
  chosen.reserve(best->selected.size());
  for (std::size_t i : best->selected) chosen.push_back(members[i]);
  out.certificate.root = best->root;
  out.certificate.selected = std::move(best->selected);
  out.certificate.head_tail_tail = is_head_tail_tail(chosen, out.certificate.root);
  out.family = SetFamily(std::move(chosen));
  return out;
}

std::optional<SetFamily> head_tail_tail_refine(const SetFamily& family,
                                               const FiniteOrdinalSet& root,
                                               std::size_t target) {
  const std::vector<FiniteOrdinalSet>& members = family.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (!is_subset(root, members[i])) {
      throw std::invalid_argument("member " + std::to_string(i) +
                                  " does not contain the root");
    }
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (set_intersection(members[i], members[j]) != root) {
        throw std::invalid_argument(
            "members " + std::to_string(i) + " and " + std::to_string(j) +
            " intersect in " +
            set_intersection(members[i], members[j]).to_string() +
            ", not the root " + root.to_string());
      }
    }
  }

  // Sweep in increasing tail-minimum order; a member equal to the root has
  // no tail and goes first.
  std::vector<std::size_t> order(members.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    FiniteOrdinalSet ta = set_difference(members[a], root);
    FiniteOrdinalSet tb = set_difference(members[b], root);
    if (ta.empty()) return !tb.empty();
    if (tb.empty()) return false;
    return ta.min() < tb.min();
  });

  std::vector<FiniteOrdinalSet> taken;
  const Ordinal* bound = nullptr;  // max element of the last taken member
  for (std::size_t i : order) {
    FiniteOrdinalSet tail = set_difference(members[i], root);
    if (tail.empty()) {
      if (taken.empty()) taken.push_back(members[i]);
      continue;
    }
    if (!root.empty() && !(root.max() < tail.min())) continue;
    if (bound != nullptr && !(*bound < tail.min())) continue;
    taken.push_back(members[i]);
    bound = &members[i].max();
  }

  if (taken.size() < target || !is_head_tail_tail(taken, root)) {
    return std::nullopt;
  }
  return SetFamily(std::move(taken));
}

}  // namespace fsr
