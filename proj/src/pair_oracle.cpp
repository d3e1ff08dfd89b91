#include "fsr/pair_oracle.hpp"

#include <algorithm>
#include <bit>
#include <memory>
#include <stdexcept>

#include "fsr/errors.hpp"
#include "fsr/rng.hpp"

namespace fsr {

std::uint64_t PairOracle::evaluate(const Ordinal& a, const Ordinal& b) const {
  if (!evaluator) throw std::invalid_argument("pair oracle has no evaluator");
  return evaluator(a, b);
}

PairOracle make_table_oracle(PairTable table) {
  auto shared = std::make_shared<PairTable>(std::move(table));
  return PairOracle{
      OracleKind::table, [shared](const Ordinal& a, const Ordinal& b) {
        auto it = shared->find(std::make_pair(a, b));
        if (it == shared->end())
          throw std::domain_error("pair (" + a.to_string() + ", " +
                                  b.to_string() + ") is outside the table");
        return it->second;
      }};
}

PairOracle make_seeded_oracle(std::uint64_t seed, std::uint64_t bound) {
  if (bound == 0)
    throw std::invalid_argument("seeded oracle needs a positive bound");
  return PairOracle{OracleKind::seeded_mixing,
                    [seed, bound](const Ordinal& a, const Ordinal& b) {
                      std::uint64_t h = mix_string(seed, a.to_string());
                      h = mix_string(h, b.to_string());
                      return h % bound;
                    }};
}

std::uint64_t pair_encode(std::uint64_t c0, std::uint64_t c1,
                          std::uint64_t theta, std::uint64_t chi) {
  if (theta == 0 || chi == 0)
    throw std::invalid_argument("pairing needs a nonempty rectangle");
  if (c0 >= theta || c1 >= chi)
    throw std::invalid_argument("cell (" + std::to_string(c0) + ", " +
                                std::to_string(c1) +
                                ") is outside the rectangle " +
                                std::to_string(theta) + " x " +
                                std::to_string(chi));
  std::uint64_t code = 0;
  const std::uint64_t diag = c0 + c1;
  for (std::uint64_t d = 0; d < diag; ++d) {
    std::uint64_t lo = d >= chi ? d - (chi - 1) : 0;
    std::uint64_t hi = std::min(d, theta - 1);
    if (hi >= lo) code += hi - lo + 1;
  }
  std::uint64_t lo = diag >= chi ? diag - (chi - 1) : 0;
  return code + (c0 - lo);
}

std::pair<std::uint64_t, std::uint64_t> pair_decode(std::uint64_t code,
                                                    std::uint64_t theta,
                                                    std::uint64_t chi) {
  if (theta == 0 || chi == 0)
    throw std::invalid_argument("pairing needs a nonempty rectangle");
  if (code >= theta * chi)
    throw std::invalid_argument("code " + std::to_string(code) +
                                " is outside the rectangle " +
                                std::to_string(theta) + " x " +
                                std::to_string(chi));
  for (std::uint64_t d = 0;; ++d) {
    std::uint64_t lo = d >= chi ? d - (chi - 1) : 0;
    std::uint64_t hi = std::min(d, theta - 1);
    if (hi < lo) continue;
    std::uint64_t width = hi - lo + 1;
    if (code < width) return {lo + code, d - (lo + code)};
    code -= width;
  }
}

namespace {

// Ascending pairs of z together with a value; used by all three argmax
// colourings. Returns the lexicographically least pair realizing the
// maximum value, or nothing when z has fewer than two elements.
template <typename Value>
std::optional<std::pair<Ordinal, Ordinal>> least_argmax_pair(
    const FiniteOrdinalSet& z,
    const std::function<Value(const Ordinal&, const Ordinal&)>& value) {
  const auto& elems = z.elements();
  std::optional<std::pair<Ordinal, Ordinal>> best;
  std::optional<Value> best_value;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      Value v = value(elems[i], elems[j]);
      if (!best_value || v > *best_value) {
        best_value = v;
        best = std::make_pair(elems[i], elems[j]);
      }
    }
  return best;
}

}  // namespace

std::uint64_t d_from_pr1(const PairOracle& c, std::uint64_t theta,
                         std::uint64_t chi, const FiniteOrdinalSet& z) {
  if (theta == 0 || chi == 0)
    throw std::invalid_argument("pairing needs a nonempty rectangle");
  auto best = least_argmax_pair<std::uint64_t>(
      z, [&](const Ordinal& a, const Ordinal& b) {
        return pair_decode(c.evaluate(a, b), theta, chi).second;
      });
  if (!best) return 0;
  return pair_decode(c.evaluate(best->first, best->second), theta, chi).first;
}

OscConfig make_default_osc_config(std::vector<Ordinal> universe,
                                  std::uint64_t value_range) {
  if (value_range == 0)
    throw std::invalid_argument("value range must be positive");
  OscConfig config;
  config.value_range = value_range;
  config.psi.reserve(universe.size());
  for (std::size_t i = 0; i < universe.size(); ++i) {
    std::vector<std::uint64_t> table(value_range, 0);
    if (i > 0)
      for (std::uint64_t t = 0; t < value_range; ++t) table[t] = t % i;
    config.psi.push_back(std::move(table));
  }
  config.universe = std::move(universe);
  return config;
}

namespace {

std::size_t universe_index(const OscConfig& config, const Ordinal& a) {
  auto it = std::lower_bound(config.universe.begin(), config.universe.end(),
                             a, OrdinalLess{});
  if (it == config.universe.end() || *it != a)
    throw std::domain_error("index " + a.to_string() +
                            " is outside the configured universe");
  return static_cast<std::size_t>(it - config.universe.begin());
}

void check_osc_config(const OscConfig& config) {
  if (config.value_range == 0)
    throw std::invalid_argument("value range must be positive");
  if (!std::is_sorted(config.universe.begin(), config.universe.end(),
                      OrdinalLess{}))
    throw std::invalid_argument("universe must be strictly increasing");
  for (std::size_t i = 0; i + 1 < config.universe.size(); ++i)
    if (config.universe[i] == config.universe[i + 1])
      throw std::invalid_argument("universe must be strictly increasing");
  if (config.psi.size() != config.universe.size())
    throw std::invalid_argument("one surjection table per universe member");
  for (const auto& table : config.psi)
    if (table.size() != config.value_range)
      throw std::invalid_argument(
          "each surjection table needs one entry per value");
  // The dense family has value_range^|universe| members; keep its size
  // representable so cyclic indexing stays exact.
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < config.universe.size(); ++i) {
    if (size > (std::uint64_t{1} << 62) / config.value_range)
      throw resource_error("dense function family is too large to index");
    size *= config.value_range;
  }
}

}  // namespace

std::uint64_t dense_family_value(const OscConfig& config, std::uint64_t iota,
                                 const Ordinal& a) {
  check_osc_config(config);
  std::size_t pos = universe_index(config, a);
  std::uint64_t family_size = 1;
  for (std::size_t i = 0; i < config.universe.size(); ++i)
    family_size *= config.value_range;
  std::uint64_t code = iota % family_size;
  for (std::size_t i = 0; i < pos; ++i) code /= config.value_range;
  return code % config.value_range;
}

std::uint64_t d_osc(const PairOracle& osc, const OscConfig& config,
                    const FiniteOrdinalSet& z) {
  check_osc_config(config);
  for (const Ordinal& a : z.elements()) universe_index(config, a);
  auto best = least_argmax_pair<std::uint64_t>(
      z, [&](const Ordinal& a, const Ordinal& b) { return osc.evaluate(a, b); });
  if (!best) return 0;
  std::uint64_t value = osc.evaluate(best->first, best->second);
  std::uint64_t iota =
      value == 0 ? 0
                 : static_cast<std::uint64_t>(std::countr_zero(value));
  std::uint64_t fval = dense_family_value(config, iota, best->first);
  return config.psi[universe_index(config, best->first)][fval];
}

namespace {

struct BlockSlot {
  std::size_t block;  // 0 for the head block, 1 + m for tail m
  std::size_t index;
};

void require_increasing(const std::vector<Ordinal>& block, const char* what) {
  for (std::size_t i = 0; i + 1 < block.size(); ++i)
    if (cmp(block[i], block[i + 1]) >= 0)
      throw std::invalid_argument(std::string(what) +
                                  " must be strictly increasing");
}

}  // namespace

PairOracle make_synthetic_osc(const std::vector<Ordinal>& a,
                              const std::vector<std::vector<Ordinal>>& tails,
                              const std::vector<std::vector<std::uint64_t>>& base,
                              std::uint64_t epsilon, std::uint64_t seed) {
  if (a.empty()) throw std::invalid_argument("head block is empty");
  if (tails.empty()) throw std::invalid_argument("no tail blocks");
  require_increasing(a, "head block");
  if (base.size() != a.size())
    throw std::invalid_argument("base needs one row per head member");
  const std::size_t cols = tails.front().size();
  if (cols == 0) throw std::invalid_argument("tail blocks are empty");
  for (const auto& row : base)
    if (row.size() != cols)
      throw std::invalid_argument("base needs one column per tail member");
  for (const auto& row : base)
    for (std::uint64_t v : row)
      if (v <= epsilon)
        throw std::invalid_argument(
            "base values must exceed the off-block ceiling");

  auto slots = std::make_shared<
      std::map<Ordinal, BlockSlot, OrdinalLess>>();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!slots->emplace(a[i], BlockSlot{0, i}).second)
      throw std::invalid_argument("overlapping blocks");
  for (std::size_t m = 0; m < tails.size(); ++m) {
    if (tails[m].size() != cols)
      throw std::invalid_argument("tail blocks must share one size");
    require_increasing(tails[m], "tail block");
    for (std::size_t j = 0; j < cols; ++j) {
      if (cmp(a.back(), tails[m][j]) >= 0)
        throw std::invalid_argument(
            "every head member must precede every tail member");
      if (!slots->emplace(tails[m][j], BlockSlot{1 + m, j}).second)
        throw std::invalid_argument("overlapping blocks");
    }
  }

  auto base_copy = std::make_shared<std::vector<std::vector<std::uint64_t>>>(base);
  return PairOracle{
      OracleKind::synthetic_oscillation,
      [slots, base_copy, epsilon, seed](const Ordinal& x, const Ordinal& y) {
        auto ix = slots->find(x);
        auto iy = slots->find(y);
        if (ix != slots->end() && iy != slots->end() &&
            ix->second.block == 0 && iy->second.block >= 1)
          return (*base_copy)[ix->second.index][iy->second.index] +
                 (iy->second.block - 1);
        std::uint64_t h = mix_string(seed, x.to_string());
        h = mix_string(h, y.to_string());
        return h % (epsilon + 1);
      }};
}

EntangledInstance make_entangled_instance(
    std::uint64_t order_size,
    std::vector<std::pair<Ordinal, EntangledMember>> members) {
  EntangledInstance e;
  e.order_size = order_size;
  std::map<std::uint64_t, Ordinal> used_positions;
  std::size_t l_len = 0;
  std::size_t g_len = 0;
  bool first = true;
  for (auto& [index, member] : members) {
    if (first) {
      l_len = member.l.size();
      g_len = member.g.size();
      first = false;
    }
    if (member.l.size() != l_len)
      throw std::invalid_argument("embeddings must share one length");
    if (member.g.size() != g_len)
      throw std::invalid_argument("bit strings must share one length");
    for (char c : member.g)
      if (c != '0' && c != '1')
        throw std::invalid_argument("bit strings are over '0' and '1'");
    for (std::uint64_t p : member.l) {
      if (p >= order_size)
        throw std::invalid_argument("embedding position " + std::to_string(p) +
                                    " is outside the order");
      if (!used_positions.emplace(p, index).second)
        throw std::invalid_argument(
            "embedding images must be pairwise disjoint and injective");
    }
    if (!e.members.emplace(index, std::move(member)).second)
      throw std::invalid_argument("duplicate member index " +
                                  index.to_string());
  }
  // Pairwise distinct strings.
  for (auto i = e.members.begin(); i != e.members.end(); ++i) {
    auto j = i;
    for (++j; j != e.members.end(); ++j)
      if (i->second.g == j->second.g)
        throw std::invalid_argument("bit strings must be pairwise distinct");
  }
  return e;
}

namespace {

const EntangledMember& entangled_member(const EntangledInstance& e,
                                        const Ordinal& a) {
  auto it = e.members.find(a);
  if (it == e.members.end())
    throw std::domain_error("no data for index " + a.to_string());
  return it->second;
}

}  // namespace

std::size_t entangled_delta(const EntangledInstance& e, const Ordinal& a,
                            const Ordinal& b) {
  const EntangledMember& ma = entangled_member(e, a);
  const EntangledMember& mb = entangled_member(e, b);
  for (std::size_t t = 0; t < ma.g.size(); ++t)
    if (ma.g[t] != mb.g[t]) return t;
  throw std::invalid_argument("bit strings of " + a.to_string() + " and " +
                              b.to_string() + " coincide");
}

std::uint64_t d_entangled(const EntangledInstance& e,
                          const FiniteOrdinalSet& z) {
  for (const Ordinal& a : z.elements()) entangled_member(e, a);
  auto best = least_argmax_pair<std::size_t>(
      z, [&](const Ordinal& a, const Ordinal& b) {
        return entangled_delta(e, a, b);
      });
  if (!best) return 0;
  const EntangledMember& ma = entangled_member(e, best->first);
  const EntangledMember& mb = entangled_member(e, best->second);
  for (std::size_t t = 0; t < ma.l.size(); ++t)
    if (ma.l[t] < mb.l[t]) return t;
  return 0;
}

PairOracle derive_pair_colouring(const SetColouring& d) {
  if (!d.evaluator)
    throw std::invalid_argument("set colouring has no evaluator");
  return PairOracle{OracleKind::table,
                    [d](const Ordinal& a, const Ordinal& b) {
                      return d.evaluate(FiniteOrdinalSet{a, b});
                    }};
}

}  // namespace fsr
