#include "fsr/colouring.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "fsr/errors.hpp"

namespace fsr {

namespace {

std::uint64_t checked_colour(std::uint64_t value, std::uint64_t space,
                             const char* what) {
  if (value >= space)
    throw std::logic_error(std::string(what) + " produced colour " +
                           std::to_string(value) +
                           " outside its declared space " +
                           std::to_string(space));
  return value;
}

}  // namespace

std::uint64_t SetColouring::evaluate(const FiniteOrdinalSet& s) const {
  if (!evaluator)
    throw std::invalid_argument("set colouring has no evaluator");
  return checked_colour(evaluator(s), colour_space, "set colouring");
}

std::uint64_t ElementColouring::evaluate(const DirectSumElement& x) const {
  if (!evaluator)
    throw std::invalid_argument("element colouring has no evaluator");
  return checked_colour(evaluator(x), colour_space, "element colouring");
}

FiniteOrdinalSet enumeration_image(std::uint64_t mask,
                                   const FiniteOrdinalSet& s) {
  const auto& elems = s.elements();
  if (static_cast<std::size_t>(std::bit_width(mask)) > elems.size())
    throw std::invalid_argument(
        "mask selects position " +
        std::to_string(std::bit_width(mask) - 1) + " of a set with only " +
        std::to_string(elems.size()) + " elements");
  std::vector<Ordinal> out;
  // The mask has no bits past 63, so cap the scan there: shifting by the
  // position would be undefined on sets with more than 64 elements.
  std::size_t limit = std::min<std::size_t>(elems.size(), 64);
  for (std::size_t b = 0; b < limit; ++b)
    if (mask & (std::uint64_t{1} << b)) out.push_back(elems[b]);
  return FiniteOrdinalSet(out);
}

FiniteOrdinalSet d_support(WitnessF& f, const FiniteOrdinalSet& s) {
  return enumeration_image(f.eval_mask(s.size()), s);
}

FiniteOrdinalSet d_support(
    const std::function<std::uint64_t(std::uint64_t)>& f_mask,
    const FiniteOrdinalSet& s) {
  if (!f_mask) throw std::invalid_argument("missing mask evaluator");
  return enumeration_image(f_mask(s.size()), s);
}

std::uint64_t log_parity(const FiniteOrdinalSet& s, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("log parity needs a positive modulus");
  if (s.empty()) return 0;
  std::uint64_t log2 = std::bit_width(static_cast<std::uint64_t>(s.size())) - 1;
  return log2 % m;
}

SetColouring make_log_parity_colouring(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("log parity needs a positive modulus");
  return SetColouring{
      m, [m](const FiniteOrdinalSet& s) { return log_parity(s, m); }};
}

ElementColouring compose(const SetColouring& c, std::shared_ptr<WitnessF> f) {
  if (!f) throw std::invalid_argument("compose needs a witness function");
  if (!c.evaluator)
    throw std::invalid_argument("compose needs a total set colouring");
  return ElementColouring{
      c.colour_space, [c, f](const DirectSumElement& x) {
        return c.evaluate(d_support(*f, x.support()));
      }};
}

std::set<std::uint64_t> sandwich_values(const SetColouring& d,
                                        const FiniteOrdinalSet& x,
                                        const FiniteOrdinalSet& y) {
  FiniteOrdinalSet core = set_symmetric_difference(x, y);
  FiniteOrdinalSet shared = set_intersection(x, y);
  if (shared.size() > kSandwichIntersectionLimit)
    throw resource_error(
        "sandwich enumeration needs 2^" + std::to_string(shared.size()) +
        " sets; the intersection cap is " +
        std::to_string(kSandwichIntersectionLimit));
  std::set<std::uint64_t> out;
  const std::uint64_t subsets = std::uint64_t{1} << shared.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask)
    out.insert(d.evaluate(set_union(core, enumeration_image(mask, shared))));
  return out;
}

bool check_axiom_pair(const SetColouring& d, const FiniteOrdinalSet& x,
                      const FiniteOrdinalSet& y, std::uint64_t delta) {
  if (x == y)
    throw std::invalid_argument("the pair axiom needs two distinct sets");
  std::set<std::uint64_t> values = sandwich_values(d, x, y);
  return values.size() == 1 && *values.begin() == delta;
}

namespace {

// All sets z with core within z within full get colour delta?
bool sandwich_monochromatic(const SetColouring& d,
                            const FiniteOrdinalSet& core,
                            const FiniteOrdinalSet& full,
                            std::uint64_t delta) {
  FiniteOrdinalSet free_part = set_difference(full, core);
  if (free_part.size() > kSandwichIntersectionLimit)
    throw resource_error(
        "sandwich enumeration needs 2^" + std::to_string(free_part.size()) +
        " sets; the free-part cap is " +
        std::to_string(kSandwichIntersectionLimit));
  const std::uint64_t subsets = std::uint64_t{1} << free_part.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    FiniteOrdinalSet z = set_union(core, enumeration_image(mask, free_part));
    if (d.evaluate(z) != delta) return false;
  }
  return true;
}

}  // namespace

std::optional<StarWitness> check_axiom_star_instance(
    const SetColouring& d, const std::vector<SetFamily>& families,
    std::uint64_t delta) {
  if (families.size() < 2)
    throw std::invalid_argument("the star axiom needs at least two families");
  for (std::size_t i = 0; i < families.size(); ++i)
    if (families[i].size() == 0)
      throw std::invalid_argument("family " + std::to_string(i) +
                                  " is empty");
  if (delta >= d.colour_space) return std::nullopt;

  const std::size_t n = families.size();
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    // Current tuple; the maxima must strictly increase, which also rules
    // out empty picks (an empty set has no maximum).
    bool maxima_ok = true;
    std::vector<FiniteOrdinalSet> tuple;
    tuple.reserve(n);
    for (std::size_t i = 0; i < n && maxima_ok; ++i) {
      const FiniteOrdinalSet& pick = families[i].members()[idx[i]];
      if (pick.empty() || (i > 0 && cmp(tuple[i - 1].max(), pick.max()) >= 0))
        maxima_ok = false;
      else
        tuple.push_back(pick);
    }
    if (maxima_ok) {
      FiniteOrdinalSet full;
      for (const auto& x : tuple) full = set_union(full, x);
      FiniteOrdinalSet core;
      for (std::size_t i = 0; i < n; ++i) {
        FiniteOrdinalSet others;
        for (std::size_t j = 0; j < n; ++j)
          if (j != i) others = set_union(others, tuple[j]);
        core = set_union(core, set_difference(tuple[i], others));
      }
      if (sandwich_monochromatic(d, core, full, delta))
        return StarWitness{idx, tuple};
    }
    // Advance the odometer, last index fastest.
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < families[pos].size()) break;
      idx[pos] = 0;
      if (pos == 0) return std::nullopt;
    }
  }
}

}  // namespace fsr
