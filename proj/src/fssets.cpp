#include "fsr/fssets.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "fsr/errors.hpp"

namespace fsr {

namespace {

// min(C(n, k), cap + 1), computed without overflow.
std::uint64_t clamped_binomial(std::uint64_t n, std::uint64_t k,
                               std::uint64_t cap) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    if (result > cap) return cap + 1;
    // result * (n - k + i) / i is exact at every step.
    mpz_class wide = mpz_class(result) * (n - k + i) / i;
    if (!wide.fits_ulong_p() || wide.get_ui() > cap) return cap + 1;
    result = wide.get_ui();
  }
  return result;
}

DirectSumElement sum_of_subset(const std::vector<DirectSumElement>& inputs,
                               const std::vector<std::size_t>& indices) {
  DirectSumElement total = inputs[indices.front()];
  for (std::size_t i = 1; i < indices.size(); ++i)
    total = add(total, inputs[indices[i]]);
  return total;
}

// Appends all k-subsets of {0..n-1} in colex order.
void collect_combinations(std::size_t n, std::size_t k,
                          std::vector<std::vector<std::size_t>>& out) {
  if (k == 0 || k > n) return;
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  for (;;) {
    out.push_back(c);
    std::size_t i = 0;
    while (i < k) {
      std::size_t limit = i + 1 < k ? c[i + 1] : n;
      if (c[i] + 1 < limit) break;
      ++i;
    }
    if (i == k) return;
    ++c[i];
    for (std::size_t j = 0; j < i; ++j) c[j] = j;
  }
}

}  // namespace

bool colex_less(const std::vector<std::size_t>& a,
                const std::vector<std::size_t>& b) {
  std::size_t ia = a.size();
  std::size_t ib = b.size();
  while (ia > 0 && ib > 0) {
    --ia;
    --ib;
    if (a[ia] != b[ib]) return a[ia] < b[ib];
  }
  return ia == 0 && ib > 0;
}

std::vector<SumRecord> fs(const std::vector<DirectSumElement>& inputs,
                          std::uint64_t max_terms, std::uint64_t budget) {
  const std::uint64_t n = inputs.size();
  const std::uint64_t cap = std::min<std::uint64_t>(max_terms, n);
  std::uint64_t total = 0;
  for (std::uint64_t k = 1; k <= cap; ++k) {
    total += clamped_binomial(n, k, budget);
    if (total > budget)
      throw resource_error("subset-sum enumeration exceeds the budget of " +
                           std::to_string(budget) + " records");
  }
  std::vector<std::vector<std::size_t>> subsets;
  subsets.reserve(total);
  for (std::uint64_t k = 1; k <= cap; ++k)
    collect_combinations(n, k, subsets);
  std::sort(subsets.begin(), subsets.end(), colex_less);
  std::vector<SumRecord> records;
  records.reserve(subsets.size());
  for (auto& s : subsets)
    records.push_back(SumRecord{sum_of_subset(inputs, s), std::move(s)});
  return records;
}

std::vector<SumRecord> fs_n(const std::vector<DirectSumElement>& inputs,
                            std::uint64_t n, std::uint64_t budget) {
  if (n == 0)
    throw std::invalid_argument("exact subset sums need a positive size");
  if (n > inputs.size()) return {};
  if (clamped_binomial(inputs.size(), n, budget) > budget)
    throw resource_error("subset-sum enumeration exceeds the budget of " +
                         std::to_string(budget) + " records");
  std::vector<std::vector<std::size_t>> subsets;
  collect_combinations(inputs.size(), n, subsets);
  std::vector<SumRecord> records;
  records.reserve(subsets.size());
  for (auto& s : subsets)
    records.push_back(SumRecord{sum_of_subset(inputs, s), std::move(s)});
  return records;
}

std::vector<SumRecord> sumset(
    const std::vector<std::vector<DirectSumElement>>& parts,
    std::uint64_t budget) {
  if (parts.empty())
    throw std::invalid_argument("sumset needs at least one part");
  std::uint64_t total = 1;
  for (const auto& part : parts) {
    if (part.empty()) return {};
    if (total > budget / part.size())
      throw resource_error("tuple enumeration exceeds the budget of " +
                           std::to_string(budget) + " records");
    total *= part.size();
  }
  std::vector<SumRecord> records;
  records.reserve(total);
  std::vector<std::size_t> idx(parts.size(), 0);
  for (;;) {
    DirectSumElement value = parts[0][idx[0]];
    for (std::size_t i = 1; i < parts.size(); ++i)
      value = add(value, parts[i][idx[i]]);
    records.push_back(SumRecord{std::move(value), idx});
    std::size_t pos = 0;
    while (pos < parts.size() && ++idx[pos] == parts[pos].size()) {
      idx[pos] = 0;
      ++pos;
    }
    if (pos == parts.size()) return records;
  }
}

std::vector<FuRecord> fu(const std::vector<FiniteOrdinalSet>& blocks,
                         std::uint64_t budget) {
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (blocks[i].empty())
      throw std::invalid_argument("block " + std::to_string(i) + " is empty");
  for (std::size_t i = 0; i + 1 < blocks.size(); ++i)
    if (cmp(blocks[i].max(), blocks[i + 1].min()) >= 0)
      throw std::invalid_argument(
          "blocks " + std::to_string(i) + " and " + std::to_string(i + 1) +
          " are not separated: " + blocks[i].to_string() + " reaches into " +
          blocks[i + 1].to_string());
  if (blocks.size() >= 63 ||
      (std::uint64_t{1} << blocks.size()) - 1 > budget)
    throw resource_error("union enumeration exceeds the budget of " +
                         std::to_string(budget) + " records");
  std::vector<FuRecord> records;
  const std::uint64_t masks = std::uint64_t{1} << blocks.size();
  for (std::uint64_t mask = 1; mask < masks; ++mask) {
    FuRecord record;
    for (std::size_t i = 0; i < blocks.size(); ++i)
      if (mask & (std::uint64_t{1} << i)) {
        record.value = set_union(record.value, blocks[i]);
        record.blocks.push_back(i);
      }
    records.push_back(std::move(record));
  }
  return records;
}

CoverageReport coverage(const ElementColouring& c,
                        const std::vector<SumRecord>& records) {
  if (c.colour_space > kEnumerationBudget)
    throw resource_error("colour space too large to partition");
  CoverageReport report;
  report.colour_space = c.colour_space;
  for (const SumRecord& record : records) {
    std::uint64_t colour = c.evaluate(record.value);
    auto it = report.attained.find(colour);
    if (it == report.attained.end())
      report.attained.emplace(colour, CoverageReport::Attained{1, record});
    else
      ++it->second.count;
  }
  for (std::uint64_t colour = 0; colour < c.colour_space; ++colour)
    if (!report.attained.count(colour)) report.missing.insert(colour);
  return report;
}

std::optional<SumRecord> find_witness(
    const ElementColouring& c, const std::vector<DirectSumElement>& inputs,
    std::uint64_t delta, const WitnessMode& mode, std::uint64_t budget) {
  if (delta >= c.colour_space) return std::nullopt;
  std::vector<SumRecord> records;
  if (const FsMode* m = std::get_if<FsMode>(&mode))
    records = fs(inputs, m->max_terms, budget);
  else if (const FsnMode* m2 = std::get_if<FsnMode>(&mode))
    records = fs_n(inputs, m2->n, budget);
  else
    records = sumset(std::get<SusMode>(mode).parts, budget);
  for (SumRecord& record : records)
    if (c.evaluate(record.value) == delta) return std::move(record);
  return std::nullopt;
}

std::optional<SumRecord> extend_sumset_witness(
    const PairSolver& solver,
    const std::vector<std::vector<DirectSumElement>>& parts,
    std::uint64_t delta, std::uint64_t budget) {
  if (!solver) throw std::invalid_argument("missing pair solver");
  if (parts.size() < 2)
    throw std::invalid_argument("the inductive step needs at least two parts");
  std::vector<std::vector<DirectSumElement>> head(parts.begin(),
                                                  parts.end() - 1);
  std::vector<SumRecord> collapsed = sumset(head, budget);
  std::vector<DirectSumElement> collapsed_values;
  collapsed_values.reserve(collapsed.size());
  for (const SumRecord& record : collapsed)
    collapsed_values.push_back(record.value);
  auto pick = solver(collapsed_values, parts.back(), delta);
  if (!pick) return std::nullopt;
  auto [i, j] = *pick;
  if (i >= collapsed.size() || j >= parts.back().size())
    throw std::logic_error("pair solver returned indices out of range");
  SumRecord out;
  out.generators = collapsed[i].generators;
  out.generators.push_back(j);
  out.value = add(collapsed[i].value, parts.back()[j]);
  return out;
}

std::optional<SumRecord> divisibility_transfer(
    const ElementColouring& c, const std::vector<DirectSumElement>& inputs,
    std::uint64_t n, std::uint64_t delta, const FsnSolver& solver) {
  if (n == 0) throw std::invalid_argument("transfer needs a positive arity");
  if (!solver) throw std::invalid_argument("missing solver");
  if (inputs.empty()) return std::nullopt;
  const DirectSumElement& x = inputs.front();
  DirectSumElement z = divide(n, x);
  std::vector<DirectSumElement> translated;
  translated.reserve(inputs.size() - 1);
  for (std::size_t i = 1; i < inputs.size(); ++i)
    translated.push_back(add(inputs[i], z));
  auto found = solver(translated, n, delta);
  if (!found) return std::nullopt;
  if (found->generators.size() != n)
    throw std::logic_error("solver returned a witness of the wrong arity");
  SumRecord out;
  DirectSumElement check = found->value;
  out.generators.push_back(0);  // x carries the least index
  for (std::size_t g : found->generators) {
    if (g >= translated.size())
      throw std::logic_error("solver returned indices out of range");
    out.generators.push_back(g + 1);  // translated[g] came from inputs[g+1]
  }
  for (std::size_t i = 1; i + 1 < out.generators.size(); ++i)
    if (out.generators[i] >= out.generators[i + 1])
      throw std::logic_error("solver indices must strictly increase");
  out.value = sum_of_subset(inputs, out.generators);
  // The n translations contribute n * divide(n, x) = x, so the solver's
  // value and the reassembled sum agree exactly.
  DirectSumElement reassembled = translated[found->generators[0]];
  for (std::size_t i = 1; i < n; ++i)
    reassembled = add(reassembled, translated[found->generators[i]]);
  if (!(reassembled == check) || !(reassembled == out.value))
    throw std::logic_error("solver witness does not match its own sum");
  if (c.evaluate(out.value) != delta)
    throw std::logic_error("translated witness lost its colour");
  return out;
}

SetColouring pair_colouring_from_fsn(const ElementColouring& c,
                                     std::vector<DirectSumElement> enumeration,
                                     std::uint64_t n) {
  if (!c.evaluator)
    throw std::invalid_argument("element colouring has no evaluator");
  if (n == 0)
    throw std::invalid_argument("index sets need a positive size");
  for (std::size_t i = 0; i < enumeration.size(); ++i)
    for (std::size_t j = i + 1; j < enumeration.size(); ++j)
      if (enumeration[i] == enumeration[j])
        throw std::invalid_argument("enumeration entries " +
                                    std::to_string(i) + " and " +
                                    std::to_string(j) + " coincide");
  auto shared =
      std::make_shared<std::vector<DirectSumElement>>(std::move(enumeration));
  return SetColouring{
      c.colour_space, [c, shared, n](const FiniteOrdinalSet& s) {
        if (s.size() != n)
          throw std::invalid_argument("index set must have exactly " +
                                      std::to_string(n) + " members");
        std::optional<DirectSumElement> total;
        for (const Ordinal& a : s.elements()) {
          if (!a.is_natural() || a.natural_value() >= shared->size())
            throw std::invalid_argument(
                "index " + a.to_string() +
                " does not name an enumeration position");
          const DirectSumElement& x = (*shared)[a.natural_value()];
          total = total ? add(*total, x) : x;
        }
        return c.evaluate(*total);
      }};
}

PartitionCheckResult brute_force_partition_check(
    std::uint64_t n, std::uint64_t lambda, std::uint64_t mu,
    std::uint64_t theta, const SetColouring& d, std::uint64_t budget) {
  if (mu > lambda || lambda > n)
    throw std::invalid_argument("need mu <= lambda <= n");
  if (theta == 0) throw std::invalid_argument("need at least one colour");
  if (theta > budget)
    throw resource_error("colour range too large to track");
  std::uint64_t outer = clamped_binomial(n, lambda, budget);
  std::uint64_t inner = clamped_binomial(lambda, mu, budget);
  if (outer > budget || inner > budget || outer > budget / std::max<std::uint64_t>(inner, 1))
    throw resource_error("partition check exceeds the budget of " +
                         std::to_string(budget) + " evaluations");

  std::vector<std::vector<std::size_t>> lambda_subsets;
  collect_combinations(n, lambda, lambda_subsets);
  std::vector<std::vector<std::size_t>> mu_positions;
  collect_combinations(lambda, mu, mu_positions);

  PartitionCheckResult result;
  for (const auto& big : lambda_subsets) {
    std::vector<bool> seen(theta, false);
    std::uint64_t seen_count = 0;
    for (const auto& small : mu_positions) {
      std::vector<Ordinal> elems;
      elems.reserve(small.size());
      for (std::size_t pos : small)
        elems.push_back(Ordinal::natural(big[pos]));
      std::uint64_t colour = d.evaluate(FiniteOrdinalSet(elems));
      if (colour >= theta) {
        result.holds = false;
        result.counterexample.assign(big.begin(), big.end());
        result.colour = colour;
        result.colour_missing = false;
        return result;
      }
      if (!seen[colour]) {
        seen[colour] = true;
        ++seen_count;
      }
    }
    if (seen_count < theta) {
      result.holds = false;
      result.counterexample.assign(big.begin(), big.end());
      for (std::uint64_t colour = 0; colour < theta; ++colour)
        if (!seen[colour]) {
          result.colour = colour;
          break;
        }
      result.colour_missing = true;
      return result;
    }
  }
  return result;
}

}  // namespace fsr
