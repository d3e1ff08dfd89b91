#include "fsr/condense.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "fsr/delta.hpp"
#include "fsr/rng.hpp"

namespace fsr {

namespace {

void require_shared_signature(const std::vector<DirectSumElement>& x) {
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i].signature() != x[0].signature() &&
        !(*x[i].signature() == *x[0].signature())) {
      throw std::invalid_argument("element " + std::to_string(i) +
                                  " has a different signature");
    }
  }
}

FiniteOrdinalSet union_of_supports(const std::vector<DirectSumElement>& y,
                                   const std::vector<std::size_t>& idx) {
  FiniteOrdinalSet u;
  for (std::size_t i : idx) u = set_union(u, y[i].support());
  return u;
}

DirectSumElement sum_by_indices(const std::vector<DirectSumElement>& y,
                                const std::vector<std::size_t>& idx) {
  DirectSumElement acc(y[idx[0]].signature());
  for (std::size_t i : idx) acc = add(acc, y[i]);
  return acc;
}

bool tuple_support_ok(const std::vector<DirectSumElement>& y,
                      const std::vector<std::size_t>& idx) {
  return sum_by_indices(y, idx).support() == union_of_supports(y, idx);
}

void for_each_combination(std::size_t n, std::size_t k,
                          const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// C(n, k) clamped to cap + 1.
std::uint64_t binomial_clamped(std::uint64_t n, std::uint64_t k,
                               std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    if (acc > cap) return cap + 1;
    acc = acc * (n - k + i) / i;  // exact at every step
  }
  return std::min(acc, cap + 1);
}

}  // namespace

CondensationResult condense(const std::vector<DirectSumElement>& x,
                            std::size_t target, std::uint64_t seed) {
  if (target < 1) {
    throw std::invalid_argument("condense target must be at least 1");
  }
  require_shared_signature(x);
  CondensationResult out;
  out.requested = target;
  if (x.empty()) {
    out.shortfall = "empty input";
    return out;
  }

  // One element per distinct support.
  std::vector<std::size_t> survivors;
  std::vector<FiniteOrdinalSet> supports;
  for (std::size_t i = 0; i < x.size(); ++i) {
    FiniteOrdinalSet s = x[i].support();
    bool seen = false;
    for (const FiniteOrdinalSet& kept : supports) {
      if (kept == s) {
        seen = true;
        break;
      }
    }
    if (!seen) {
      survivors.push_back(i);
      supports.push_back(std::move(s));
    }
  }

  // Delta-system of supports.
  FiniteOrdinalSet root;
  if (survivors.size() >= 2) {
    DeltaResult dr = delta_refine(SetFamily(supports), 2);
    if (dr.outcome != DeltaOutcome::found) {
      out.shortfall = "no Delta-system of supports found";
      return out;
    }
    std::vector<std::size_t> refined;
    refined.reserve(dr.certificate.selected.size());
    for (std::size_t k : dr.certificate.selected) {
      refined.push_back(survivors[k]);
    }
    survivors = std::move(refined);
    root = dr.certificate.root;
  }

  // Pigeonhole each root coordinate to its most common value; ties go to
  // the lexicographically least value string.
  for (const Ordinal& alpha : root.elements()) {
    std::map<std::string, std::vector<std::size_t>> classes;
    for (std::size_t i : survivors) {
      classes[value_to_string(x[i].at(alpha))].push_back(i);
    }
    const std::vector<std::size_t>* best = nullptr;
    for (const auto& [key, group] : classes) {
      if (best == nullptr || group.size() > best->size()) best = &group;
    }
    survivors = *best;
  }

  // Split the root by order of the now-shared values.
  std::vector<Ordinal> root_inf;
  mpz_class m = 1;
  for (const Ordinal& alpha : root.elements()) {
    std::optional<mpz_class> ord = element_order(x[survivors[0]].at(alpha));
    if (!ord) {
      root_inf.push_back(alpha);
    } else {
      mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), ord->get_mpz_t());
    }
  }
  out.certificate.root_infinite = FiniteOrdinalSet(std::move(root_inf));
  out.certificate.multiplier = m;
  if (!mpz_fits_ulong_p(m.get_mpz_t())) {
    out.shortfall = "finite-order multiplier " + m.get_str() +
                    " exceeds any feasible block size";
    return out;
  }
  const std::size_t block = static_cast<std::size_t>(m.get_ui());

  // Seeded shuffle, then consecutive blocks.
  Rng rng(seed);
  for (std::size_t i = survivors.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rand_below(rng, i));
    std::swap(survivors[i - 1], survivors[j]);
  }
  const std::size_t feasible = survivors.size() / block;
  out.achieved = std::min(feasible, target);
  for (std::size_t k = 0; k < out.achieved; ++k) {
    std::vector<std::size_t> blk(survivors.begin() + k * block,
                                 survivors.begin() + (k + 1) * block);
    std::sort(blk.begin(), blk.end());
    out.outputs.push_back(sum_by_indices(x, blk));
    out.certificate.blocks.push_back(std::move(blk));
  }
  if (out.achieved < target) {
    out.shortfall = "only " + std::to_string(survivors.size()) +
                    " survivors after thinning, enough for " +
                    std::to_string(feasible) + " blocks of " +
                    std::to_string(block);
    return out;
  }

  CondensationCheck check = verify_condensation(x, out.outputs,
                                                out.certificate, 4);
  if (!check.ok) {
    throw std::logic_error("condensation pipeline broke its own guarantee: " +
                           check.failure);
  }
  out.ok = true;
  return out;
}

SumSupportReport verify_sum_support(const std::vector<DirectSumElement>& y,
                                    std::size_t n, std::uint64_t sample_seed,
                                    std::uint64_t budget) {
  SumSupportReport report;
  if (n == 0 || n > y.size()) return report;

  auto check = [&](const std::vector<std::size_t>& idx) {
    ++report.checked;
    if (tuple_support_ok(y, idx)) return;
    ++report.violation_count;
    if (report.violations.size() < kSumSupportKeptViolations) {
      report.violations.push_back(idx);
    }
  };

  if (binomial_clamped(y.size(), n, budget) <= budget) {
    for_each_combination(y.size(), n, check);
    return report;
  }

  report.exhaustive = false;
  Rng rng(sample_seed);
  std::vector<std::size_t> pool(y.size());
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
  for (std::uint64_t s = 0; s < budget; ++s) {
    // Partial Fisher-Yates: the first n entries become a random n-subset.
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t j = i + static_cast<std::size_t>(
                              rand_below(rng, pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    std::vector<std::size_t> idx(pool.begin(), pool.begin() + n);
    std::sort(idx.begin(), idx.end());
    check(idx);
  }
  return report;
}

CondensationCheck verify_condensation(const std::vector<DirectSumElement>& x,
                                      const std::vector<DirectSumElement>& y,
                                      const CondensationCertificate& cert,
                                      std::size_t tuple_bound) {
  CondensationCheck out;
  auto fail = [&](std::string msg) {
    out.ok = false;
    out.failure = std::move(msg);
    return out;
  };

  if (cert.blocks.size() != y.size()) {
    return fail("certificate has " + std::to_string(cert.blocks.size()) +
                " blocks for " + std::to_string(y.size()) + " outputs");
  }
  if (cert.multiplier < 1) {
    return fail("multiplier must be positive");
  }
  if (!mpz_fits_ulong_p(cert.multiplier.get_mpz_t())) {
    return fail("multiplier too large to check");
  }
  const std::size_t block = static_cast<std::size_t>(cert.multiplier.get_ui());
  try {
    require_shared_signature(x);
  } catch (const std::invalid_argument& e) {
    return fail(e.what());
  }

  std::vector<bool> used(x.size(), false);
  for (std::size_t k = 0; k < cert.blocks.size(); ++k) {
    if (cert.blocks[k].empty()) {
      return fail("block " + std::to_string(k) + " is empty");
    }
    if (cert.blocks[k].size() != block) {
      return fail("block " + std::to_string(k) + " has " +
                  std::to_string(cert.blocks[k].size()) +
                  " elements, multiplier says " + std::to_string(block));
    }
    for (std::size_t i : cert.blocks[k]) {
      if (i >= x.size()) {
        return fail("block " + std::to_string(k) +
                    " references element " + std::to_string(i) +
                    " outside the input");
      }
      if (used[i]) {
        return fail("element " + std::to_string(i) +
                    " appears in two blocks");
      }
      used[i] = true;
    }
    if (sum_by_indices(x, cert.blocks[k]) != y[k]) {
      return fail("output " + std::to_string(k) +
                  " is not the sum of its block");
    }
  }

  for (std::size_t i = 0; i < y.size(); ++i) {
    for (std::size_t j = i + 1; j < y.size(); ++j) {
      if (set_intersection(y[i].support(), y[j].support()) !=
          cert.root_infinite) {
        return fail("supports of outputs " + std::to_string(i) + " and " +
                    std::to_string(j) +
                    " do not intersect in the infinite root");
      }
    }
  }

  for (std::size_t k = 0; k < y.size(); ++k) {
    for (const Ordinal& alpha : cert.root_infinite.elements()) {
      if (element_order(y[k].at(alpha)).has_value()) {
        return fail("output " + std::to_string(k) +
                    " has finite order at root coordinate " +
                    alpha.to_string());
      }
    }
  }

  for (std::size_t t = 2; t <= std::min(tuple_bound, y.size()); ++t) {
    bool ok = true;
    std::vector<std::size_t> bad;
    for_each_combination(y.size(), t, [&](const std::vector<std::size_t>& idx) {
      if (ok && !tuple_support_ok(y, idx)) {
        ok = false;
        bad = idx;
      }
    });
    if (!ok) {
      std::string desc;
      for (std::size_t i : bad) {
        if (!desc.empty()) desc += ',';
        desc += std::to_string(i);
      }
      return fail("support of the sum of outputs {" + desc +
                  "} is not the union of supports");
    }
  }
  return out;
}

}  // namespace fsr
