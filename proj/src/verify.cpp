#include "fsr/verify.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fsr/colouring.hpp"
#include "fsr/condense.hpp"
#include "fsr/fssets.hpp"
#include "fsr/instances.hpp"
#include "fsr/pair_oracle.hpp"
#include "fsr/presentation.hpp"
#include "fsr/rng.hpp"
#include "fsr/witness.hpp"

namespace fsr {

namespace {

struct Stopwatch {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

std::string count_detail(std::uint64_t n, const std::string& noun) {
  return std::to_string(n) + " " + noun;
}

// Advance an ascending k-subset of {0..n-1}; false after the last one.
bool next_subset(std::vector<std::size_t>& s, std::size_t n) {
  std::size_t k = s.size();
  for (std::size_t i = k; i-- > 0;) {
    if (s[i] < n - k + i) {
      ++s[i];
      for (std::size_t j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
      return true;
    }
  }
  return false;
}

mpz_class cofactor_det(const std::vector<std::vector<mpz_class>>& m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  mpz_class out = 0;
  int sign = 1;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<mpz_class>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<mpz_class> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    mpz_class term = m[0][j] * cofactor_det(minor);
    out += sign > 0 ? term : -term;
    sign = -sign;
  }
  return out;
}

struct MinorStructure {
  std::vector<mpz_class> torsion;
  std::size_t free_rank = 0;
};

// Invariant factors straight from the definition: the k-th minor gcd g_k
// divides g_{k+1}, the rank is the largest k with g_k nonzero, and the
// factors are the quotients g_k / g_{k-1}. Independent of the row-reduction
// path the library takes.
MinorStructure structure_by_minors(const AbelianPresentation& p) {
  std::size_t rows = p.relations.size();
  std::size_t cols = p.generators;
  MinorStructure out;
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    mpz_class g = 0;
    std::vector<std::size_t> rs(k);
    std::iota(rs.begin(), rs.end(), 0);
    do {
      std::vector<std::size_t> cs(k);
      std::iota(cs.begin(), cs.end(), 0);
      do {
        std::vector<std::vector<mpz_class>> sub(k, std::vector<mpz_class>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j)
            sub[i][j] = p.relations[rs[i]][cs[j]];
        g = gcd(g, cofactor_det(sub));
      } while (next_subset(cs, cols));
    } while (next_subset(rs, rows));
    if (g == 0) break;
    rank = k;
    mpz_class factor = g / prev;
    if (factor > 1) out.torsion.push_back(factor);
    prev = g;
  }
  out.free_rank = cols - rank;
  return out;
}

}  // namespace

bool SuiteReport::passed() const {
  if (!within_budget()) return false;
  for (const SuiteCheck& c : checks)
    if (!c.passed) return false;
  return true;
}

SuiteReport run_supports_suite(std::uint64_t seed) {
  Stopwatch watch;
  SuiteReport rep;
  rep.suite = "supports";
  rep.budget_seconds = 5.0;

  Rng rng(mix_string(seed, "supports-suite"));
  constexpr std::uint64_t kInstances = 10000;
  std::uint64_t hypothesis_failures = 0;
  std::uint64_t chain_failures = 0;
  for (std::uint64_t i = 0; i < kInstances; ++i) {
    SupportChainInstance inst = make_support_chain_instance(rng);
    SupportChainCheck chk = check_support_chain(inst);
    if (!chk.hypothesis_ok) ++hypothesis_failures;
    if (chk.hypothesis_ok && !chk.chain_ok) ++chain_failures;
  }

  rep.checks.push_back({"generated families form disjoint-tail systems",
                        hypothesis_failures == 0,
                        count_detail(kInstances, "instances")});
  rep.checks.push_back(
      {"sum support between tail union and root plus tails",
       chain_failures == 0,
       chain_failures == 0 ? count_detail(kInstances, "sums squeezed")
                           : count_detail(chain_failures, "violations")});
  rep.seconds = watch.seconds();
  return rep;
}

SuiteReport run_condensation_suite(std::uint64_t seed) {
  Stopwatch watch;
  SuiteReport rep;
  rep.suite = "condensation";
  rep.budget_seconds = 30.0;

  Rng rng(mix_string(seed, "condensation-suite"));
  constexpr std::uint64_t kInstances = 100;
  std::uint64_t pipeline_failures = 0;
  std::uint64_t certificate_failures = 0;
  std::uint64_t tuple_failures = 0;
  std::uint64_t tuples_checked = 0;
  std::string first_failure;
  for (std::uint64_t i = 0; i < kInstances; ++i) {
    std::size_t size = 8 + rand_below(rng, 57);  // 8..64
    std::vector<DirectSumElement> x = make_condensation_input(rng, size);
    std::size_t target = suggested_condensation_target(size);
    CondensationResult r = condense(x, target, rng());
    if (!r.ok) {
      ++pipeline_failures;
      if (first_failure.empty())
        first_failure = "input of size " + std::to_string(size) + ": " +
                        r.shortfall;
      continue;
    }
    CondensationCheck chk = verify_condensation(x, r.outputs, r.certificate);
    if (!chk.ok) {
      ++certificate_failures;
      if (first_failure.empty()) first_failure = chk.failure;
    }
    for (std::size_t n = 1; n <= 4; ++n) {
      SumSupportReport srep = verify_sum_support(r.outputs, n, rng());
      tuples_checked += srep.checked;
      if (!srep.exhaustive || srep.violation_count != 0) ++tuple_failures;
    }
  }

  rep.checks.push_back({"pipeline reaches the requested target",
                        pipeline_failures == 0,
                        pipeline_failures == 0
                            ? count_detail(kInstances, "inputs of sizes 8..64")
                            : first_failure});
  rep.checks.push_back({"certificates re-verify against their inputs",
                        certificate_failures == 0,
                        certificate_failures == 0
                            ? count_detail(kInstances, "certificates")
                            : first_failure});
  rep.checks.push_back(
      {"output sum supports are exact unions", tuple_failures == 0,
       count_detail(tuples_checked, "tuples of up to 4 outputs, exhaustive")});
  rep.seconds = watch.seconds();
  return rep;
}

SuiteReport run_witness_suite() {
  Stopwatch watch;
  SuiteReport rep;
  rep.suite = "witness-f";
  rep.budget_seconds = 60.0;

  WitnessF f;

  // Fairness first: three fulfilments for every requirement in the grid,
  // each strictly beyond the one before.
  std::uint64_t requirements = 0;
  std::uint64_t wrong_masks = 0;
  std::uint64_t max_position = 0;
  for (std::uint64_t m = 0; m <= 8; ++m) {
    for (std::uint64_t n = 1; n <= 8; ++n) {
      for (std::uint64_t omega = 0; omega < 256; ++omega) {
        WitnessRequirement r{m, n, omega};
        ++requirements;
        std::uint64_t prev = 0;
        for (int round = 0; round < 3; ++round) {
          std::uint64_t k =
              f.request_fulfillment(r, round == 0 ? 0 : prev + 1);
          prev = k;
          std::uint64_t position = m + n * k;
          max_position = std::max(max_position, position);
          if (f.eval_mask(position) != omega) ++wrong_masks;
        }
      }
    }
  }
  std::uint64_t bound = f.frontier();

  // Containment after the table has grown: every value is a subset of its
  // position.
  constexpr std::uint64_t kPositions = 100000;
  std::uint64_t containment_failures = 0;
  for (std::uint64_t k = 0; k < kPositions; ++k) {
    std::uint64_t mask = f.eval_mask(k);
    if (k < 64 && (mask >> k) != 0) ++containment_failures;
  }

  rep.checks.push_back(
      {"threefold fulfilment with exact targets", wrong_masks == 0,
       count_detail(requirements, "requirements, three fulfilments each")});
  rep.checks.push_back({"all fulfilment positions below the reported bound",
                        max_position < bound,
                        "bound " + std::to_string(bound)});
  rep.checks.push_back({"values are subsets of their positions",
                        containment_failures == 0,
                        count_detail(kPositions, "positions")});
  rep.seconds = watch.seconds();
  return rep;
}

SuiteReport run_multicube_suite() {
  Stopwatch watch;
  SuiteReport rep;
  rep.suite = "multicube";
  rep.budget_seconds = 60.0;

  auto f = std::make_shared<WitnessF>();
  std::uint64_t replays = 0;
  std::uint64_t mismatches = 0;
  std::string first_failure;
  for (std::uint64_t a = 1; a <= 2; ++a) {
    for (std::uint64_t b = 1; b <= 2; ++b) {
      for (std::uint64_t m = a; m <= 4; ++m) {
        for (std::uint64_t n = b; n <= 3; ++n) {
          for (std::uint64_t window = 4; window <= 6; ++window) {
            MulticubeInstance inst({a, b, m, n, window}, f);
            for (std::uint64_t mask = 0;
                 mask < (std::uint64_t{1} << window); ++mask) {
              if (std::popcount(mask) > 4) continue;
              std::vector<std::size_t> pick;
              for (std::size_t bit = 0; bit < window; ++bit)
                if ((mask >> bit) & 1) pick.push_back(bit);
              MulticubeInstance::Replay r = inst.replay(pick);
              ++replays;
              if (!r.match()) {
                ++mismatches;
                if (first_failure.empty())
                  first_failure = "a=" + std::to_string(a) + " b=" +
                                  std::to_string(b) + " m=" +
                                  std::to_string(m) + " n=" +
                                  std::to_string(n) + " window=" +
                                  std::to_string(window) + " pick mask " +
                                  std::to_string(mask);
              }
            }
          }
        }
      }
    }
  }

  rep.checks.push_back({"full parameter grid enumerated", replays == 3640,
                        count_detail(replays, "replays")});
  rep.checks.push_back({"replayed supports hit their targets exactly",
                        mismatches == 0,
                        mismatches == 0 ? count_detail(replays, "replays")
                                        : first_failure});
  rep.seconds = watch.seconds();
  return rep;
}

SuiteReport run_axioms_suite(std::uint64_t seed) {
  Stopwatch watch;
  SuiteReport rep;
  rep.suite = "axioms";

  constexpr std::uint64_t kPerFamily = 30;
  std::uint64_t rectangle_mismatches = 0;
  std::uint64_t oscillation_mismatches = 0;
  std::uint64_t axiom_failures = 0;
  std::uint64_t sandwiches = 0;
  for (std::uint64_t i = 0; i < kPerFamily; ++i) {
    PairBlockInstance inst =
        make_pr1_instance(mix_string(seed, "axioms-rectangle") + i);
    auto colour = [&inst](const FiniteOrdinalSet& z) {
      return d_from_pr1(inst.oracle, inst.theta, inst.chi, z);
    };
    sandwiches += std::uint64_t{1}
                  << set_intersection(inst.x0, inst.x1).size();
    rectangle_mismatches +=
        count_sandwich_mismatches(inst.x0, inst.x1, inst.predicted, colour);
    SetColouring d{inst.theta, colour};
    if (!check_axiom_pair(d, inst.x0, inst.x1, inst.predicted))
      ++axiom_failures;
  }
  for (std::uint64_t i = 0; i < kPerFamily; ++i) {
    OscBlockInstance inst =
        make_osc_instance(mix_string(seed, "axioms-oscillation") + i);
    auto colour = [&inst](const FiniteOrdinalSet& z) {
      return d_osc(inst.oracle, inst.config, z);
    };
    sandwiches += std::uint64_t{1}
                  << set_intersection(inst.x0, inst.x1).size();
    oscillation_mismatches +=
        count_sandwich_mismatches(inst.x0, inst.x1, inst.predicted, colour);
    SetColouring d{8, colour};
    if (!check_axiom_pair(d, inst.x0, inst.x1, inst.predicted))
      ++axiom_failures;
  }

  rep.checks.push_back({"rectangle instances sandwich-exact",
                        rectangle_mismatches == 0,
                        count_detail(kPerFamily, "instances")});
  rep.checks.push_back({"oscillation instances sandwich-exact",
                        oscillation_mismatches == 0,
                        count_detail(kPerFamily, "instances")});
  rep.checks.push_back(
      {"pair axiom holds on every instance", axiom_failures == 0,
       count_detail(sandwiches, "sandwich sets across 60 instances")});
  rep.seconds = watch.seconds();
  return rep;
}

SuiteReport run_embedding_suite(std::uint64_t seed) {
  Stopwatch watch;
  SuiteReport rep;
  rep.suite = "embedding";

  Rng rng(mix_string(seed, "embedding-suite"));
  constexpr std::uint64_t kPresentations = 50;
  std::uint64_t structure_mismatches = 0;
  std::uint64_t embedding_failures = 0;
  std::string first_failure;
  for (std::uint64_t i = 0; i < kPresentations; ++i) {
    std::size_t generators = 1 + rand_below(rng, 4);
    std::size_t relation_count = rand_below(rng, generators + 2);
    std::vector<std::vector<mpz_class>> relations(
        relation_count, std::vector<mpz_class>(generators));
    for (auto& row : relations)
      for (auto& cell : row) cell = rand_range(rng, -10, 10);
    AbelianPresentation p{generators, relations};

    GroupStructure st = presentation_structure(p);
    MinorStructure ms = structure_by_minors(p);
    if (st.torsion != ms.torsion || st.free_rank != ms.free_rank)
      ++structure_mismatches;

    Embedding e = embed_fg_abelian(p);
    EmbeddingCheck chk = verify_embedding(p, e, 4);
    if (!chk.ok) {
      ++embedding_failures;
      if (first_failure.empty()) first_failure = chk.failure;
    }
  }

  std::uint64_t cyclic_failures = 0;
  for (std::size_t m = 1; m <= 12; ++m) {
    CayleyTable table(m, std::vector<std::size_t>(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) table[i][j] = (i + j) % m;
    AbelianPresentation p = semigroup_to_group(table);
    GroupStructure st = presentation_structure(p);
    bool structure_ok =
        m == 1 ? st.torsion.empty() && st.free_rank == 0
               : st.free_rank == 0 &&
                     st.torsion == std::vector<mpz_class>{mpz_class(m)};
    Embedding e = embed_fg_abelian(p);
    if (!structure_ok || !verify_embedding(p, e, 4).ok) ++cyclic_failures;
  }

  rep.checks.push_back({"invariant factors match the minor-gcd oracle",
                        structure_mismatches == 0,
                        count_detail(kPresentations, "random presentations")});
  rep.checks.push_back({"random presentations embed injectively",
                        embedding_failures == 0,
                        embedding_failures == 0
                            ? "words of length up to 4, exhaustive"
                            : first_failure});
  rep.checks.push_back({"cyclic tables have the expected structure and embed",
                        cyclic_failures == 0, "orders 1..12"});
  rep.seconds = watch.seconds();
  return rep;
}

SuiteReport run_fssets_suite(std::uint64_t seed) {
  Stopwatch watch;
  SuiteReport rep;
  rep.suite = "fssets";

  Rng rng(mix_string(seed, "fssets-suite"));
  std::vector<GroupSignature::Coordinate> coords;
  for (std::uint64_t i = 0; i < 10; ++i)
    coords.push_back({Ordinal::natural(i), GroupSignature::Kind::rational, 0});
  SignaturePtr sig = make_signature(coords);

  auto random_element = [&]() {
    std::vector<DirectSumElement::Entry> entries;
    std::uint64_t first = rand_below(rng, 10);
    entries.push_back({Ordinal::natural(first),
                       RationalValue(mpz_class(rand_range(rng, 1, 4)),
                                     mpz_class(rand_range(rng, 1, 3)))});
    if (rand_below(rng, 2) == 1) {
      std::uint64_t second = rand_below(rng, 10);
      if (second != first)
        entries.push_back({Ordinal::natural(second),
                           RationalValue(mpz_class(rand_range(rng, -4, -1)),
                                         mpz_class(rand_range(rng, 1, 3)))});
    }
    return DirectSumElement(sig, std::move(entries));
  };

  constexpr std::uint64_t kTheta = 3;
  ElementColouring colour{kTheta, [](const DirectSumElement& x) {
                            return fnv1a(x.to_string()) % kTheta;
                          }};
  FsnSolver exhaustive = [&colour](const std::vector<DirectSumElement>& in,
                                   std::uint64_t n, std::uint64_t delta)
      -> std::optional<SumRecord> {
    for (const SumRecord& r : fs_n(in, n))
      if (colour.evaluate(r.value) == delta) return r;
    return std::nullopt;
  };

  constexpr std::uint64_t kFamilies = 100;
  std::uint64_t transfer_disagreements = 0;
  std::uint64_t bad_lifted_witnesses = 0;
  std::uint64_t lifted = 0;
  for (std::uint64_t i = 0; i < kFamilies; ++i) {
    std::size_t size = 2 + rand_below(rng, 9);  // 2..10
    std::vector<DirectSumElement> x;
    for (std::size_t j = 0; j < size; ++j) x.push_back(random_element());

    // Independent ground truth: translate by hand and scan all 2-subsets.
    DirectSumElement shift = divide(2, x[0]);
    std::vector<DirectSumElement> translated;
    for (std::size_t j = 1; j < size; ++j)
      translated.push_back(add(x[j], shift));

    for (std::uint64_t delta = 0; delta < kTheta; ++delta) {
      std::optional<SumRecord> w =
          divisibility_transfer(colour, x, 2, delta, exhaustive);
      bool solvable = false;
      for (const SumRecord& r : fs_n(translated, 2))
        if (colour.evaluate(r.value) == delta) {
          solvable = true;
          break;
        }
      if (w.has_value() != solvable) {
        ++transfer_disagreements;
        continue;
      }
      if (!w) continue;
      ++lifted;
      bool shape = w->generators.size() == 3 && w->generators[0] == 0 &&
                   w->generators[1] > 0 &&
                   w->generators[1] < w->generators[2] &&
                   w->generators[2] < size;
      DirectSumElement total(sig);
      for (std::size_t index : w->generators) total = add(total, x[index]);
      if (!shape || total != w->value ||
          colour.evaluate(w->value) != delta)
        ++bad_lifted_witnesses;
    }
  }

  PairSolver pair_solver =
      [&colour](const std::vector<DirectSumElement>& first,
                const std::vector<DirectSumElement>& second,
                std::uint64_t delta)
      -> std::optional<std::pair<std::size_t, std::size_t>> {
    for (std::size_t i = 0; i < first.size(); ++i)
      for (std::size_t j = 0; j < second.size(); ++j)
        if (colour.evaluate(add(first[i], second[j])) == delta)
          return std::make_pair(i, j);
    return std::nullopt;
  };

  constexpr std::uint64_t kExtensions = 100;
  std::uint64_t extension_disagreements = 0;
  std::uint64_t bad_extension_witnesses = 0;
  std::uint64_t extended = 0;
  for (std::uint64_t i = 0; i < kExtensions; ++i) {
    std::size_t part_count = 2 + rand_below(rng, 2);  // 2..3
    std::vector<std::vector<DirectSumElement>> parts(part_count);
    for (auto& part : parts) {
      std::size_t members = 1 + rand_below(rng, 3);
      for (std::size_t j = 0; j < members; ++j)
        part.push_back(random_element());
    }
    std::uint64_t delta = rand_below(rng, kTheta);

    std::optional<SumRecord> w =
        extend_sumset_witness(pair_solver, parts, delta);
    bool solvable = false;
    for (const SumRecord& r : sumset(parts))
      if (colour.evaluate(r.value) == delta) {
        solvable = true;
        break;
      }
    if (w.has_value() != solvable) {
      ++extension_disagreements;
      continue;
    }
    if (!w) continue;
    ++extended;
    bool shape = w->generators.size() == part_count;
    DirectSumElement total(sig);
    for (std::size_t slot = 0; shape && slot < part_count; ++slot) {
      if (w->generators[slot] >= parts[slot].size()) {
        shape = false;
        break;
      }
      total = add(total, parts[slot][w->generators[slot]]);
    }
    if (!shape || total != w->value || colour.evaluate(w->value) != delta)
      ++bad_extension_witnesses;
  }

  rep.checks.push_back(
      {"divisibility transfer matches exhaustive solvability",
       transfer_disagreements == 0,
       count_detail(kFamilies, "families, three colours each")});
  rep.checks.push_back({"lifted witnesses re-verify",
                        bad_lifted_witnesses == 0 && lifted >= 20,
                        count_detail(lifted, "lifted witnesses")});
  rep.checks.push_back({"sumset extension matches exhaustive solvability",
                        extension_disagreements == 0,
                        count_detail(kExtensions, "instances")});
  rep.checks.push_back({"extension outputs re-evaluate to their colour",
                        bad_extension_witnesses == 0 && extended >= 20,
                        count_detail(extended, "witnesses")});
  rep.seconds = watch.seconds();
  return rep;
}

SuiteReport run_partition_suite() {
  Stopwatch watch;
  SuiteReport rep;
  rep.suite = "partition";
  rep.budget_seconds = 120.0;

  SetColouring pentagon{2, [](const FiniteOrdinalSet& s) {
                          std::uint64_t diff =
                              s.max().natural_value() - s.min().natural_value();
                          return std::uint64_t{(diff == 1 || diff == 4) ? 1u
                                                                        : 0u};
                        }};
  bool pentagon_holds = brute_force_partition_check(5, 3, 2, 2, pentagon).holds;

  std::uint64_t passing = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << 15); ++mask) {
    SetColouring d{2, [mask](const FiniteOrdinalSet& s) {
                     std::uint64_t a = s.min().natural_value();
                     std::uint64_t b = s.max().natural_value();
                     std::uint64_t index = 0;
                     for (std::uint64_t i = 0; i < a; ++i) index += 5 - i;
                     index += b - a - 1;
                     return (mask >> index) & 1;
                   }};
    if (brute_force_partition_check(6, 3, 2, 2, d).holds) ++passing;
  }

  rep.checks.push_back(
      {"pentagon colouring realizes both colours inside every triple",
       pentagon_holds, "5 points, all triples"});
  rep.checks.push_back(
      {"no two-colouring of six points does the same", passing == 0,
       passing == 0 ? "32768 colourings, all triples each"
                    : count_detail(passing, "colourings slipped through")});
  rep.seconds = watch.seconds();
  return rep;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "supports") return run_supports_suite(seed);
  if (name == "condensation") return run_condensation_suite(seed);
  if (name == "witness-f") return run_witness_suite();
  if (name == "multicube") return run_multicube_suite();
  if (name == "axioms") return run_axioms_suite(seed);
  if (name == "fssets") return run_fssets_suite(seed);
  if (name == "embedding") return run_embedding_suite(seed);
  throw std::domain_error("unknown suite: " + name);
}

}  // namespace fsr
