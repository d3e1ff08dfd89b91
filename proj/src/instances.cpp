#include "fsr/instances.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>
#include <utility>

#include "fsr/colouring.hpp"
#include "fsr/errors.hpp"

namespace fsr {

namespace {

GroupSignature::Coordinate rational_coord(std::uint64_t index) {
  return {Ordinal::natural(index), GroupSignature::Kind::rational, 0};
}

GroupSignature::Coordinate prufer_coord(std::uint64_t index, std::uint64_t p) {
  return {Ordinal::natural(index), GroupSignature::Kind::prufer, p};
}

// Nonzero rational with small numerator and denominator.
RationalValue random_rational(Rng& rng) {
  std::int64_t num = rand_range(rng, 1, 5);
  if (rand_below(rng, 2) == 1) num = -num;
  return RationalValue(mpz_class(num), mpz_class(rand_range(rng, 1, 4)));
}

// Nonzero Prufer value over p with exponent 1..max_exp.
PruferValue random_prufer(Rng& rng, std::uint64_t p, std::uint32_t max_exp) {
  std::uint32_t n = 1 + static_cast<std::uint32_t>(rand_below(rng, max_exp));
  std::uint64_t pn = 1;
  for (std::uint32_t i = 0; i < n; ++i) pn *= p;
  std::uint64_t a = 1 + rand_below(rng, pn - 1);
  while (a % p == 0) a = 1 + rand_below(rng, pn - 1);
  return PruferValue(p, mpz_class(a), n);
}

}  // namespace

SupportChainInstance make_support_chain_instance(Rng& rng) {
  // Coordinate layout: a root of 0..4 coordinates, then up to six disjoint
  // tails of 1..3 coordinates each.  Kinds are mixed per coordinate.
  std::size_t members = 1 + rand_below(rng, 6);
  std::size_t root_size = rand_below(rng, 5);
  std::vector<std::size_t> tail_sizes;
  std::size_t total = root_size;
  for (std::size_t i = 0; i < members; ++i) {
    tail_sizes.push_back(1 + rand_below(rng, 3));
    total += tail_sizes.back();
  }

  static const std::uint64_t primes[] = {2, 3, 5, 7};
  std::vector<GroupSignature::Coordinate> coords;
  std::vector<bool> is_rational(total);
  std::vector<std::uint64_t> prime_of(total, 0);
  for (std::size_t i = 0; i < total; ++i) {
    is_rational[i] = rand_below(rng, 3) != 0;  // two thirds rational
    if (is_rational[i]) {
      coords.push_back(rational_coord(i));
    } else {
      prime_of[i] = primes[rand_below(rng, 4)];
      coords.push_back(prufer_coord(i, prime_of[i]));
    }
  }
  SignaturePtr sig = make_signature(coords);

  auto random_value = [&](std::size_t coord) -> CoordinateValue {
    if (is_rational[coord]) return random_rational(rng);
    return random_prufer(rng, prime_of[coord], 2);
  };

  SupportChainInstance inst;
  std::vector<Ordinal> root_elems;
  for (std::size_t i = 0; i < root_size; ++i)
    root_elems.push_back(Ordinal::natural(i));
  inst.root = FiniteOrdinalSet(root_elems);

  std::size_t next = root_size;
  for (std::size_t i = 0; i < members; ++i) {
    std::vector<DirectSumElement::Entry> entries;
    for (std::size_t c = 0; c < root_size; ++c)
      entries.push_back({Ordinal::natural(c), random_value(c)});
    for (std::size_t t = 0; t < tail_sizes[i]; ++t, ++next)
      entries.push_back({Ordinal::natural(next), random_value(next)});
    inst.elements.push_back(DirectSumElement(sig, std::move(entries)));
  }
  return inst;
}

SupportChainCheck check_support_chain(const SupportChainInstance& inst) {
  SupportChainCheck out;
  if (inst.elements.empty()) return out;

  FiniteOrdinalSet tail_union;
  out.hypothesis_ok = true;
  for (std::size_t i = 0; i < inst.elements.size(); ++i) {
    FiniteOrdinalSet supp = inst.elements[i].support();
    if (!is_subset(inst.root, supp)) out.hypothesis_ok = false;
    FiniteOrdinalSet tail = set_difference(supp, inst.root);
    if (!set_intersection(tail, tail_union).empty()) out.hypothesis_ok = false;
    tail_union = set_union(tail_union, tail);
  }
  if (!out.hypothesis_ok) return out;

  FiniteOrdinalSet sum_supp = sum_of(inst.elements).support();
  out.chain_ok = is_subset(tail_union, sum_supp) &&
                 is_subset(sum_supp, set_union(inst.root, tail_union));
  return out;
}

std::vector<DirectSumElement> make_condensation_input(Rng& rng,
                                                      std::size_t size) {
  if (size < 2) throw std::invalid_argument("condensation input needs >= 2");

  // Root: one rational coordinate, plus one 2-power torsion coordinate on a
  // coin flip.  Identical root values across the family keep the pigeonhole
  // stage lossless; torsion orders stay at 2 or 4 so block sizes stay small.
  bool with_torsion = rand_below(rng, 2) == 1;
  std::uint32_t torsion_exp =
      1 + static_cast<std::uint32_t>(rand_below(rng, 2));
  std::size_t root_size = with_torsion ? 2 : 1;

  std::vector<GroupSignature::Coordinate> coords;
  coords.push_back(rational_coord(0));
  if (with_torsion) coords.push_back(prufer_coord(1, 2));
  for (std::size_t i = 0; i < size; ++i)
    coords.push_back(rational_coord(root_size + i));
  SignaturePtr sig = make_signature(coords);

  RationalValue shared_rational = random_rational(rng);
  PruferValue shared_torsion =
      with_torsion ? random_prufer(rng, 2, torsion_exp) : PruferValue(2);

  std::vector<DirectSumElement> out;
  for (std::size_t i = 0; i < size; ++i) {
    std::vector<DirectSumElement::Entry> entries;
    entries.push_back({Ordinal::natural(0), shared_rational});
    if (with_torsion)
      entries.push_back({Ordinal::natural(1), shared_torsion});
    entries.push_back({Ordinal::natural(root_size + i), random_rational(rng)});
    out.push_back(DirectSumElement(sig, std::move(entries)));
  }
  return out;
}

std::size_t suggested_condensation_target(std::size_t size) {
  return std::max<std::size_t>(1, size / 4);
}

MulticubeInstance::MulticubeInstance(MulticubeParams params,
                                     std::shared_ptr<WitnessF> f)
    : params_(params), f_(std::move(f)) {
  if (!f_) throw std::invalid_argument("the scheduler handle is null");
  if (params_.b == 0 || params_.b > params_.n)
    throw std::invalid_argument("tail width must satisfy 1 <= b <= n");
  if (params_.a > params_.m)
    throw std::invalid_argument("low root part must satisfy a <= m");
  if (params_.window == 0)
    throw std::invalid_argument("the target window is empty");
  if (params_.a + params_.b * (params_.window - 1) > 63)
    throw std::invalid_argument("window targets overflow the 64-bit mask");

  // One fulfilment request per target size fixes every k this instance can
  // need, which in turn fixes the pool size.
  std::uint64_t extra = 1;
  for (std::uint64_t c = 0; c <= params_.window; ++c) {
    std::uint64_t omega = 0;
    for (std::uint64_t j = 0; j < c; ++j)
      omega |= std::uint64_t{1} << (params_.a + params_.b * j);
    std::uint64_t k = f_->request_fulfillment(
        WitnessRequirement{params_.m, params_.n, omega}, c + 1);
    extra = std::max(extra, k - c);
  }
  pool_ = params_.window + extra;
  boundary_ = params_.a + pool_ * params_.b;

  std::vector<GroupSignature::Coordinate> coords;
  std::uint64_t high = boundary_ + (params_.m - params_.a) +
                       pool_ * (params_.n - params_.b);
  for (std::uint64_t i = 0; i < high; ++i) coords.push_back(rational_coord(i));
  sig_ = make_signature(coords);

  for (std::uint64_t i = 0; i < params_.window; ++i)
    window_.push_back(Ordinal::natural(params_.a + i * params_.b));
}

DirectSumElement MulticubeInstance::member(std::size_t index) const {
  std::vector<DirectSumElement::Entry> entries;
  RationalValue one = RationalValue::integer(1);
  for (std::uint64_t c = 0; c < params_.a; ++c)
    entries.push_back({Ordinal::natural(c), one});
  for (std::uint64_t t = 0; t < params_.b; ++t)
    entries.push_back(
        {Ordinal::natural(params_.a + index * params_.b + t), one});
  for (std::uint64_t c = 0; c < params_.m - params_.a; ++c)
    entries.push_back({Ordinal::natural(boundary_ + c), one});
  std::uint64_t own_high =
      boundary_ + (params_.m - params_.a) + index * (params_.n - params_.b);
  for (std::uint64_t t = 0; t < params_.n - params_.b; ++t)
    entries.push_back({Ordinal::natural(own_high + t), one});
  return DirectSumElement(sig_, std::move(entries));
}

MulticubeInstance::Replay MulticubeInstance::replay(
    const std::vector<std::size_t>& pick, std::uint64_t check_sum_below) {
  for (std::size_t i = 0; i < pick.size(); ++i) {
    if (pick[i] >= params_.window)
      throw std::invalid_argument("pick index " + std::to_string(pick[i]) +
                                  " is outside the window");
    if (i > 0 && pick[i - 1] >= pick[i])
      throw std::invalid_argument("pick indices must strictly increase");
  }

  Replay out;
  std::uint64_t c = pick.size();
  std::uint64_t omega = 0;
  for (std::uint64_t j = 0; j < c; ++j)
    omega |= std::uint64_t{1} << (params_.a + params_.b * j);
  out.k = f_->request_fulfillment(
      WitnessRequirement{params_.m, params_.n, omega}, c + 1);

  // Picked members first, then consecutive members after the last pick, so
  // the chosen indices stay strictly increasing.
  std::vector<std::size_t> chosen(pick);
  std::size_t next = pick.empty() ? 0 : pick.back() + 1;
  while (chosen.size() < out.k) {
    if (next >= pool_)
      throw std::logic_error("member pool undersized for k = " +
                             std::to_string(out.k));
    chosen.push_back(next++);
  }

  // Assemble the sum directly: root coordinates collect one contribution
  // per summand, tails and high parts one each.
  std::vector<DirectSumElement::Entry> entries;
  RationalValue one = RationalValue::integer(1);
  RationalValue k_times = RationalValue::integer(mpz_class(out.k));
  for (std::uint64_t i = 0; i < params_.a; ++i)
    entries.push_back({Ordinal::natural(i), k_times});
  for (std::size_t idx : chosen)
    for (std::uint64_t t = 0; t < params_.b; ++t)
      entries.push_back(
          {Ordinal::natural(params_.a + idx * params_.b + t), one});
  for (std::uint64_t i = 0; i < params_.m - params_.a; ++i)
    entries.push_back({Ordinal::natural(boundary_ + i), k_times});
  for (std::size_t idx : chosen) {
    std::uint64_t own_high =
        boundary_ + (params_.m - params_.a) + idx * (params_.n - params_.b);
    for (std::uint64_t t = 0; t < params_.n - params_.b; ++t)
      entries.push_back({Ordinal::natural(own_high + t), one});
  }
  out.sum = DirectSumElement(sig_, std::move(entries));

  if (out.k <= check_sum_below) {
    std::vector<DirectSumElement> terms;
    for (std::size_t idx : chosen) terms.push_back(member(idx));
    if (sum_of(terms) != out.sum)
      throw std::logic_error("direct assembly disagrees with the fold");
  }

  std::vector<Ordinal> expected;
  for (std::size_t idx : pick) expected.push_back(window_[idx]);
  out.expected = FiniteOrdinalSet(std::move(expected));
  out.actual = d_support(*f_, out.sum.support());
  return out;
}

PairBlockInstance make_pr1_instance(std::uint64_t seed) {
  Rng rng(mix_string(seed, "pair-block"));
  PairBlockInstance out;
  out.theta = 2 + rand_below(rng, 7);  // 2..8
  out.chi = 3 + rand_below(rng, 4);    // 3..6
  std::uint64_t eps = rand_below(rng, out.chi - 2);
  out.predicted = rand_below(rng, out.theta);

  std::uint64_t shared = rand_below(rng, 11);  // free part, 0..10
  std::uint64_t own0 = rand_below(rng, 3);
  std::uint64_t own1 = rand_below(rng, 3);
  std::uint64_t block0 = 1 + rand_below(rng, 3);
  std::uint64_t block1 = 1 + rand_below(rng, 3);

  // Consecutive coordinate ranges: roots below blocks, block0 below block1.
  std::uint64_t b0_lo = shared + own0 + own1;
  std::uint64_t b1_lo = b0_lo + block0;
  std::uint64_t total = b1_lo + block1;

  PairTable table;
  for (std::uint64_t i = 0; i < total; ++i) {
    for (std::uint64_t j = i + 1; j < total; ++j) {
      bool cross = i >= b0_lo && i < b1_lo && j >= b1_lo;
      // Off-block first components avoid the predicted colour, so any
      // correct answer proves the maximum landed on a cross pair.
      std::uint64_t decoy =
          (out.predicted + 1 + rand_below(rng, out.theta - 1)) % out.theta;
      std::uint64_t code =
          cross ? pair_encode(out.predicted, eps + 1, out.theta, out.chi)
                : pair_encode(decoy, rand_below(rng, eps + 1), out.theta,
                              out.chi);
      table[{Ordinal::natural(i), Ordinal::natural(j)}] = code;
    }
  }
  out.oracle = make_table_oracle(std::move(table));

  std::vector<Ordinal> x0, x1;
  for (std::uint64_t i = 0; i < shared; ++i) {
    x0.push_back(Ordinal::natural(i));
    x1.push_back(Ordinal::natural(i));
  }
  for (std::uint64_t i = 0; i < own0; ++i)
    x0.push_back(Ordinal::natural(shared + i));
  for (std::uint64_t i = 0; i < own1; ++i)
    x1.push_back(Ordinal::natural(shared + own0 + i));
  for (std::uint64_t i = 0; i < block0; ++i)
    x0.push_back(Ordinal::natural(b0_lo + i));
  for (std::uint64_t i = 0; i < block1; ++i)
    x1.push_back(Ordinal::natural(b1_lo + i));
  out.x0 = FiniteOrdinalSet(std::move(x0));
  out.x1 = FiniteOrdinalSet(std::move(x1));
  return out;
}

OscBlockInstance make_osc_instance(std::uint64_t seed) {
  Rng rng(mix_string(seed, "osc-block"));
  OscBlockInstance out;
  std::uint64_t head_size = 1 + rand_below(rng, 3);
  std::uint64_t tail_size = 1 + rand_below(rng, 3);
  std::uint64_t shared = rand_below(rng, 11);
  std::uint64_t own0 = rand_below(rng, 3);
  std::uint64_t own1 = rand_below(rng, 3);
  std::uint64_t eps = rand_below(rng, 4);
  std::uint64_t iota = rand_below(rng, 4);
  std::uint64_t range = 2 + rand_below(rng, 3);
  std::uint64_t theta = 8;
  out.predicted = rand_below(rng, theta);

  std::vector<std::vector<std::uint64_t>> base(head_size);
  std::uint64_t top = 0;
  for (auto& row : base) {
    for (std::uint64_t j = 0; j < tail_size; ++j) {
      row.push_back(eps + 1 + rand_below(rng, 6));
      top = std::max(top, row.back());
    }
  }

  // Least shift of at least eps+1 whose sum with the block maximum has
  // 2-adic valuation exactly iota; exists within 2^(iota+1) steps.
  std::uint64_t shift = eps + 1;
  while (static_cast<std::uint64_t>(std::countr_zero(top + shift)) != iota) {
    ++shift;
    if (shift > eps + 1 + 64)
      throw std::logic_error("no shift with the requested valuation");
  }

  std::uint64_t next = shared + own0 + own1;
  std::vector<Ordinal> head;
  for (std::uint64_t i = 0; i < head_size; ++i)
    head.push_back(Ordinal::natural(next++));
  std::vector<std::vector<Ordinal>> tails(shift + 1);
  for (auto& tail : tails)
    for (std::uint64_t j = 0; j < tail_size; ++j)
      tail.push_back(Ordinal::natural(next++));

  out.oracle = make_synthetic_osc(head, tails, base, eps, rng());

  std::vector<Ordinal> x0, x1;
  for (std::uint64_t i = 0; i < shared; ++i) {
    x0.push_back(Ordinal::natural(i));
    x1.push_back(Ordinal::natural(i));
  }
  for (std::uint64_t i = 0; i < own0; ++i)
    x0.push_back(Ordinal::natural(shared + i));
  for (std::uint64_t i = 0; i < own1; ++i)
    x1.push_back(Ordinal::natural(shared + own0 + i));
  for (const Ordinal& h : head) x0.push_back(h);
  for (const Ordinal& t : tails[shift]) x1.push_back(t);
  out.x0 = FiniteOrdinalSet(std::move(x0));
  out.x1 = FiniteOrdinalSet(std::move(x1));

  FiniteOrdinalSet universe = set_union(out.x0, out.x1);
  out.config.universe = universe.elements();
  out.config.value_range = range;
  for (std::size_t i = 0; i < out.config.universe.size(); ++i) {
    std::vector<std::uint64_t> row;
    // Decoy cells avoid the predicted colour, so any correct answer proves
    // the lookup went through the designated head cell.
    for (std::uint64_t t = 0; t < range; ++t)
      row.push_back((out.predicted + 1 + rand_below(rng, theta - 1)) % theta);
    out.config.psi.push_back(std::move(row));
  }
  // The maximizing pair of any sandwich set starts at a head member, and
  // the maximum top+shift has valuation iota, so pin psi there.
  for (const Ordinal& h : head) {
    std::size_t pos = sigma_inverse(universe, h);
    out.config.psi[pos][dense_family_value(out.config, iota, h)] =
        out.predicted;
  }
  return out;
}

std::uint64_t count_sandwich_mismatches(
    const FiniteOrdinalSet& x0, const FiniteOrdinalSet& x1,
    std::uint64_t predicted,
    const std::function<std::uint64_t(const FiniteOrdinalSet&)>& colour) {
  if (!colour) throw std::invalid_argument("the colour callback is null");
  FiniteOrdinalSet core = set_symmetric_difference(x0, x1);
  FiniteOrdinalSet shared = set_intersection(x0, x1);
  if (shared.size() > kSandwichIntersectionLimit)
    throw resource_error("sandwich family too large: " +
                         std::to_string(shared.size()) +
                         " shared elements exceed the limit of " +
                         std::to_string(kSandwichIntersectionLimit));
  const std::vector<Ordinal>& free_elems = shared.elements();
  std::uint64_t mismatches = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_elems.size());
       ++mask) {
    std::vector<Ordinal> z = core.elements();
    for (std::size_t i = 0; i < free_elems.size(); ++i)
      if ((mask >> i) & 1) z.push_back(free_elems[i]);
    if (colour(FiniteOrdinalSet(std::move(z))) != predicted) ++mismatches;
  }
  return mismatches;
}

}  // namespace fsr
