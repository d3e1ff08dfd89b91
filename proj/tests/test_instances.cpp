#include "fsr/instances.hpp"

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fsr/colouring.hpp"
#include "fsr/condense.hpp"
#include "fsr/errors.hpp"
#include "fsr/rng.hpp"

using namespace fsr;

TEST_CASE("support chain instances satisfy both halves of the squeeze") {
  Rng rng(401);
  for (int trial = 0; trial < 200; ++trial) {
    SupportChainInstance inst = make_support_chain_instance(rng);
    REQUIRE_FALSE(inst.elements.empty());
    SupportChainCheck chk = check_support_chain(inst);
    CHECK(chk.hypothesis_ok);
    CHECK(chk.chain_ok);
  }
}

TEST_CASE("root cancellation shrinks the sum support but keeps the chain") {
  // Two elements with opposite values on a shared root coordinate: the sum
  // loses the root but the squeeze still holds.
  std::vector<GroupSignature::Coordinate> coords;
  for (std::uint64_t i = 0; i < 3; ++i)
    coords.push_back({Ordinal::natural(i), GroupSignature::Kind::rational, 0});
  SignaturePtr sig = make_signature(coords);

  SupportChainInstance inst;
  inst.root = FiniteOrdinalSet({Ordinal::natural(0)});
  inst.elements.push_back(DirectSumElement(
      sig, {{Ordinal::natural(0), RationalValue::integer(1)},
            {Ordinal::natural(1), RationalValue::integer(1)}}));
  inst.elements.push_back(DirectSumElement(
      sig, {{Ordinal::natural(0), RationalValue::integer(-1)},
            {Ordinal::natural(2), RationalValue::integer(1)}}));

  SupportChainCheck chk = check_support_chain(inst);
  CHECK(chk.hypothesis_ok);
  CHECK(chk.chain_ok);
  CHECK(sum_of(inst.elements).support() ==
        FiniteOrdinalSet({Ordinal::natural(1), Ordinal::natural(2)}));
}

TEST_CASE("a stray tail overlap fails the hypothesis") {
  std::vector<GroupSignature::Coordinate> coords;
  for (std::uint64_t i = 0; i < 2; ++i)
    coords.push_back({Ordinal::natural(i), GroupSignature::Kind::rational, 0});
  SignaturePtr sig = make_signature(coords);

  SupportChainInstance inst;  // empty root, both elements share coordinate 1
  inst.elements.push_back(DirectSumElement(
      sig, {{Ordinal::natural(1), RationalValue::integer(1)}}));
  inst.elements.push_back(DirectSumElement(
      sig, {{Ordinal::natural(1), RationalValue::integer(2)}}));
  SupportChainCheck chk = check_support_chain(inst);
  CHECK_FALSE(chk.hypothesis_ok);
  CHECK_FALSE(chk.chain_ok);
}

TEST_CASE("condensation inputs survive the pipeline at the suggested target") {
  Rng rng(402);
  for (std::size_t size : {8, 12, 17, 24, 33, 48, 64}) {
    std::vector<DirectSumElement> x = make_condensation_input(rng, size);
    REQUIRE(x.size() == size);
    std::size_t target = suggested_condensation_target(size);
    CondensationResult r = condense(x, target, rng());
    REQUIRE_MESSAGE(r.ok, r.shortfall);
    CHECK(r.outputs.size() == target);
    CondensationCheck chk = verify_condensation(x, r.outputs, r.certificate);
    CHECK_MESSAGE(chk.ok, chk.failure);
  }
  CHECK_THROWS_AS(make_condensation_input(rng, 1), std::invalid_argument);
  CHECK(suggested_condensation_target(2) == 1);
  CHECK(suggested_condensation_target(64) == 16);
}

TEST_CASE("multicube replays reproduce their targets") {
  auto f = std::make_shared<WitnessF>();
  MulticubeInstance inst({2, 2, 3, 3, 5}, f);
  CHECK(inst.window_minima().size() == 5);
  CHECK(inst.pool_size() > 5);

  // Window minima sit at a + b*i.
  for (std::size_t i = 0; i < 5; ++i)
    CHECK(inst.window_minima()[i] == Ordinal::natural(2 + 2 * i));

  std::vector<std::vector<std::size_t>> picks = {
      {}, {0}, {4}, {1, 3}, {0, 2, 4}, {0, 1, 2, 3, 4}};
  for (const auto& pick : picks) {
    auto rep = inst.replay(pick);
    CHECK_MESSAGE(rep.match(), "pick size " << pick.size());
    CHECK(rep.k >= pick.size() + 1);
    CHECK(rep.expected.size() == pick.size());
    // |supp| = m + n*k with every coordinate nonzero.
    CHECK(rep.sum.support().size() == 3 + 3 * rep.k);
  }

  // Replays are stable: the scheduler hands back the same k every time.
  auto first = inst.replay({1, 2});
  auto second = inst.replay({1, 2});
  CHECK(first.k == second.k);
  CHECK(first.sum == second.sum);

  CHECK_THROWS_AS(inst.replay({5}), std::invalid_argument);
  CHECK_THROWS_AS(inst.replay({2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(inst.replay({3, 1}), std::invalid_argument);
}

TEST_CASE("multicube instances share one scheduler without interference") {
  auto f = std::make_shared<WitnessF>();
  MulticubeInstance one({1, 1, 2, 2, 4}, f);
  MulticubeInstance two({1, 2, 3, 2, 4}, f);
  for (std::uint64_t mask = 0; mask < 16; ++mask) {
    std::vector<std::size_t> pick;
    for (std::size_t i = 0; i < 4; ++i)
      if ((mask >> i) & 1) pick.push_back(i);
    CHECK(one.replay(pick).match());
    CHECK(two.replay(pick).match());
  }
}

TEST_CASE("multicube parameters are validated") {
  auto f = std::make_shared<WitnessF>();
  CHECK_THROWS_AS(MulticubeInstance({1, 1, 1, 1, 4}, nullptr),
                  std::invalid_argument);
  CHECK_THROWS_AS(MulticubeInstance({1, 0, 1, 1, 4}, f),
                  std::invalid_argument);
  CHECK_THROWS_AS(MulticubeInstance({1, 3, 1, 2, 4}, f),
                  std::invalid_argument);
  CHECK_THROWS_AS(MulticubeInstance({3, 1, 2, 1, 4}, f),
                  std::invalid_argument);
  CHECK_THROWS_AS(MulticubeInstance({1, 1, 2, 1, 0}, f),
                  std::invalid_argument);
  // Targets must stay inside the 64-bit mask.
  CHECK_THROWS_AS(MulticubeInstance({60, 1, 60, 1, 5}, f),
                  std::invalid_argument);
}

TEST_CASE("rectangle block instances colour every sandwich as predicted") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    PairBlockInstance inst = make_pr1_instance(seed);
    REQUIRE(inst.theta >= 2);
    REQUIRE(inst.predicted < inst.theta);
    REQUIRE(set_intersection(inst.x0, inst.x1).size() <= 10);
    auto colour = [&](const FiniteOrdinalSet& z) {
      return d_from_pr1(inst.oracle, inst.theta, inst.chi, z);
    };
    CHECK(count_sandwich_mismatches(inst.x0, inst.x1, inst.predicted,
                                    colour) == 0);
  }
}

TEST_CASE("oscillation block instances colour every sandwich as predicted") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    OscBlockInstance inst = make_osc_instance(seed);
    REQUIRE(inst.predicted < 8);
    REQUIRE(set_intersection(inst.x0, inst.x1).size() <= 10);
    auto colour = [&](const FiniteOrdinalSet& z) {
      return d_osc(inst.oracle, inst.config, z);
    };
    CHECK(count_sandwich_mismatches(inst.x0, inst.x1, inst.predicted,
                                    colour) == 0);
  }
}

TEST_CASE("sandwich counting is exhaustive over the intersection") {
  FiniteOrdinalSet x0({Ordinal::natural(0), Ordinal::natural(1),
                       Ordinal::natural(2)});
  FiniteOrdinalSet x1({Ordinal::natural(1), Ordinal::natural(2),
                       Ordinal::natural(3)});
  auto constant = [](const FiniteOrdinalSet&) { return std::uint64_t{7}; };
  // Two shared elements give four sandwich sets.
  CHECK(count_sandwich_mismatches(x0, x1, 7, constant) == 0);
  CHECK(count_sandwich_mismatches(x0, x1, 3, constant) == 4);

  auto parity = [](const FiniteOrdinalSet& z) {
    return std::uint64_t{z.size() % 2};
  };
  // Core size 2; sandwiches of sizes 2, 3, 3, 4: two odd ones mismatch 0.
  CHECK(count_sandwich_mismatches(x0, x1, 0, parity) == 2);

  CHECK_THROWS_AS(count_sandwich_mismatches(x0, x1, 0, nullptr),
                  std::invalid_argument);

  std::vector<Ordinal> wide;
  for (std::uint64_t i = 0; i < 21; ++i) wide.push_back(Ordinal::natural(i));
  FiniteOrdinalSet big(wide);
  CHECK_THROWS_AS(count_sandwich_mismatches(big, big, 0, constant),
                  resource_error);
}
