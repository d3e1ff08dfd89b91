#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fsr/colouring.hpp"
#include "fsr/errors.hpp"
#include "fsr/ordinal.hpp"
#include "fsr/pair_oracle.hpp"
#include "fsr/rng.hpp"
#include "fsr/witness.hpp"

using namespace fsr;

namespace {

FiniteOrdinalSet nat_set(std::initializer_list<std::uint64_t> ns) {
  return FiniteOrdinalSet::naturals(ns);
}

SetColouring cardinality_colouring() {
  return SetColouring{1024, [](const FiniteOrdinalSet& s) {
                        return static_cast<std::uint64_t>(s.size());
                      }};
}

SetColouring constant_colouring(std::uint64_t space, std::uint64_t value) {
  return SetColouring{space,
                      [value](const FiniteOrdinalSet&) { return value; }};
}

}  // namespace

TEST_CASE("colourings enforce their declared space") {
  SetColouring bad{2, [](const FiniteOrdinalSet&) { return std::uint64_t{7}; }};
  CHECK_THROWS_AS(bad.evaluate(nat_set({1})), std::logic_error);
  SetColouring empty_eval;
  CHECK_THROWS_AS(empty_eval.evaluate(nat_set({})), std::invalid_argument);
}

TEST_CASE("support colouring reads the witness table through the enumeration") {
  WitnessF f;
  CHECK(d_support(f, FiniteOrdinalSet()) == FiniteOrdinalSet());

  // Pin f(3) = {0, 2} on a fresh scheduler: the first request lands at the
  // least admissible position, which is 3 itself.
  WitnessF g;
  std::uint64_t k = g.request_fulfillment(WitnessRequirement{3, 1, 0b101});
  REQUIRE(k == 0);
  REQUIRE(g.eval_mask(3) == 0b101);
  FiniteOrdinalSet s{Ordinal::omega(), Ordinal::parse("w+1"),
                     Ordinal::parse("w^2")};
  FiniteOrdinalSet expect{Ordinal::omega(), Ordinal::parse("w^2")};
  CHECK(d_support(g, s) == expect);

  // Any size whose table entry is empty maps to the empty set.
  WitnessF h;
  h.eval_mask(100);
  for (std::uint64_t size = 1; size <= 10; ++size) {
    if (h.eval_mask(size) != 0) continue;
    std::vector<Ordinal> elems;
    for (std::uint64_t i = 0; i < size; ++i)
      elems.push_back(Ordinal::natural(i * 3));
    CHECK(d_support(h, FiniteOrdinalSet(elems)).empty());
  }
}

TEST_CASE("injected mask evaluators are range checked") {
  auto f = [](std::uint64_t) { return std::uint64_t{0b101}; };
  CHECK(d_support(f, nat_set({4, 7, 9})) == nat_set({4, 9}));
  CHECK_THROWS_AS(d_support(f, nat_set({4, 7})), std::invalid_argument);
  CHECK_THROWS_AS(
      d_support(std::function<std::uint64_t(std::uint64_t)>(), nat_set({})),
      std::invalid_argument);
}

TEST_CASE("enumeration images of sets beyond 64 elements stay exact") {
  // The mask has no bits past 63; positions beyond that must never be
  // selected, whatever the set size.
  std::vector<Ordinal> wide;
  for (std::uint64_t i = 0; i < 70; ++i) wide.push_back(Ordinal::natural(i));
  FiniteOrdinalSet s(wide);
  CHECK(enumeration_image(0b110, s) == nat_set({1, 2}));
  CHECK(enumeration_image(0, s).empty());
  CHECK(enumeration_image(std::uint64_t{1} << 63, s) == nat_set({63}));
}

TEST_CASE("log parity colour classes") {
  CHECK(log_parity(nat_set({}), 2) == 0);
  CHECK(log_parity(nat_set({5}), 2) == 0);
  CHECK(log_parity(nat_set({1, 2}), 2) == 1);
  CHECK(log_parity(nat_set({1, 2, 3}), 2) == 1);
  CHECK(log_parity(nat_set({1, 2, 3, 4}), 2) == 0);
  CHECK(log_parity(nat_set({1, 2, 3, 4, 5}), 2) == 0);
  CHECK(log_parity(nat_set({1, 2, 3, 4, 5, 6, 7, 8}), 3) == 0);
  CHECK(log_parity(nat_set({1, 2, 3, 4, 5, 6, 7, 8}), 2) == 1);
  CHECK_THROWS_AS(log_parity(nat_set({1}), 0), std::invalid_argument);
  SetColouring c = make_log_parity_colouring(2);
  CHECK(c.colour_space == 2);
  CHECK(c.evaluate(nat_set({3, 4, 5})) == 1);
}

TEST_CASE("composition with a witness function colours elements") {
  auto sig = make_signature(
      {{Ordinal::natural(0), GroupSignature::Kind::rational, 0},
       {Ordinal::natural(1), GroupSignature::Kind::rational, 0}});
  DirectSumElement x(sig, {{Ordinal::natural(0), RationalValue::integer(1)},
                           {Ordinal::natural(1), RationalValue::integer(1)}});

  auto f = std::make_shared<WitnessF>();
  std::uint64_t k = f->request_fulfillment(WitnessRequirement{2, 1, 0b1});
  REQUIRE(k == 0);  // f(2) = {0}

  SetColouring card_mod2{
      2, [](const FiniteOrdinalSet& s) { return std::uint64_t{s.size() % 2}; }};
  ElementColouring c = compose(card_mod2, f);
  CHECK(c.colour_space == 2);
  CHECK(c.evaluate(x) == 1);  // d_support(x) = {0}, odd size

  SetColouring member0{2, [](const FiniteOrdinalSet& s) {
                         return std::uint64_t{
                             s.contains(Ordinal::natural(0)) ? 1u : 0u};
                       }};
  CHECK(compose(member0, f).evaluate(x) == 1);

  ElementColouring constant = compose(constant_colouring(6, 5), f);
  CHECK(constant.colour_space == 6);
  CHECK(constant.evaluate(x) == 5);
  DirectSumElement zero(sig);
  CHECK(constant.evaluate(zero) == 5);

  CHECK_THROWS_AS(compose(card_mod2, nullptr), std::invalid_argument);
}

TEST_CASE("sandwich values enumerate exactly the squeezed sets") {
  SetColouring card = cardinality_colouring();
  CHECK(sandwich_values(card, nat_set({1, 2}), nat_set({2, 3})) ==
        std::set<std::uint64_t>{2, 3});
  CHECK(sandwich_values(card, nat_set({1}), nat_set({2})) ==
        std::set<std::uint64_t>{2});
  CHECK(sandwich_values(card, nat_set({1, 2}), nat_set({1, 2})) ==
        std::set<std::uint64_t>{0, 1, 2});

  std::vector<Ordinal> big;
  for (std::uint64_t i = 0; i < 21; ++i) big.push_back(Ordinal::natural(i));
  FiniteOrdinalSet huge(big);
  CHECK_THROWS_AS(sandwich_values(card, huge, huge), resource_error);
}

TEST_CASE("pair axiom checker") {
  SetColouring card = cardinality_colouring();
  CHECK_FALSE(check_axiom_pair(card, nat_set({1, 2}), nat_set({2, 3}), 2));
  CHECK(check_axiom_pair(constant_colouring(9, 4), nat_set({1, 2}),
                         nat_set({2, 3}), 4));
  CHECK(check_axiom_pair(card, nat_set({1}), nat_set({2}), 2));
  CHECK_THROWS_AS(check_axiom_pair(card, nat_set({1}), nat_set({1}), 1),
                  std::invalid_argument);
}

TEST_CASE("star axiom instance search") {
  SetColouring card = cardinality_colouring();
  SetColouring constant = constant_colouring(8, 3);

  SetFamily f0({nat_set({0}), nat_set({5})});
  SetFamily f1({nat_set({3}), nat_set({7})});
  auto w = check_axiom_star_instance(constant, {f0, f1}, 3);
  REQUIRE(w.has_value());
  CHECK(w->indices == std::vector<std::size_t>{0, 0});
  CHECK(w->tuple[0] == nat_set({0}));
  CHECK(w->tuple[1] == nat_set({3}));

  // Tuples failing the increasing-maxima filter are skipped.
  SetFamily g0({nat_set({5}), nat_set({1})});
  SetFamily g1({nat_set({3})});
  auto w2 = check_axiom_star_instance(constant, {g0, g1}, 3);
  REQUIRE(w2.has_value());
  CHECK(w2->indices == std::vector<std::size_t>{1, 0});

  // Singleton families with cardinality: the only sandwich set is the full
  // union of the two picks.
  auto w3 = check_axiom_star_instance(
      card, {SetFamily({nat_set({2})}), SetFamily({nat_set({6})})}, 2);
  REQUIRE(w3.has_value());

  // Overlapping picks leave a free middle element, so cardinality cannot be
  // constant across the sandwich.
  auto w4 = check_axiom_star_instance(
      card, {SetFamily({nat_set({1, 2})}), SetFamily({nat_set({2, 3})})}, 2);
  CHECK_FALSE(w4.has_value());

  // Colours outside the space never have witnesses.
  CHECK_FALSE(
      check_axiom_star_instance(constant, {f0, f1}, 8).has_value());

  // Empty picks cannot satisfy the maxima condition and are skipped.
  SetFamily h0({nat_set({}), nat_set({1})});
  auto w5 = check_axiom_star_instance(constant, {h0, g1}, 3);
  REQUIRE(w5.has_value());
  CHECK(w5->indices == std::vector<std::size_t>{1, 0});

  CHECK_THROWS_AS(check_axiom_star_instance(constant, {f0}, 3),
                  std::invalid_argument);
  SetFamily no_members((std::vector<FiniteOrdinalSet>()));
  CHECK_THROWS_AS(check_axiom_star_instance(constant, {f0, no_members}, 3),
                  std::invalid_argument);
}

TEST_CASE("rectangle pairing walks anti-diagonals") {
  CHECK(pair_decode(0, 3, 2) == std::make_pair(std::uint64_t{0}, std::uint64_t{0}));
  CHECK(pair_decode(1, 3, 2) == std::make_pair(std::uint64_t{0}, std::uint64_t{1}));
  CHECK(pair_decode(2, 3, 2) == std::make_pair(std::uint64_t{1}, std::uint64_t{0}));
  CHECK(pair_decode(3, 3, 2) == std::make_pair(std::uint64_t{1}, std::uint64_t{1}));
  CHECK(pair_decode(4, 3, 2) == std::make_pair(std::uint64_t{2}, std::uint64_t{0}));
  CHECK(pair_decode(5, 3, 2) == std::make_pair(std::uint64_t{2}, std::uint64_t{1}));

  for (std::uint64_t theta : {1ull, 2ull, 5ull, 7ull})
    for (std::uint64_t chi : {1ull, 3ull, 5ull}) {
      for (std::uint64_t code = 0; code < theta * chi; ++code) {
        auto [c0, c1] = pair_decode(code, theta, chi);
        CHECK(c0 < theta);
        CHECK(c1 < chi);
        CHECK(pair_encode(c0, c1, theta, chi) == code);
      }
    }

  CHECK_THROWS_AS(pair_decode(6, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(pair_encode(3, 0, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(pair_encode(0, 0, 0, 2), std::invalid_argument);
}

TEST_CASE("first-projection colouring picks the least maximizing pair") {
  const std::uint64_t theta = 4;
  const std::uint64_t chi = 2;
  PairTable table;
  auto put = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c0,
                 std::uint64_t c1) {
    table[{Ordinal::natural(a), Ordinal::natural(b)}] =
        pair_encode(c0, c1, theta, chi);
  };
  put(0, 1, 3, 0);
  put(0, 2, 2, 1);
  put(1, 2, 1, 1);
  PairOracle c = make_table_oracle(table);

  CHECK(d_from_pr1(c, theta, chi, nat_set({0, 1, 2})) == 2);
  CHECK(d_from_pr1(c, theta, chi, nat_set({})) == 0);
  CHECK(d_from_pr1(c, theta, chi, nat_set({0})) == 0);

  // All second components equal: the least pair wins.
  PairTable flat;
  flat[{Ordinal::natural(0), Ordinal::natural(1)}] = pair_encode(3, 1, theta, chi);
  flat[{Ordinal::natural(0), Ordinal::natural(2)}] = pair_encode(2, 1, theta, chi);
  flat[{Ordinal::natural(1), Ordinal::natural(2)}] = pair_encode(1, 1, theta, chi);
  CHECK(d_from_pr1(make_table_oracle(flat), theta, chi, nat_set({0, 1, 2})) == 3);

  // Missing pairs are a domain error; the result always stays below theta.
  CHECK_THROWS_AS(d_from_pr1(c, theta, chi, nat_set({0, 1, 2, 3})),
                  std::domain_error);
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    PairOracle seeded = make_seeded_oracle(rng(), theta * chi);
    std::vector<Ordinal> elems;
    std::uint64_t n = 2 + rand_below(rng, 5);
    for (std::uint64_t i = 0; i < n; ++i)
      elems.push_back(Ordinal::natural(rand_below(rng, 50)));
    CHECK(d_from_pr1(seeded, theta, chi, FiniteOrdinalSet(elems)) < theta);
  }
}

TEST_CASE("oscillation colouring follows valuation and surjection tables") {
  OscConfig config;
  for (std::uint64_t i : {0ull, 1ull, 2ull, 3ull})
    config.universe.push_back(Ordinal::natural(i));
  config.value_range = 4;
  config.psi = {{5, 6, 7, 8}, {0, 1, 0, 1}, {0, 1, 2, 0}, {0, 1, 2, 3}};

  auto osc_pair = [&](std::uint64_t value) {
    PairTable t;
    t[{Ordinal::natural(0), Ordinal::natural(3)}] = value;
    return make_table_oracle(t);
  };
  FiniteOrdinalSet z = nat_set({0, 3});
  // Value 12 has 2-adic valuation 2; the dense family member 2 sends the
  // least universe member to digit 0 of 2 in base 4, which is 2.
  CHECK(d_osc(osc_pair(12), config, z) == 7);
  CHECK(d_osc(osc_pair(13), config, z) == 5);  // odd: iota 0, digit 0
  CHECK(d_osc(osc_pair(8), config, z) == 8);   // valuation 3
  CHECK(d_osc(osc_pair(0), config, z) == 5);   // value 0 reads iota 0

  CHECK(d_osc(osc_pair(12), config, nat_set({})) == 0);
  CHECK(d_osc(osc_pair(12), config, nat_set({3})) == 0);

  // Argmax with a tie: the least pair is used, its first element indexes
  // the surjection family.
  PairTable t;
  t[{Ordinal::natural(0), Ordinal::natural(1)}] = 4;
  t[{Ordinal::natural(0), Ordinal::natural(2)}] = 6;
  t[{Ordinal::natural(1), Ordinal::natural(2)}] = 6;
  // Least argmax pair (0, 2): valuation of 6 is 1, digit 0 of 1 is 1.
  CHECK(d_osc(make_table_oracle(t), config, nat_set({0, 1, 2})) == 6);

  CHECK_THROWS_AS(d_osc(osc_pair(1), config, nat_set({0, 9})),
                  std::domain_error);

  OscConfig broken = config;
  broken.psi.pop_back();
  CHECK_THROWS_AS(d_osc(osc_pair(1), broken, z), std::invalid_argument);
}

TEST_CASE("default oscillation config builds modular surjections") {
  std::vector<Ordinal> universe;
  for (std::uint64_t i = 0; i < 5; ++i)
    universe.push_back(Ordinal::natural(i));
  OscConfig config = make_default_osc_config(universe, 5);
  CHECK(config.psi[0] == std::vector<std::uint64_t>{0, 0, 0, 0, 0});
  CHECK(config.psi[1] == std::vector<std::uint64_t>{0, 0, 0, 0, 0});
  CHECK(config.psi[3] == std::vector<std::uint64_t>{0, 1, 2, 0, 1});
  // Each table at position i >= 1 covers {0..i-1}.
  for (std::size_t i = 1; i < config.psi.size(); ++i) {
    std::set<std::uint64_t> image(config.psi[i].begin(), config.psi[i].end());
    CHECK(image.size() == i);
  }
}

TEST_CASE("the dense family enumerates every function and repeats") {
  std::vector<Ordinal> universe = {Ordinal::natural(0), Ordinal::natural(1),
                                   Ordinal::natural(2)};
  OscConfig config = make_default_osc_config(universe, 2);
  std::set<std::vector<std::uint64_t>> seen;
  for (std::uint64_t iota = 0; iota < 8; ++iota) {
    std::vector<std::uint64_t> graph;
    for (const Ordinal& a : universe)
      graph.push_back(dense_family_value(config, iota, a));
    seen.insert(graph);
  }
  CHECK(seen.size() == 8);
  for (const Ordinal& a : universe)
    CHECK(dense_family_value(config, 8, a) ==
          dense_family_value(config, 0, a));

  OscConfig huge = make_default_osc_config(universe, 4);
  for (int i = 0; i < 40; ++i)
    huge.universe.push_back(Ordinal::natural(100 + i));
  huge.psi.assign(huge.universe.size(), std::vector<std::uint64_t>(4, 0));
  CHECK_THROWS_AS(dense_family_value(huge, 0, Ordinal::natural(0)),
                  resource_error);
}

TEST_CASE("synthetic oscillation oracles realize the shift identity") {
  std::vector<Ordinal> a = {Ordinal::natural(0), Ordinal::natural(1)};
  std::vector<std::vector<Ordinal>> tails;
  for (std::uint64_t m = 0; m < 4; ++m)
    tails.push_back({Ordinal::natural(10 + 10 * m), Ordinal::natural(11 + 10 * m)});
  std::vector<std::vector<std::uint64_t>> base = {{8, 9}, {10, 11}};
  PairOracle osc = make_synthetic_osc(a, tails, base, 3, 77);
  CHECK(osc.kind == OracleKind::synthetic_oscillation);

  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t m = 0; m < tails.size(); ++m)
      for (std::size_t j = 0; j < tails[m].size(); ++j)
        CHECK(osc.evaluate(a[i], tails[m][j]) ==
              osc.evaluate(a[i], tails[0][j]) + m);

  // Off-block pairs stay at or below the ceiling; reversed designated
  // pairs count as off-block.
  CHECK(osc.evaluate(tails[0][0], tails[1][0]) <= 3);
  CHECK(osc.evaluate(a[0], a[1]) <= 3);
  CHECK(osc.evaluate(tails[0][0], a[0]) <= 3);
  CHECK(osc.evaluate(Ordinal::natural(999), a[0]) <= 3);

  // Same parameters, same oracle bytes; different seed may differ off-block
  // but never on-block.
  PairOracle again = make_synthetic_osc(a, tails, base, 3, 78);
  CHECK(again.evaluate(a[1], tails[2][1]) == osc.evaluate(a[1], tails[2][1]));

  CHECK_THROWS_WITH_AS(
      make_synthetic_osc(a, {{Ordinal::natural(10)}, {Ordinal::natural(10)}},
                         {{7}, {7}}, 3, 1),
      "overlapping blocks", std::invalid_argument);
  CHECK_THROWS_AS(make_synthetic_osc(a, {{Ordinal::natural(5)}},
                                     {{2}, {2}}, 3, 1),
                  std::invalid_argument);  // base below the ceiling
  CHECK_THROWS_AS(
      make_synthetic_osc({Ordinal::natural(20)}, {{Ordinal::natural(5)}},
                         {{9}}, 3, 1),
      std::invalid_argument);  // head after tail
}

TEST_CASE("entangled instances rank pairs by string disagreement") {
  auto member = [](std::vector<std::uint64_t> l, std::string g) {
    return EntangledMember{std::move(l), std::move(g)};
  };
  EntangledInstance e = make_entangled_instance(
      9, {{Ordinal::natural(0), member({5, 0, 8}, "000")},
          {Ordinal::natural(1), member({1, 3, 7}, "001")},
          {Ordinal::natural(2), member({2, 4, 6}, "011")}});

  CHECK(entangled_delta(e, Ordinal::natural(0), Ordinal::natural(1)) == 2);
  CHECK(entangled_delta(e, Ordinal::natural(0), Ordinal::natural(2)) == 1);
  CHECK(entangled_delta(e, Ordinal::natural(1), Ordinal::natural(2)) == 1);

  // Unique argmax pair (0, 1); the least coordinate where member 0 sits
  // before member 1 is coordinate 1 (0 < 3).
  CHECK(d_entangled(e, nat_set({0, 1, 2})) == 1);
  CHECK(d_entangled(e, nat_set({})) == 0);
  CHECK(d_entangled(e, nat_set({2})) == 0);
  CHECK_THROWS_AS(d_entangled(e, nat_set({0, 7})), std::domain_error);

  // A pair whose first member never precedes the second contributes 0.
  EntangledInstance rev = make_entangled_instance(
      6, {{Ordinal::natural(0), member({3, 4, 5}, "10")},
          {Ordinal::natural(1), member({0, 1, 2}, "01")}});
  CHECK(d_entangled(rev, nat_set({0, 1})) == 0);

  CHECK_THROWS_AS(
      make_entangled_instance(
          9, {{Ordinal::natural(0), member({0, 1}, "00")},
              {Ordinal::natural(1), member({1, 2}, "01")}}),
      std::invalid_argument);  // shared position
  CHECK_THROWS_AS(
      make_entangled_instance(
          9, {{Ordinal::natural(0), member({0, 1}, "00")},
              {Ordinal::natural(1), member({2, 3}, "00")}}),
      std::invalid_argument);  // duplicate strings
  CHECK_THROWS_AS(
      make_entangled_instance(
          9, {{Ordinal::natural(0), member({0, 1}, "00")},
              {Ordinal::natural(1), member({2, 3}, "012")}}),
      std::invalid_argument);  // length mismatch and bad characters
  CHECK_THROWS_AS(
      make_entangled_instance(
          2, {{Ordinal::natural(0), member({0, 5}, "00")},
              {Ordinal::natural(1), member({1}, "01")}}),
      std::invalid_argument);  // position outside the order
}

TEST_CASE("pair colourings derived from set colourings") {
  SetColouring card = cardinality_colouring();
  PairOracle c = derive_pair_colouring(card);
  CHECK(c.evaluate(Ordinal::natural(3), Ordinal::natural(9)) == 2);

  SetColouring min_parity{
      2, [](const FiniteOrdinalSet& s) {
        return s.empty() ? std::uint64_t{0}
                         : s.min().natural_value() % 2;
      }};
  PairOracle mp = derive_pair_colouring(min_parity);
  CHECK(mp.evaluate(Ordinal::natural(2), Ordinal::natural(5)) == 0);
  CHECK(mp.evaluate(Ordinal::natural(5), Ordinal::natural(2)) == 0);

  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    std::uint64_t x = rand_below(rng, 40);
    std::uint64_t y = rand_below(rng, 40);
    if (x == y) continue;
    CHECK(c.evaluate(Ordinal::natural(x), Ordinal::natural(y)) ==
          card.evaluate(nat_set({x, y})));
  }
}
