#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "fsr/ordinal.hpp"
#include "fsr/ordinal_set.hpp"
#include "fsr/rng.hpp"

using fsr::FiniteOrdinalSet;
using fsr::Ordinal;

namespace {

Ordinal nat(std::uint64_t n) { return Ordinal::natural(n); }
Ordinal w() { return Ordinal::omega(); }
Ordinal o(const std::string& s) { return Ordinal::parse(s); }

// Random CNF ordinal of nesting depth <= depth.
Ordinal random_ordinal(fsr::Rng& rng, int depth) {
  if (depth <= 1 || fsr::rand_below(rng, 3) == 0) {
    return nat(fsr::rand_below(rng, 6));
  }
  std::vector<Ordinal> exps;
  std::size_t nterms = 1 + fsr::rand_below(rng, 3);
  for (std::size_t i = 0; i < nterms; ++i) {
    exps.push_back(random_ordinal(rng, depth - 1));
  }
  FiniteOrdinalSet distinct{std::vector<Ordinal>(exps.begin(), exps.end())};
  std::vector<Ordinal::Term> terms;
  for (std::size_t i = distinct.size(); i > 0; --i) {
    terms.push_back(Ordinal::Term{distinct.elements()[i - 1],
                                  1 + fsr::rand_below(rng, 5)});
  }
  return Ordinal::from_terms(std::move(terms));
}

}  // namespace

TEST_CASE("comparison matches the frozen examples") {
  CHECK(fsr::cmp(nat(0), nat(1)) == -1);
  CHECK(fsr::cmp(nat(1), w()) == -1);
  CHECK(fsr::cmp(o("w+1"), o("w*2")) == -1);
  CHECK(fsr::cmp(o("w^w"), o("w*5")) == 1);
  CHECK(fsr::cmp(o("w^2+w"), o("w^2+w")) == 0);
  CHECK(fsr::cmp(o("w^2"), o("w^2+1")) == -1);
  CHECK(fsr::cmp(o("w^(w+1)"), o("w^w*9+5")) == 1);
}

TEST_CASE("comparison is a total order on random triples") {
  fsr::Rng rng(20260819u);
  for (int trial = 0; trial < 10000; ++trial) {
    Ordinal a = random_ordinal(rng, 3);
    Ordinal b = random_ordinal(rng, 3);
    Ordinal c = random_ordinal(rng, 3);
    CHECK(fsr::cmp(a, a) == 0);
    CHECK(fsr::cmp(a, b) == -fsr::cmp(b, a));
    if (a <= b && b <= c) CHECK(a <= c);
    if (fsr::cmp(a, b) == 0) CHECK(a.to_string() == b.to_string());
  }
}

TEST_CASE("addition absorbs and merges") {
  CHECK(fsr::add(nat(1), w()) == w());
  CHECK(fsr::add(w(), nat(1)) == o("w+1"));
  CHECK(fsr::add(o("w+3"), o("w*2")) == o("w*3"));
  CHECK(fsr::add(o("w^2+w"), o("w^2")) == o("w^2*2"));
  CHECK(fsr::add(nat(2), nat(3)) == nat(5));
  CHECK(fsr::add(o("w^w+w^2*3+1"), o("w^2+4")) == o("w^w+w^2*4+4"));
  CHECK(fsr::add(Ordinal(), o("w*2")) == o("w*2"));
  CHECK(fsr::add(o("w*2"), Ordinal()) == o("w*2"));
}

TEST_CASE("addition is associative and respects order on random triples") {
  fsr::Rng rng(7u);
  for (int trial = 0; trial < 10000; ++trial) {
    Ordinal a = random_ordinal(rng, 3);
    Ordinal b = random_ordinal(rng, 3);
    Ordinal c = random_ordinal(rng, 3);
    CHECK(fsr::add(fsr::add(a, b), c) == fsr::add(a, fsr::add(b, c)));
    CHECK(fsr::add(a, b) >= b);
    if (b < c) CHECK(fsr::add(a, b) < fsr::add(a, c));
  }
}

TEST_CASE("canonical text form round-trips bit-exactly") {
  const std::vector<std::string> corpus = {
      "0",       "1",          "17",        "w",         "w*2",
      "w+1",     "w*3+2",      "w^2",       "w^2*5+w+9", "w^w",
      "w^w^2",   "w^w^2*5",    "w^(w+1)*3", "w^(w*2)",   "w^(w^2+w*3+4)+w^w*2+1",
      "w^w^w",   "w^(w^w+1)*2"};
  for (const std::string& s : corpus) {
    CAPTURE(s);
    CHECK(Ordinal::parse(s).to_string() == s);
  }
  fsr::Rng rng(99u);
  for (int trial = 0; trial < 10000; ++trial) {
    Ordinal a = random_ordinal(rng, 4);
    Ordinal back = Ordinal::parse(a.to_string());
    CHECK(back == a);
    CHECK(back.to_string() == a.to_string());
  }
}

TEST_CASE("parser rejects non-canonical spellings") {
  const std::vector<std::string> bad = {
      "",      "w^1",   "w*1",    "w^0",     "w+w",    "1+w",   "00",
      "w^(2)", "w^(w)", "3+2",    "w^2*0",   "0+1",    "w^^2",  "(w)",
      "w*2*3", "w^w*2+w^w", " w", "w ", "w^(w+1)*"};
  for (const std::string& s : bad) {
    CAPTURE(s);
    CHECK_THROWS_AS(Ordinal::parse(s), std::invalid_argument);
  }
}

TEST_CASE("nesting depth is capped") {
  CHECK(nat(0).nesting_depth() == 0);
  CHECK(nat(3).nesting_depth() == 1);
  CHECK(w().nesting_depth() == 2);
  CHECK(o("w^w").nesting_depth() == 3);
  CHECK(o("w^w^w").nesting_depth() == 4);
  CHECK_THROWS_AS(Ordinal::parse("w^w^w^w"), std::domain_error);
  CHECK_THROWS_AS(Ordinal::omega_power(o("w^w^w")), std::domain_error);
  CHECK_NOTHROW(Ordinal::parse("w^w^w^w", 5));
}

TEST_CASE("otp_below counts the strict predecessors in the set") {
  FiniteOrdinalSet lam{nat(1), w(), o("w+2"), o("w^2")};
  CHECK(fsr::otp_below(lam, o("w+1")) == 2);
  CHECK(fsr::otp_below(lam, nat(0)) == 0);
  CHECK(fsr::otp_below(lam, nat(1)) == 0);
  CHECK(fsr::otp_below(lam, o("w^2*4")) == 4);
}

TEST_CASE("otp_below splits a set at any threshold") {
  fsr::Rng rng(5u);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<Ordinal> elems;
    for (int i = 0; i < 8; ++i) elems.push_back(random_ordinal(rng, 3));
    FiniteOrdinalSet z{std::move(elems)};
    Ordinal a = random_ordinal(rng, 3);
    std::size_t below = fsr::otp_below(z, a);
    for (std::size_t i = 0; i < z.size(); ++i) {
      CHECK((i < below) == (z.elements()[i] < a));
    }
  }
}

TEST_CASE("sigma enumerates and sigma_inverse inverts") {
  FiniteOrdinalSet z{nat(5), w(), o("w*2")};
  CHECK(fsr::sigma(z, 0) == nat(5));
  CHECK(fsr::sigma(z, 2) == o("w*2"));
  CHECK(fsr::sigma_inverse(z, w()) == 1);
  CHECK_THROWS_AS(fsr::sigma(z, 3), std::domain_error);
  CHECK_THROWS_AS(fsr::sigma(FiniteOrdinalSet{}, 0), std::domain_error);
  CHECK_THROWS_AS(fsr::sigma_inverse(z, nat(6)), std::domain_error);

  fsr::Rng rng(11u);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<Ordinal> elems;
    for (int i = 0; i < 6; ++i) elems.push_back(random_ordinal(rng, 3));
    FiniteOrdinalSet z2{std::move(elems)};
    for (std::size_t i = 0; i < z2.size(); ++i) {
      CHECK(fsr::sigma_inverse(z2, fsr::sigma(z2, i)) == i);
    }
  }
}

TEST_CASE("set construction sorts and deduplicates") {
  FiniteOrdinalSet z{w(), nat(2), w(), nat(2), nat(7)};
  CHECK(z.size() == 3);
  CHECK(z.to_string() == "{2,7,w}");
  CHECK(z.contains(w()));
  CHECK(!z.contains(nat(3)));
  CHECK(z.min() == nat(2));
  CHECK(z.max() == w());
}

TEST_CASE("head-tail-tail recognises separated Delta-systems") {
  auto s = [](std::initializer_list<std::uint64_t> ns) {
    return FiniteOrdinalSet::naturals(ns);
  };
  CHECK(is_head_tail_tail({s({0, 1, 5, 6}), s({0, 1, 8, 9})}, s({0, 1})));
  // Root not below the second member's tail.
  CHECK(!is_head_tail_tail({s({2, 5}), s({1, 2})}, s({2})));
  // Overlapping tails: intersection differs from the root.
  CHECK(!is_head_tail_tail({s({0, 1, 5}), s({0, 5, 9})}, s({0})));
  // Interleaved tails violate order separation.
  CHECK(!is_head_tail_tail({s({0, 3, 9}), s({0, 5, 11})}, s({0})));
  // Root missing from a member.
  CHECK(!is_head_tail_tail({s({0, 5}), s({1, 8})}, s({0})));
  // Vacuous cases.
  CHECK(is_head_tail_tail({}, s({3})));
  CHECK(is_head_tail_tail({s({1, 4})}, s({1})));
  CHECK(is_head_tail_tail({s({3, 4}), s({3, 4})}, s({3})));
  CHECK(is_head_tail_tail({s({}), s({})}, s({})));
  // Empty root: pairwise disjoint separated blocks.
  CHECK(is_head_tail_tail({s({1, 2}), s({5, 6}), s({8})}, s({})));
  CHECK(!is_head_tail_tail({s({1, 6}), s({5, 9})}, s({})));
}

TEST_CASE("set algebra on ordinals") {
  FiniteOrdinalSet a{nat(1), w(), o("w+1")};
  FiniteOrdinalSet b{w(), o("w^2")};
  CHECK(fsr::set_union(a, b).to_string() == "{1,w,w+1,w^2}");
  CHECK(fsr::set_intersection(a, b).to_string() == "{w}");
  CHECK(fsr::set_difference(a, b).to_string() == "{1,w+1}");
  CHECK(fsr::set_symmetric_difference(a, b).to_string() == "{1,w+1,w^2}");
  CHECK(fsr::is_subset(FiniteOrdinalSet{w()}, a));
  CHECK(!fsr::is_subset(a, b));
  CHECK(fsr::is_subset(FiniteOrdinalSet{}, b));
}
