#include "fsr/presentation.hpp"

#include <cstdint>
#include <vector>

#include "doctest.h"
#include "fsr/errors.hpp"
#include "fsr/group.hpp"
#include "fsr/rng.hpp"

using namespace fsr;

namespace {

// Test-side determinant by cofactor expansion, independent of the library's
// fraction-free elimination.
mpz_class det_cofactor(const std::vector<std::vector<mpz_class>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  mpz_class acc = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0) continue;
    std::vector<std::vector<mpz_class>> sub(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (k != j) sub[i - 1].push_back(m[i][k]);
      }
    }
    mpz_class term = m[0][j] * det_cofactor(sub);
    if (j % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return acc;
}

mpz_class det_cofactor(const IntMatrix& m) {
  std::vector<std::vector<mpz_class>> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i].push_back(m.at(i, j));
  }
  return det_cofactor(rows);
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

// gcd of all k x k minors; zero when every minor vanishes.
mpz_class minor_gcd(const IntMatrix& m, std::size_t k) {
  mpz_class g = 0;
  for_each_combination(m.rows(), k, [&](const std::vector<std::size_t>& ri) {
    for_each_combination(m.cols(), k, [&](const std::vector<std::size_t>& ci) {
      std::vector<std::vector<mpz_class>> sub(k);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          sub[i].push_back(m.at(ri[i], ci[j]));
        }
      }
      mpz_class d = det_cofactor(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    });
  });
  return g;
}

// Invariant factors of the cokernel computed from minor gcds alone:
// d_k = D_k / D_(k-1) with D_0 = 1, for k up to the rank.
std::vector<mpz_class> factors_by_minors(const IntMatrix& m) {
  std::vector<mpz_class> out;
  mpz_class prev = 1;
  const std::size_t lim = std::min(m.rows(), m.cols());
  for (std::size_t k = 1; k <= lim; ++k) {
    mpz_class dk = minor_gcd(m, k);
    if (dk == 0) break;
    out.push_back(dk / prev);
    prev = dk;
  }
  return out;
}

void check_smith(const IntMatrix& m) {
  SmithDecomposition snf = smith_normal_form(m);
  CHECK(multiply(multiply(snf.u, m), snf.v) == snf.s);
  mpz_class du = det_cofactor(snf.u);
  mpz_class dv = det_cofactor(snf.v);
  CHECK((du == 1 || du == -1));
  CHECK((dv == 1 || dv == -1));
  std::vector<mpz_class> diag = snf.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    CHECK(diag[i] >= 0);
    if (i + 1 < diag.size() && diag[i] != 0) {
      CHECK(diag[i + 1] % diag[i] == 0);
    }
    if (diag[i] == 0 && i + 1 < diag.size()) CHECK(diag[i + 1] == 0);
    for (std::size_t j = 0; j < snf.s.cols(); ++j) {
      if (j != i && i < snf.s.rows()) CHECK(snf.s.at(i, j) == 0);
    }
  }
  std::vector<mpz_class> expect = factors_by_minors(m);
  REQUIRE(expect.size() <= diag.size());
  for (std::size_t i = 0; i < expect.size(); ++i) CHECK(diag[i] == expect[i]);
  for (std::size_t i = expect.size(); i < diag.size(); ++i) {
    CHECK(diag[i] == 0);
  }
}

IntMatrix mat(const std::vector<std::vector<mpz_class>>& rows) {
  return IntMatrix::from_rows(rows);
}

CayleyTable cyclic_table(std::size_t n) {
  CayleyTable t(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  }
  return t;
}

}  // namespace

TEST_CASE("smith normal form on frozen matrices") {
  {
    SmithDecomposition snf = smith_normal_form(mat({{2, 0}, {0, 3}}));
    CHECK(snf.diagonal() == std::vector<mpz_class>{1, 6});
  }
  {
    SmithDecomposition snf = smith_normal_form(mat({{0}}));
    CHECK(snf.diagonal() == std::vector<mpz_class>{0});
  }
  {
    SmithDecomposition snf = smith_normal_form(mat({{2, 4}, {6, 8}}));
    CHECK(snf.diagonal() == std::vector<mpz_class>{2, 4});
  }
  check_smith(mat({{2, 0}, {0, 3}}));
  check_smith(mat({{0}}));
  check_smith(mat({{2, 4}, {6, 8}}));
  check_smith(mat({{1, 2, 3}}));
  check_smith(mat({{4}, {6}}));
  check_smith(IntMatrix(0, 3));
  check_smith(IntMatrix(3, 0));
  check_smith(IntMatrix());
}

TEST_CASE("smith normal form matches the minor-gcd oracle on random input") {
  Rng rng(404);
  for (int iter = 0; iter < 300; ++iter) {
    std::size_t r = 1 + rand_below(rng, 5);
    std::size_t c = 1 + rand_below(rng, 5);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        m.at(i, j) = static_cast<long>(rand_below(rng, 21)) - 10;
      }
    }
    check_smith(m);
  }
}

TEST_CASE("determinant via fraction-free elimination") {
  CHECK(determinant(mat({{3}})) == 3);
  CHECK(determinant(mat({{1, 2}, {3, 4}})) == -2);
  CHECK(determinant(mat({{0, 1}, {1, 0}})) == -1);
  CHECK(determinant(IntMatrix()) == 1);
  Rng rng(505);
  for (int iter = 0; iter < 200; ++iter) {
    std::size_t n = 1 + rand_below(rng, 5);
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        m.at(i, j) = static_cast<long>(rand_below(rng, 15)) - 7;
      }
    }
    CHECK(determinant(m) == det_cofactor(m));
  }
  CHECK_THROWS_AS(determinant(IntMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("presentation structure splits torsion and free rank") {
  {
    GroupStructure st = presentation_structure({1, {{mpz_class(6)}}});
    CHECK(st.torsion == std::vector<mpz_class>{6});
    CHECK(st.free_rank == 0);
  }
  {
    GroupStructure st = presentation_structure({2, {{2, 0}}});
    CHECK(st.torsion == std::vector<mpz_class>{2});
    CHECK(st.free_rank == 1);
  }
  {
    GroupStructure st = presentation_structure({1, {}});
    CHECK(st.torsion.empty());
    CHECK(st.free_rank == 1);
  }
  CHECK_THROWS_AS(presentation_structure({2, {{1}}}), std::invalid_argument);
}

TEST_CASE("embedding a single torsion generator") {
  AbelianPresentation p{1, {{mpz_class(6)}}};
  Embedding e = embed_fg_abelian(p);
  REQUIRE(e.generator_images.size() == 1);
  CHECK(e.signature->to_string() == "[0:Z(2^inf),1:Z(3^inf)]");
  const DirectSumElement& a = e.generator_images[0];
  CHECK(a.at(Ordinal::natural(0)) ==
        CoordinateValue(PruferValue(2, mpz_class(1), 1)));
  CHECK(a.at(Ordinal::natural(1)) ==
        CoordinateValue(PruferValue(3, mpz_class(1), 1)));
  for (std::uint64_t k = 1; k < 6; ++k) CHECK_FALSE(nmul(k, a).is_zero());
  CHECK(nmul(6, a).is_zero());
  CHECK(verify_embedding(p, e, 6).ok);
}

TEST_CASE("embedding a free generator") {
  AbelianPresentation p{1, {}};
  Embedding e = embed_fg_abelian(p);
  CHECK(e.signature->to_string() == "[0:Q]");
  CHECK(e.generator_images[0].at(Ordinal::natural(0)) ==
        CoordinateValue(RationalValue::integer(1)));
  CHECK(verify_embedding(p, e, 4).ok);
}

TEST_CASE("embedding the Klein four group") {
  AbelianPresentation p{2, {{2, 0}, {0, 2}}};
  Embedding e = embed_fg_abelian(p);
  CHECK(e.signature->coordinates().size() == 2);
  for (const auto& c : e.signature->coordinates()) {
    CHECK(c.kind == GroupSignature::Kind::prufer);
    CHECK(c.p == 2);
  }
  const DirectSumElement& a = e.generator_images[0];
  const DirectSumElement& b = e.generator_images[1];
  std::vector<DirectSumElement> all = {DirectSumElement(e.signature), a, b,
                                       add(a, b)};
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      CHECK(all[i] != all[j]);
    }
  }
  CHECK(verify_embedding(p, e, 4).ok);
}

TEST_CASE("embedding the trivial presentation") {
  AbelianPresentation p{1, {{mpz_class(1)}}};
  Embedding e = embed_fg_abelian(p);
  CHECK(e.signature->coordinates().empty());
  CHECK(e.generator_images[0].is_zero());
  CHECK(verify_embedding(p, e, 3).ok);
}

TEST_CASE("verify_embedding flags broken images") {
  AbelianPresentation p{1, {{mpz_class(6)}}};
  Embedding e = embed_fg_abelian(p);
  // sabotage: replace the image with one of order 2 only
  Embedding bad = e;
  bad.generator_images[0] = DirectSumElement(
      e.signature,
      {{Ordinal::natural(0), PruferValue(2, mpz_class(1), 1)}});
  EmbeddingCheck chk = verify_embedding(p, bad, 6);
  CHECK_FALSE(chk.ok);
  CHECK_FALSE(chk.failure.empty());
}

TEST_CASE("random presentations embed injectively") {
  Rng rng(606);
  for (int iter = 0; iter < 60; ++iter) {
    AbelianPresentation p;
    p.generators = 1 + rand_below(rng, 3);
    std::size_t rel_count = rand_below(rng, 4);
    for (std::size_t i = 0; i < rel_count; ++i) {
      std::vector<mpz_class> row(p.generators);
      for (std::size_t j = 0; j < p.generators; ++j) {
        row[j] = static_cast<long>(rand_below(rng, 21)) - 10;
      }
      p.relations.push_back(std::move(row));
    }
    Embedding e = embed_fg_abelian(p);
    EmbeddingCheck chk = verify_embedding(p, e, 3);
    CHECK(chk.ok);
    if (!chk.ok) {
      MESSAGE("failure: ", chk.failure);
    }
  }
}

TEST_CASE("cayley tables reduce to canonical presentations") {
  {
    AbelianPresentation p = semigroup_to_group(cyclic_table(3));
    REQUIRE(p.generators == 1);
    REQUIRE(p.relations.size() == 1);
    CHECK(p.relations[0][0] == 3);
  }
  {
    AbelianPresentation p = semigroup_to_group(cyclic_table(1));
    CHECK(p.generators == 0);
    CHECK(p.relations.empty());
  }
  {
    // Z2 x Z2 via direct product of tables
    CayleyTable t(4, std::vector<std::size_t>(4));
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        t[i][j] = ((i ^ j) & 1) | (((i >> 1) ^ (j >> 1)) << 1);
      }
    }
    AbelianPresentation p = semigroup_to_group(t);
    GroupStructure st = presentation_structure(p);
    CHECK(st.torsion == std::vector<mpz_class>{2, 2});
    CHECK(st.free_rank == 0);
  }
  for (std::size_t m = 2; m <= 12; ++m) {
    AbelianPresentation p = semigroup_to_group(cyclic_table(m));
    GroupStructure st = presentation_structure(p);
    CHECK(st.torsion == std::vector<mpz_class>{mpz_class(static_cast<unsigned long>(m))});
  }
}

TEST_CASE("cayley validation reports the violating cells") {
  // absorbing element: 1 + x = 1 for every x
  CayleyTable absorbing = {{0, 1}, {1, 1}};
  try {
    semigroup_to_group(absorbing);
    FAIL("expected a cancellativity error");
  } catch (const cayley_error& err) {
    CHECK(err.kind == cayley_error::Kind::not_cancellative);
    CHECK(err.a == 1);
    CHECK(err.b == 0);
    CHECK(err.c == 1);
  }

  CayleyTable noncomm = {{0, 1}, {0, 1}};
  try {
    semigroup_to_group(noncomm);
    FAIL("expected a commutativity error");
  } catch (const cayley_error& err) {
    CHECK(err.kind == cayley_error::Kind::not_commutative);
    CHECK(err.a == 0);
    CHECK(err.b == 1);
  }

  CayleyTable ragged = {{0, 1}, {1}};
  CHECK_THROWS_AS(semigroup_to_group(ragged), cayley_error);
  CayleyTable out_of_range = {{0, 2}, {2, 0}};
  CHECK_THROWS_AS(semigroup_to_group(out_of_range), cayley_error);
}
