#include "fsr/presentation.hpp"

#include <algorithm>
#include <functional>
#include <utility>

#include "fsr/errors.hpp"

namespace fsr {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), cells_(rows * cols) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<mpz_class>>& rows) {
  if (rows.empty()) return IntMatrix();
  IntMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) {
      throw std::invalid_argument("matrix rows of unequal length");
    }
    for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

std::string IntMatrix::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i > 0) out += ',';
    out += '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j > 0) out += ',';
      out += at(i, j).get_str();
    }
    out += ']';
  }
  out += ']';
  return out;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matrix dimensions do not match");
  }
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    }
  }
  return out;
}

mpz_class determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("determinant of a non-square matrix");
  }
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      std::size_t i = k + 1;
      while (i < n && a.at(i, k) == 0) ++i;
      if (i == n) return 0;
      a.swap_rows(k, i);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        mpz_divexact(a.at(i, j).get_mpz_t(), num.get_mpz_t(),
                     prev.get_mpz_t());
      }
      a.at(i, k) = 0;
    }
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

std::vector<mpz_class> SmithDecomposition::diagonal() const {
  std::vector<mpz_class> d;
  const std::size_t lim = std::min(s.rows(), s.cols());
  d.reserve(lim);
  for (std::size_t i = 0; i < lim; ++i) d.push_back(s.at(i, i));
  return d;
}

namespace {

// Working state for the diagonalisation; row operations mirror into u,
// column operations into v, so u * input * v == s holds throughout.
struct SmithWorker {
  IntMatrix u, s, v;

  explicit SmithWorker(const IntMatrix& m)
      : u(IntMatrix::identity(m.rows())),
        s(m),
        v(IntMatrix::identity(m.cols())) {}

  void row_op(std::size_t dst, std::size_t src, const mpz_class& q) {
    for (std::size_t j = 0; j < s.cols(); ++j) {
      s.at(dst, j) += q * s.at(src, j);
    }
    for (std::size_t j = 0; j < u.cols(); ++j) {
      u.at(dst, j) += q * u.at(src, j);
    }
  }

  void col_op(std::size_t dst, std::size_t src, const mpz_class& q) {
    for (std::size_t i = 0; i < s.rows(); ++i) {
      s.at(i, dst) += q * s.at(i, src);
    }
    for (std::size_t i = 0; i < v.rows(); ++i) {
      v.at(i, dst) += q * v.at(i, src);
    }
  }

  void swap_rows(std::size_t i, std::size_t j) {
    s.swap_rows(i, j);
    u.swap_rows(i, j);
  }

  void swap_cols(std::size_t i, std::size_t j) {
    s.swap_cols(i, j);
    v.swap_cols(i, j);
  }

  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < s.cols(); ++j) s.at(i, j) = -s.at(i, j);
    for (std::size_t j = 0; j < u.cols(); ++j) u.at(i, j) = -u.at(i, j);
  }

  bool column_clear(std::size_t t) const {
    for (std::size_t i = t + 1; i < s.rows(); ++i) {
      if (s.at(i, t) != 0) return false;
    }
    return true;
  }

  // Brings the smallest nonzero entry of s[t..search_r) x [t..search_c) to
  // (t, t) and clears the rest of row t and column t by Euclidean steps.
  // Returns false when that submatrix is all zero.
  bool reduce_pivot(std::size_t t, std::size_t search_r, std::size_t search_c) {
    std::size_t pi = 0;
    std::size_t pj = 0;
    bool found = false;
    for (std::size_t i = t; i < search_r; ++i) {
      for (std::size_t j = t; j < search_c; ++j) {
        if (s.at(i, j) == 0) continue;
        if (!found || mpz_cmpabs(s.at(i, j).get_mpz_t(),
                                 s.at(pi, pj).get_mpz_t()) < 0) {
          pi = i;
          pj = j;
          found = true;
        }
      }
    }
    if (!found) return false;
    swap_rows(t, pi);
    swap_cols(t, pj);
    while (true) {
      for (std::size_t i = t + 1; i < s.rows(); ++i) {
        while (s.at(i, t) != 0) {
          mpz_class q = s.at(i, t) / s.at(t, t);
          if (q != 0) row_op(i, t, -q);
          if (s.at(i, t) != 0) swap_rows(i, t);
        }
      }
      for (std::size_t j = t + 1; j < s.cols(); ++j) {
        while (s.at(t, j) != 0) {
          mpz_class q = s.at(t, j) / s.at(t, t);
          if (q != 0) col_op(j, t, -q);
          if (s.at(t, j) != 0) swap_cols(j, t);
        }
      }
      // Column swaps during the row sweep may refill column t.
      if (column_clear(t)) return true;
    }
  }
};

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
  SmithWorker w(m);
  const std::size_t lim = std::min(m.rows(), m.cols());
  std::size_t rank = 0;
  while (rank < lim && w.reduce_pivot(rank, m.rows(), m.cols())) ++rank;
  for (std::size_t i = 0; i < rank; ++i) {
    if (w.s.at(i, i) < 0) w.negate_row(i);
  }
  // Repair the divisibility chain pairwise; each repair replaces a
  // non-dividing pair (a, b) with (gcd, lcm), strictly shrinking a.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t t = 0; t + 1 < rank; ++t) {
      const mpz_class& a = w.s.at(t, t);
      const mpz_class& b = w.s.at(t + 1, t + 1);
      if (b % a == 0) continue;
      w.col_op(t, t + 1, 1);
      w.reduce_pivot(t, std::min(t + 2, m.rows()), std::min(t + 2, m.cols()));
      if (w.s.at(t, t) < 0) w.negate_row(t);
      if (w.s.at(t + 1, t + 1) < 0) w.negate_row(t + 1);
      changed = true;
    }
  }
  return SmithDecomposition{std::move(w.u), std::move(w.s), std::move(w.v)};
}

namespace {

IntMatrix relation_matrix(const AbelianPresentation& p) {
  IntMatrix m(p.relations.size(), p.generators);
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    if (p.relations[i].size() != p.generators) {
      throw std::invalid_argument("relation row " + std::to_string(i) +
                                  " does not match the generator count");
    }
    for (std::size_t j = 0; j < p.generators; ++j) {
      m.at(i, j) = p.relations[i][j];
    }
  }
  return m;
}

// Diagonal of the Smith form stretched to one entry per generator (columns
// beyond the diagonal are free, encoded as 0).
std::vector<mpz_class> column_factors(const SmithDecomposition& snf,
                                      std::size_t generators) {
  std::vector<mpz_class> d(generators, mpz_class(0));
  const std::size_t lim = std::min(snf.s.rows(), snf.s.cols());
  for (std::size_t i = 0; i < lim && i < generators; ++i) {
    d[i] = snf.s.at(i, i);
  }
  return d;
}

GroupStructure structure_from_factors(const std::vector<mpz_class>& d) {
  GroupStructure out;
  for (const mpz_class& x : d) {
    if (x == 0) {
      ++out.free_rank;
    } else if (x > 1) {
      out.torsion.push_back(x);
    }
  }
  return out;
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(mpz_class m) {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
  for (std::uint64_t p = 2; p <= 1000000; p = (p == 2 ? 3 : p + 2)) {
    if (mpz_class(p) * p > m) break;
    if (!mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) {
      continue;
    }
    std::uint32_t k = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(),
                      static_cast<unsigned long>(p));
      ++k;
    }
    out.emplace_back(p, k);
  }
  if (m > 1) {
    if (!mpz_fits_ulong_p(m.get_mpz_t()) ||
        mpz_probab_prime_p(m.get_mpz_t(), 40) == 0) {
      throw resource_error("torsion factor " + m.get_str() +
                           " has a prime divisor too large to embed");
    }
    out.emplace_back(static_cast<std::uint64_t>(m.get_ui()), 1);
  }
  return out;
}

}  // namespace

GroupStructure presentation_structure(const AbelianPresentation& p) {
  SmithDecomposition snf = smith_normal_form(relation_matrix(p));
  return structure_from_factors(column_factors(snf, p.generators));
}

Embedding embed_fg_abelian(const AbelianPresentation& p) {
  IntMatrix m = relation_matrix(p);
  SmithDecomposition snf = smith_normal_form(m);
  const std::vector<mpz_class> d = column_factors(snf, p.generators);

  std::vector<GroupSignature::Coordinate> coords;
  // Entry lists of the images of the transformed basis, one per column.
  std::vector<std::vector<DirectSumElement::Entry>> basis(p.generators);
  std::uint64_t next_index = 0;
  for (std::size_t i = 0; i < p.generators; ++i) {
    if (d[i] == 1) continue;  // trivial factor
    if (d[i] == 0) {
      Ordinal idx = Ordinal::natural(next_index++);
      coords.push_back({idx, GroupSignature::Kind::rational, 0});
      basis[i].emplace_back(idx, RationalValue::integer(1));
      continue;
    }
    for (const auto& [prime, exp] : factorize(d[i])) {
      Ordinal idx = Ordinal::natural(next_index++);
      coords.push_back({idx, GroupSignature::Kind::prufer, prime});
      basis[i].emplace_back(idx, PruferValue(prime, mpz_class(1), exp));
    }
  }

  Embedding out;
  out.signature = make_signature(std::move(coords));
  out.structure = structure_from_factors(d);
  std::vector<DirectSumElement> basis_images;
  basis_images.reserve(p.generators);
  for (std::size_t i = 0; i < p.generators; ++i) {
    basis_images.emplace_back(out.signature, std::move(basis[i]));
  }
  // Generator j has coordinates row j of v in the transformed basis.
  for (std::size_t j = 0; j < p.generators; ++j) {
    DirectSumElement image(out.signature);
    for (std::size_t i = 0; i < p.generators; ++i) {
      const mpz_class& c = snf.v.at(j, i);
      if (c == 0 || basis_images[i].is_zero()) continue;
      image = add(image, zmul(c, basis_images[i]));
    }
    out.generator_images.push_back(std::move(image));
  }
  return out;
}

namespace {

// Enumerates nonzero integer vectors of L1 norm <= budget, calling visit on
// each; returns false early when visit does.
bool for_each_ball_vector(std::vector<mpz_class>& c, std::size_t pos,
                          std::uint64_t budget, bool nonzero_seen,
                          const std::function<bool(const std::vector<mpz_class>&)>& visit) {
  if (pos == c.size()) {
    return !nonzero_seen || visit(c);
  }
  for (std::int64_t t = -static_cast<std::int64_t>(budget);
       t <= static_cast<std::int64_t>(budget); ++t) {
    c[pos] = static_cast<long>(t);
    std::uint64_t used = static_cast<std::uint64_t>(t < 0 ? -t : t);
    if (!for_each_ball_vector(c, pos + 1, budget - used,
                              nonzero_seen || t != 0, visit)) {
      return false;
    }
  }
  return true;
}

}  // namespace

EmbeddingCheck verify_embedding(const AbelianPresentation& p,
                                const Embedding& e, std::uint32_t word_bound) {
  EmbeddingCheck out;
  if (e.generator_images.size() != p.generators) {
    out.ok = false;
    out.failure = "embedding has " + std::to_string(e.generator_images.size()) +
                  " images for " + std::to_string(p.generators) + " generators";
    return out;
  }
  auto image_of = [&](const std::vector<mpz_class>& c) {
    DirectSumElement img(e.signature);
    for (std::size_t j = 0; j < p.generators; ++j) {
      if (c[j] == 0) continue;
      img = add(img, zmul(c[j], e.generator_images[j]));
    }
    return img;
  };
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    if (p.relations[i].size() != p.generators) {
      throw std::invalid_argument("relation row " + std::to_string(i) +
                                  " does not match the generator count");
    }
    if (!image_of(p.relations[i]).is_zero()) {
      out.ok = false;
      out.failure = "relation row " + std::to_string(i) +
                    " does not map to zero";
      return out;
    }
  }

  SmithDecomposition snf = smith_normal_form(relation_matrix(p));
  const std::vector<mpz_class> d = column_factors(snf, p.generators);
  auto in_row_span = [&](const std::vector<mpz_class>& c) {
    for (std::size_t i = 0; i < p.generators; ++i) {
      mpz_class y = 0;
      for (std::size_t j = 0; j < p.generators; ++j) {
        y += c[j] * snf.v.at(j, i);
      }
      if (d[i] == 0) {
        if (y != 0) return false;
      } else if (y % d[i] != 0) {
        return false;
      }
    }
    return true;
  };

  std::vector<mpz_class> c(p.generators);
  bool all_ok = for_each_ball_vector(
      c, 0, 2ull * word_bound, false,
      [&](const std::vector<mpz_class>& vec) {
        bool zero_image = image_of(vec).is_zero();
        if (zero_image == in_row_span(vec)) return true;
        std::string desc = "(";
        for (std::size_t j = 0; j < vec.size(); ++j) {
          if (j > 0) desc += ',';
          desc += vec[j].get_str();
        }
        desc += ')';
        out.failure = zero_image
                          ? "word " + desc + " collapses but is no relation"
                          : "relation word " + desc + " has nonzero image";
        return false;
      });
  out.ok = all_ok;
  return out;
}

AbelianPresentation semigroup_to_group(const CayleyTable& table) {
  const std::size_t n = table.size();
  if (n > kMaxCayleyElements) {
    throw cayley_error(cayley_error::Kind::malformed,
                       "table has " + std::to_string(n) +
                           " elements, limit is " +
                           std::to_string(kMaxCayleyElements),
                       n, 0, 0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) {
      throw cayley_error(cayley_error::Kind::malformed,
                         "row " + std::to_string(i) + " has " +
                             std::to_string(table[i].size()) +
                             " entries, expected " + std::to_string(n),
                         i, 0, 0);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (table[i][j] >= n) {
        throw cayley_error(cayley_error::Kind::malformed,
                           "entry at (" + std::to_string(i) + "," +
                               std::to_string(j) + ") is out of range",
                           i, j, 0);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (table[i][j] != table[j][i]) {
        throw cayley_error(cayley_error::Kind::not_commutative,
                           std::to_string(i) + " + " + std::to_string(j) +
                               " differs from " + std::to_string(j) + " + " +
                               std::to_string(i),
                           i, j, 0);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> first(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t value = table[i][j];
      if (first[value] != n) {
        throw cayley_error(cayley_error::Kind::not_cancellative,
                           std::to_string(i) + " + " +
                               std::to_string(first[value]) + " equals " +
                               std::to_string(i) + " + " + std::to_string(j),
                           i, first[value], j);
      }
      first[value] = j;
    }
  }

  AbelianPresentation raw;
  raw.generators = n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      std::vector<mpz_class> row(n, mpz_class(0));
      row[i] += 1;
      row[j] += 1;
      row[table[i][j]] -= 1;
      raw.relations.push_back(std::move(row));
    }
  }
  GroupStructure st = presentation_structure(raw);

  AbelianPresentation reduced;
  reduced.generators = st.torsion.size() + st.free_rank;
  for (std::size_t t = 0; t < st.torsion.size(); ++t) {
    std::vector<mpz_class> row(reduced.generators, mpz_class(0));
    row[t] = st.torsion[t];
    reduced.relations.push_back(std::move(row));
  }
  return reduced;
}

}  // namespace fsr
