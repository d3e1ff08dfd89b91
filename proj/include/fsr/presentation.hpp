#pragma once
//
// Finitely generated abelian groups by presentation, and their embedding
// into direct sums of divisible coordinate groups.
//
// A presentation is a generator count g and an integer relation matrix whose
// rows are relations over the generators; the presented group is Z^g modulo
// the row span. smith_normal_form diagonalises such a matrix over Z with
// unimodular row and column transforms, giving the invariant factors.
//
// embed_fg_abelian maps each invariant factor to divisible coordinates: a
// free factor to a fresh Q coordinate (generator image 1), a finite factor m
// to one Z(p^inf) coordinate per prime power p^k dividing m exactly
// (generator image 1/p^k). The resulting map on generators is injective on
// the presented group, which verify_embedding checks exhaustively on a ball
// of short words.
//
// semigroup_to_group turns a finite commutative cancellative Cayley table
// (such a semigroup is already a group) into a canonical diagonal
// presentation by reducing the table relations.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsr/group.hpp"

namespace fsr {

class IntMatrix {
 public:
  IntMatrix() = default;  // 0 x 0
  IntMatrix(std::size_t rows, std::size_t cols);  // zero-filled
  static IntMatrix identity(std::size_t n);
  // Validates that all rows have equal length.
  static IntMatrix from_rows(const std::vector<std::vector<mpz_class>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpz_class& at(std::size_t i, std::size_t j) { return cells_[i * cols_ + j]; }
  const mpz_class& at(std::size_t i, std::size_t j) const {
    return cells_[i * cols_ + j];
  }

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);

  std::string to_string() const;  // "[[a,b],[c,d]]"

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.cells_ == b.cells_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> cells_;
};

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
mpz_class determinant(const IntMatrix& m);  // square input; fraction-free

struct SmithDecomposition {
  IntMatrix u;  // unimodular, rows x rows
  IntMatrix s;  // diagonal, nonnegative, d1 | d2 | ... ; zeros trailing
  IntMatrix v;  // unimodular, cols x cols
  std::vector<mpz_class> diagonal() const;
};

// u * input * v == s.
SmithDecomposition smith_normal_form(const IntMatrix& m);

struct AbelianPresentation {
  std::size_t generators = 0;
  std::vector<std::vector<mpz_class>> relations;  // each of length generators
};

struct GroupStructure {
  std::vector<mpz_class> torsion;  // invariant factors > 1, in chain order
  std::size_t free_rank = 0;
};

GroupStructure presentation_structure(const AbelianPresentation& p);

struct Embedding {
  SignaturePtr signature;
  std::vector<DirectSumElement> generator_images;  // one per generator
  GroupStructure structure;
};

// Coordinates are indexed by consecutive naturals in the order the invariant
// factors appear (prime powers of each finite factor in ascending prime
// order, then the free factors). resource_error when a torsion factor has a
// prime divisor too large for trial factoring.
Embedding embed_fg_abelian(const AbelianPresentation& p);

struct EmbeddingCheck {
  bool ok = true;
  std::string failure;  // empty when ok
};

// Checks that every relation row maps to zero, and that the induced map is
// injective on words of L1 norm <= word_bound: for every integer vector c
// with |c|_1 <= 2*word_bound, the image of c vanishes exactly when c lies in
// the row span of the relations (membership decided through the Smith form).
EmbeddingCheck verify_embedding(const AbelianPresentation& p,
                                const Embedding& e, std::uint32_t word_bound);

// Row-major operation table: table[i][j] is the index of element i + j.
using CayleyTable = std::vector<std::vector<std::size_t>>;

class cayley_error : public std::invalid_argument {
 public:
  enum class Kind { malformed, not_commutative, not_cancellative };
  cayley_error(Kind kind, const std::string& what, std::size_t a,
               std::size_t b, std::size_t c)
      : std::invalid_argument(what), kind(kind), a(a), b(b), c(c) {}
  Kind kind;
  // not_commutative: a + b != b + a. not_cancellative: a + b == a + c with
  // b != c. malformed: a is the offending row (b, c unused).
  std::size_t a;
  std::size_t b;
  std::size_t c;
};

inline constexpr std::size_t kMaxCayleyElements = 64;

// Validates the table (total, commutative, cancellative; at most
// kMaxCayleyElements elements), then reduces the relations i + j = table[i][j]
// to a canonical diagonal presentation of the same group.
AbelianPresentation semigroup_to_group(const CayleyTable& table);

}  // namespace fsr
