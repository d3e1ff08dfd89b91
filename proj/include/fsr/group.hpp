#pragma once
//
// Direct sums of countable divisible abelian groups, indexed by ordinals.
// Each coordinate of a signature is either the rationals Q or a Prufer group
// Z(p^inf) for a prime p.  Elements are finite formal sums: a sorted entry
// list holding only nonzero coordinate values.  All arithmetic is exact;
// there is no floating point anywhere.
//
// Prufer values are cosets a/p^n + Z kept canonical: 0 <= a < p^n, and
// either a = 0 with n = 0, or gcd(a, p) = 1.  Rational values are reduced
// with positive denominator (mpq canonical form).
//
// divide(n, x) returns the canonical minimal-exponent solution z of
// n*z = x: rationals divide exactly; a Prufer coordinate a/p^k with
// n = p^j * n' (gcd(n', p) = 1) lifts to ((n')^-1 * a mod p^(k+j)) / p^(k+j).

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fsr/ordinal.hpp"
#include "fsr/ordinal_set.hpp"

namespace fsr {

class RationalValue {
 public:
  RationalValue() = default;  // zero
  RationalValue(mpz_class numerator, mpz_class denominator);
  static RationalValue integer(mpz_class n);

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  bool is_zero() const { return q_ == 0; }

  RationalValue plus(const RationalValue& other) const;
  RationalValue negated() const;
  RationalValue times(const mpz_class& n) const;
  RationalValue divided_by(const mpz_class& n) const;  // n != 0

  std::string to_string() const { return q_.get_str(); }

  friend bool operator==(const RationalValue& a, const RationalValue& b) {
    return a.q_ == b.q_;
  }

 private:
  mpq_class q_;
};

class PruferValue {
 public:
  // Zero coset of Z(p^inf).
  explicit PruferValue(std::uint64_t p);
  // Coset a/p^n + Z, canonicalised (a reduced mod p^n, powers of p cancelled).
  PruferValue(std::uint64_t p, mpz_class a, std::uint32_t n);

  std::uint64_t p() const { return p_; }
  const mpz_class& a() const { return a_; }
  std::uint32_t n() const { return n_; }
  bool is_zero() const { return a_ == 0; }
  mpz_class order() const;  // p^n

  PruferValue plus(const PruferValue& other) const;  // same p required
  PruferValue negated() const;
  PruferValue times(const mpz_class& n) const;
  PruferValue divided_by(const mpz_class& n) const;  // n >= 1

  std::string to_string() const;  // "a/p^n" with p^n expanded, "0" for zero

  friend bool operator==(const PruferValue& a, const PruferValue& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.a_ == b.a_;
  }

 private:
  std::uint64_t p_;
  mpz_class a_;
  std::uint32_t n_;
  void canonicalise();
};

using CoordinateValue = std::variant<RationalValue, PruferValue>;

bool value_is_zero(const CoordinateValue& v);
CoordinateValue value_add(const CoordinateValue& a, const CoordinateValue& b);
CoordinateValue value_negate(const CoordinateValue& v);
CoordinateValue value_zmul(const mpz_class& n, const CoordinateValue& v);
CoordinateValue value_divide(const mpz_class& n, const CoordinateValue& v);
std::string value_to_string(const CoordinateValue& v);

// Order of the cyclic group generated by a coordinate value: 1 for zero,
// p^n for a Prufer coset, infinite (nullopt) for a nonzero rational.
std::optional<mpz_class> element_order(const CoordinateValue& v);

class GroupSignature {
 public:
  enum class Kind { rational, prufer };
  struct Coordinate {
    Ordinal index;
    Kind kind = Kind::rational;
    std::uint64_t p = 0;  // prime for Kind::prufer, 0 otherwise
  };

  // Sorts by index; rejects duplicate indices and non-prime p.
  explicit GroupSignature(std::vector<Coordinate> coordinates);

  const std::vector<Coordinate>& coordinates() const { return coords_; }
  const Coordinate* find(const Ordinal& index) const;  // nullptr if absent
  CoordinateValue zero_value(const Ordinal& index) const;  // domain_error

  std::string to_string() const;

  friend bool operator==(const GroupSignature& a, const GroupSignature& b);

 private:
  std::vector<Coordinate> coords_;
};

using SignaturePtr = std::shared_ptr<const GroupSignature>;

SignaturePtr make_signature(std::vector<GroupSignature::Coordinate> coords);

class DirectSumElement {
 public:
  using Entry = std::pair<Ordinal, CoordinateValue>;

  DirectSumElement() = default;  // zero of the empty signature
  explicit DirectSumElement(SignaturePtr sig);  // zero element
  // Validates entries against the signature (indices declared, kinds and
  // primes matching), drops zero values, sorts by index; duplicate indices
  // are rejected.
  DirectSumElement(SignaturePtr sig, std::vector<Entry> entries);

  const SignaturePtr& signature() const { return sig_; }
  const std::vector<Entry>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  // Value at a coordinate; the zero of the declared kind when no entry is
  // present; domain_error when the index is not in the signature.
  CoordinateValue at(const Ordinal& index) const;

  FiniteOrdinalSet support() const;

  std::string to_string() const;  // "(idx:val,...)", canonical

 private:
  SignaturePtr sig_;
  std::vector<Entry> entries_;
};

bool operator==(const DirectSumElement& a, const DirectSumElement& b);
inline bool operator!=(const DirectSumElement& a, const DirectSumElement& b) {
  return !(a == b);
}

// invalid_argument when the signatures differ.
DirectSumElement add(const DirectSumElement& a, const DirectSumElement& b);
DirectSumElement negate(const DirectSumElement& x);
DirectSumElement nmul(std::uint64_t n, const DirectSumElement& x);
DirectSumElement zmul(const mpz_class& n, const DirectSumElement& x);
// n >= 1; canonical solution z with nmul(n, z) == x.
DirectSumElement divide(std::uint64_t n, const DirectSumElement& x);

DirectSumElement sum_of(const std::vector<DirectSumElement>& xs);

bool is_prime_u64(std::uint64_t p);

}  // namespace fsr
