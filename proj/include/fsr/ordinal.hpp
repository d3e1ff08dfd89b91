#pragma once
//
// Ordinals below epsilon_0 in Cantor normal form.
//
// An ordinal is a finite sum  w^e1*c1 + ... + w^ek*ck  where the exponents
// e1 > e2 > ... > ek are themselves ordinals and the coefficients ci are
// positive naturals.  The empty sum is 0 and a natural n is the single term
// w^0*n.  The tower height of nested exponents is capped (kMaxOrdinalDepth)
// so every value stays desk-scale; all operations preserve the cap.
//
// Canonical text form, parsed and printed bit-exactly:
//     0            zero
//     7            natural
//     w            w^1*1
//     w*3          w^1*3
//     w^2          exponent a natural
//     w^w^2*5      exponents associate to the right
//     w^(w*2+1)+3  parentheses exactly when the exponent is neither a
//                  natural nor a single term with coefficient 1
// Terms are joined with '+' in strictly decreasing exponent order.  The
// parser rejects every non-canonical spelling ("w^1", "w*1", "w^0", "w+w",
// redundant parentheses), so parse(to_string(x)) == x and
// to_string(parse(s)) == s.

#include <cstdint>
#include <string>
#include <vector>

namespace fsr {

inline constexpr std::size_t kMaxOrdinalDepth = 4;

class Ordinal {
 public:
  struct Term;

  Ordinal() = default;  // zero

  static Ordinal natural(std::uint64_t n);
  static Ordinal omega();
  // w^exponent * coefficient; coefficient >= 1.
  static Ordinal omega_power(const Ordinal& exponent,
                             std::uint64_t coefficient = 1,
                             std::size_t max_depth = kMaxOrdinalDepth);
  // Terms must already be in strictly decreasing exponent order.
  static Ordinal from_terms(std::vector<Term> terms,
                            std::size_t max_depth = kMaxOrdinalDepth);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_natural() const;
  // Requires is_natural(); zero yields 0.
  std::uint64_t natural_value() const;

  // 0 for zero, 1 for naturals, 1 + depth of the deepest exponent otherwise.
  std::size_t nesting_depth() const;

  std::string to_string() const;
  // Strict canonical parser; throws std::invalid_argument with the offending
  // position on any deviation, std::domain_error when the depth cap is hit.
  static Ordinal parse(const std::string& text,
                       std::size_t max_depth = kMaxOrdinalDepth);

 private:
  std::vector<Term> terms_;
};

struct Ordinal::Term {
  Ordinal exponent;
  std::uint64_t coefficient = 1;
};

// Three-way CNF comparison: -1, 0, +1.
int cmp(const Ordinal& a, const Ordinal& b);

inline bool operator==(const Ordinal& a, const Ordinal& b) {
  return cmp(a, b) == 0;
}
inline bool operator!=(const Ordinal& a, const Ordinal& b) {
  return cmp(a, b) != 0;
}
inline bool operator<(const Ordinal& a, const Ordinal& b) {
  return cmp(a, b) < 0;
}
inline bool operator<=(const Ordinal& a, const Ordinal& b) {
  return cmp(a, b) <= 0;
}
inline bool operator>(const Ordinal& a, const Ordinal& b) {
  return cmp(a, b) > 0;
}
inline bool operator>=(const Ordinal& a, const Ordinal& b) {
  return cmp(a, b) >= 0;
}

// Ordinal addition: terms of a with exponent below b's leading exponent are
// absorbed, equal leading exponents merge coefficients.  Associative; not
// commutative (1 + w == w).
Ordinal add(const Ordinal& a, const Ordinal& b);

struct OrdinalLess {
  bool operator()(const Ordinal& a, const Ordinal& b) const { return a < b; }
};

}  // namespace fsr
