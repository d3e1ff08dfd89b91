#include "fsr/ordinal.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace fsr {

namespace {

void check_depth(const Ordinal& x, std::size_t max_depth) {
  if (x.nesting_depth() > max_depth) {
    throw std::domain_error("ordinal nesting depth exceeds cap of " +
                            std::to_string(max_depth));
  }
}

}  // namespace

Ordinal Ordinal::natural(std::uint64_t n) {
  Ordinal x;
  if (n > 0) x.terms_.push_back(Term{Ordinal(), n});
  return x;
}

Ordinal Ordinal::omega() { return omega_power(natural(1)); }

Ordinal Ordinal::omega_power(const Ordinal& exponent, std::uint64_t coefficient,
                             std::size_t max_depth) {
  if (coefficient == 0) {
    throw std::invalid_argument("ordinal term coefficient must be positive");
  }
  Ordinal x;
  x.terms_.push_back(Term{exponent, coefficient});
  check_depth(x, max_depth);
  return x;
}

Ordinal Ordinal::from_terms(std::vector<Term> terms, std::size_t max_depth) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0) {
      throw std::invalid_argument("ordinal term coefficient must be positive");
    }
    if (i + 1 < terms.size() &&
        cmp(terms[i].exponent, terms[i + 1].exponent) <= 0) {
      throw std::invalid_argument(
          "ordinal terms must have strictly decreasing exponents");
    }
  }
  Ordinal x;
  x.terms_ = std::move(terms);
  check_depth(x, max_depth);
  return x;
}

bool Ordinal::is_natural() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

std::uint64_t Ordinal::natural_value() const {
  if (!is_natural()) {
    throw std::domain_error("natural_value on a non-natural ordinal");
  }
  return terms_.empty() ? 0 : terms_[0].coefficient;
}

std::size_t Ordinal::nesting_depth() const {
  std::size_t deepest = 0;
  for (const Term& t : terms_) {
    deepest = std::max(deepest, t.exponent.nesting_depth());
  }
  return terms_.empty() ? 0 : 1 + deepest;
}

int cmp(const Ordinal& a, const Ordinal& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  const std::size_t n = std::min(ta.size(), tb.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cmp(ta[i].exponent, tb[i].exponent);
    if (c != 0) return c;
    if (ta[i].coefficient != tb[i].coefficient) {
      return ta[i].coefficient < tb[i].coefficient ? -1 : 1;
    }
  }
  if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
  return 0;
}

Ordinal add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  const Ordinal& lead = b.terms()[0].exponent;
  std::vector<Ordinal::Term> out;
  out.reserve(a.terms().size() + b.terms().size());
  std::size_t i = 0;
  while (i < a.terms().size() && cmp(a.terms()[i].exponent, lead) > 0) {
    out.push_back(a.terms()[i]);
    ++i;
  }
  std::uint64_t carry = 0;
  if (i < a.terms().size() && cmp(a.terms()[i].exponent, lead) == 0) {
    carry = a.terms()[i].coefficient;
  }
  if (carry > std::numeric_limits<std::uint64_t>::max() -
                  b.terms()[0].coefficient) {
    throw std::overflow_error("ordinal coefficient overflow in add");
  }
  out.push_back(Ordinal::Term{lead, carry + b.terms()[0].coefficient});
  out.insert(out.end(), b.terms().begin() + 1, b.terms().end());
  return Ordinal::from_terms(std::move(out));
}

namespace {

// Printing. The exponent is bare when it is a natural or a single term with
// coefficient 1; otherwise it is parenthesised.
bool exponent_needs_parens(const Ordinal& e) {
  if (e.is_natural()) return false;
  return e.terms().size() > 1 || e.terms()[0].coefficient != 1;
}

void print_ordinal(const Ordinal& x, std::string& out);

void print_term(const Ordinal::Term& t, std::string& out) {
  if (t.exponent.is_zero()) {
    out += std::to_string(t.coefficient);
    return;
  }
  out += 'w';
  if (!(t.exponent.is_natural() && t.exponent.natural_value() == 1)) {
    out += '^';
    if (exponent_needs_parens(t.exponent)) {
      out += '(';
      print_ordinal(t.exponent, out);
      out += ')';
    } else {
      print_ordinal(t.exponent, out);
    }
  }
  if (t.coefficient != 1) {
    out += '*';
    out += std::to_string(t.coefficient);
  }
}

void print_ordinal(const Ordinal& x, std::string& out) {
  if (x.is_zero()) {
    out += '0';
    return;
  }
  for (std::size_t i = 0; i < x.terms().size(); ++i) {
    if (i > 0) out += '+';
    print_term(x.terms()[i], out);
  }
}

// Strict canonical parser: recursive descent over
//   ordinal   := '0' | term ('+' term)*
//   term      := nat | 'w' ('^' expfactor)? ('*' nat)?
//   expfactor := nat>=2 | 'w' ('^' expfactor)? | '(' ordinal ')'
// with the non-canonical spellings rejected after the fact.
struct Parser {
  const std::string& text;
  std::size_t pos = 0;
  std::size_t max_depth;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("ordinal parse error at position " +
                                std::to_string(pos) + ": " + what);
  }

  char peek() const { return pos < text.size() ? text[pos] : '\0'; }
  bool eat(char c) {
    if (peek() != c) return false;
    ++pos;
    return true;
  }

  std::uint64_t number() {
    if (peek() < '0' || peek() > '9') fail("expected a digit");
    if (peek() == '0' && pos + 1 < text.size() && text[pos + 1] >= '0' &&
        text[pos + 1] <= '9') {
      fail("leading zero");
    }
    std::uint64_t v = 0;
    while (peek() >= '0' && peek() <= '9') {
      std::uint64_t d = static_cast<std::uint64_t>(peek() - '0');
      if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10) {
        fail("number overflows 64 bits");
      }
      v = v * 10 + d;
      ++pos;
    }
    return v;
  }

  Ordinal expfactor() {
    if (eat('(')) {
      Ordinal inner = ordinal();
      if (!eat(')')) fail("expected ')'");
      if (!exponent_needs_parens(inner)) fail("redundant parentheses");
      return inner;
    }
    if (eat('w')) {
      Ordinal e = Ordinal::natural(1);
      if (eat('^')) e = expfactor();
      return Ordinal::omega_power(e, 1, max_depth);
    }
    std::uint64_t n = number();
    if (n < 2) fail("bare exponent must be at least 2");
    return Ordinal::natural(n);
  }

  Ordinal::Term term() {
    if (peek() >= '0' && peek() <= '9') {
      std::uint64_t n = number();
      if (n == 0) fail("zero is not a term");
      return Ordinal::Term{Ordinal(), n};
    }
    if (!eat('w')) fail("expected 'w' or a number");
    Ordinal e = Ordinal::natural(1);
    if (eat('^')) e = expfactor();
    std::uint64_t c = 1;
    if (eat('*')) {
      c = number();
      if (c < 2) fail("explicit coefficient must be at least 2");
    }
    return Ordinal::Term{e, c};
  }

  Ordinal ordinal() {
    if (peek() == '0' &&
        !(pos + 1 < text.size() && text[pos + 1] >= '0' && text[pos + 1] <= '9')) {
      ++pos;
      return Ordinal();
    }
    std::vector<Ordinal::Term> terms;
    terms.push_back(term());
    while (eat('+')) terms.push_back(term());
    for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
      if (cmp(terms[i].exponent, terms[i + 1].exponent) <= 0) {
        fail("terms must have strictly decreasing exponents");
      }
    }
    return Ordinal::from_terms(std::move(terms), max_depth);
  }
};

}  // namespace

std::string Ordinal::to_string() const {
  std::string out;
  print_ordinal(*this, out);
  return out;
}

Ordinal Ordinal::parse(const std::string& text, std::size_t max_depth) {
  Parser p{text, 0, max_depth};
  Ordinal x = p.ordinal();
  if (p.pos != text.size()) p.fail("trailing characters");
  return x;
}

}  // namespace fsr
