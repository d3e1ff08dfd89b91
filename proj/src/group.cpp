#include "fsr/group.hpp"

#include <algorithm>
#include <stdexcept>

namespace fsr {

namespace {

mpz_class pow_u64(std::uint64_t base, std::uint32_t exp) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base),
                static_cast<unsigned long>(exp));
  return r;
}

mpz_class mod_nonneg(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

RationalValue::RationalValue(mpz_class numerator, mpz_class denominator) {
  if (denominator == 0) {
    throw std::invalid_argument("rational with zero denominator");
  }
  q_ = mpq_class(std::move(numerator), std::move(denominator));
  q_.canonicalize();
}

RationalValue RationalValue::integer(mpz_class n) {
  return RationalValue(std::move(n), 1);
}

RationalValue RationalValue::plus(const RationalValue& other) const {
  RationalValue r;
  r.q_ = q_ + other.q_;
  return r;
}

RationalValue RationalValue::negated() const {
  RationalValue r;
  r.q_ = -q_;
  return r;
}

RationalValue RationalValue::times(const mpz_class& n) const {
  RationalValue r;
  r.q_ = q_ * n;
  r.q_.canonicalize();
  return r;
}

RationalValue RationalValue::divided_by(const mpz_class& n) const {
  if (n == 0) throw std::invalid_argument("division by zero");
  RationalValue r;
  r.q_ = q_ / mpq_class(n);
  r.q_.canonicalize();
  return r;
}

PruferValue::PruferValue(std::uint64_t p) : p_(p), a_(0), n_(0) {
  if (!is_prime_u64(p)) {
    throw std::invalid_argument("Prufer group parameter must be prime, got " +
                                std::to_string(p));
  }
}

PruferValue::PruferValue(std::uint64_t p, mpz_class a, std::uint32_t n)
    : p_(p), a_(std::move(a)), n_(n) {
  if (!is_prime_u64(p)) {
    throw std::invalid_argument("Prufer group parameter must be prime, got " +
                                std::to_string(p));
  }
  canonicalise();
}

void PruferValue::canonicalise() {
  a_ = mod_nonneg(a_, pow_u64(p_, n_));
  while (a_ != 0 && mpz_divisible_ui_p(a_.get_mpz_t(),
                                       static_cast<unsigned long>(p_))) {
    mpz_divexact_ui(a_.get_mpz_t(), a_.get_mpz_t(),
                    static_cast<unsigned long>(p_));
    --n_;
  }
  if (a_ == 0) n_ = 0;
}

mpz_class PruferValue::order() const { return pow_u64(p_, n_); }

PruferValue PruferValue::plus(const PruferValue& other) const {
  if (p_ != other.p_) {
    throw std::invalid_argument("adding Prufer cosets of different primes");
  }
  std::uint32_t k = std::max(n_, other.n_);
  mpz_class lifted = a_ * pow_u64(p_, k - n_) +
                     other.a_ * pow_u64(p_, k - other.n_);
  return PruferValue(p_, std::move(lifted), k);
}

PruferValue PruferValue::negated() const {
  if (is_zero()) return *this;
  return PruferValue(p_, order() - a_, n_);
}

PruferValue PruferValue::times(const mpz_class& n) const {
  return PruferValue(p_, a_ * n, n_);
}

PruferValue PruferValue::divided_by(const mpz_class& n) const {
  if (n < 1) throw std::invalid_argument("divide expects a positive factor");
  if (is_zero()) return *this;
  mpz_class coprime = n;
  std::uint32_t lift = 0;
  while (mpz_divisible_ui_p(coprime.get_mpz_t(),
                            static_cast<unsigned long>(p_))) {
    mpz_divexact_ui(coprime.get_mpz_t(), coprime.get_mpz_t(),
                    static_cast<unsigned long>(p_));
    ++lift;
  }
  const std::uint32_t k = n_ + lift;
  const mpz_class modulus = pow_u64(p_, k);
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), coprime.get_mpz_t(), modulus.get_mpz_t()) ==
      0) {
    throw std::logic_error("no inverse of a p-coprime factor");
  }
  return PruferValue(p_, a_ * inv, k);
}

std::string PruferValue::to_string() const {
  if (is_zero()) return "0";
  return a_.get_str() + "/" + order().get_str();
}

bool value_is_zero(const CoordinateValue& v) {
  return std::visit([](const auto& x) { return x.is_zero(); }, v);
}

CoordinateValue value_add(const CoordinateValue& a, const CoordinateValue& b) {
  if (a.index() != b.index()) {
    throw std::invalid_argument("adding values of different coordinate kinds");
  }
  if (std::holds_alternative<RationalValue>(a)) {
    return std::get<RationalValue>(a).plus(std::get<RationalValue>(b));
  }
  return std::get<PruferValue>(a).plus(std::get<PruferValue>(b));
}

CoordinateValue value_negate(const CoordinateValue& v) {
  return std::visit([](const auto& x) { return CoordinateValue(x.negated()); },
                    v);
}

CoordinateValue value_zmul(const mpz_class& n, const CoordinateValue& v) {
  return std::visit([&](const auto& x) { return CoordinateValue(x.times(n)); },
                    v);
}

CoordinateValue value_divide(const mpz_class& n, const CoordinateValue& v) {
  return std::visit(
      [&](const auto& x) { return CoordinateValue(x.divided_by(n)); }, v);
}

std::string value_to_string(const CoordinateValue& v) {
  return std::visit([](const auto& x) { return x.to_string(); }, v);
}

std::optional<mpz_class> element_order(const CoordinateValue& v) {
  if (value_is_zero(v)) return mpz_class(1);
  if (std::holds_alternative<RationalValue>(v)) return std::nullopt;
  return std::get<PruferValue>(v).order();
}

GroupSignature::GroupSignature(std::vector<Coordinate> coordinates)
    : coords_(std::move(coordinates)) {
  for (Coordinate& c : coords_) {
    if (c.kind == Kind::rational) {
      c.p = 0;
    } else if (!is_prime_u64(c.p)) {
      throw std::invalid_argument(
          "signature declares a Prufer coordinate with non-prime " +
          std::to_string(c.p));
    }
  }
  std::sort(coords_.begin(), coords_.end(),
            [](const Coordinate& a, const Coordinate& b) {
              return a.index < b.index;
            });
  for (std::size_t i = 0; i + 1 < coords_.size(); ++i) {
    if (cmp(coords_[i].index, coords_[i + 1].index) == 0) {
      throw std::invalid_argument("signature declares coordinate " +
                                  coords_[i].index.to_string() + " twice");
    }
  }
}

const GroupSignature::Coordinate* GroupSignature::find(
    const Ordinal& index) const {
  auto it = std::lower_bound(coords_.begin(), coords_.end(), index,
                             [](const Coordinate& c, const Ordinal& a) {
                               return c.index < a;
                             });
  if (it == coords_.end() || cmp(it->index, index) != 0) return nullptr;
  return &*it;
}

CoordinateValue GroupSignature::zero_value(const Ordinal& index) const {
  const Coordinate* c = find(index);
  if (c == nullptr) {
    throw std::domain_error("coordinate " + index.to_string() +
                            " is not in the signature");
  }
  if (c->kind == Kind::rational) return RationalValue();
  return PruferValue(c->p);
}

std::string GroupSignature::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i > 0) out += ',';
    out += coords_[i].index.to_string();
    out += ':';
    if (coords_[i].kind == Kind::rational) {
      out += 'Q';
    } else {
      out += "Z(" + std::to_string(coords_[i].p) + "^inf)";
    }
  }
  out += ']';
  return out;
}

bool operator==(const GroupSignature& a, const GroupSignature& b) {
  if (a.coords_.size() != b.coords_.size()) return false;
  for (std::size_t i = 0; i < a.coords_.size(); ++i) {
    if (cmp(a.coords_[i].index, b.coords_[i].index) != 0 ||
        a.coords_[i].kind != b.coords_[i].kind ||
        a.coords_[i].p != b.coords_[i].p) {
      return false;
    }
  }
  return true;
}

SignaturePtr make_signature(std::vector<GroupSignature::Coordinate> coords) {
  return std::make_shared<const GroupSignature>(std::move(coords));
}

namespace {

bool same_signature(const SignaturePtr& a, const SignaturePtr& b) {
  return a == b || (a && b && *a == *b);
}

void check_entry_kind(const GroupSignature& sig,
                      const DirectSumElement::Entry& e) {
  const GroupSignature::Coordinate* c = sig.find(e.first);
  if (c == nullptr) {
    throw std::invalid_argument("entry at " + e.first.to_string() +
                                " is outside the signature");
  }
  if (c->kind == GroupSignature::Kind::rational) {
    if (!std::holds_alternative<RationalValue>(e.second)) {
      throw std::invalid_argument("coordinate " + e.first.to_string() +
                                  " expects a rational value");
    }
  } else {
    if (!std::holds_alternative<PruferValue>(e.second) ||
        std::get<PruferValue>(e.second).p() != c->p) {
      throw std::invalid_argument("coordinate " + e.first.to_string() +
                                  " expects a Prufer value for p = " +
                                  std::to_string(c->p));
    }
  }
}

}  // namespace

DirectSumElement::DirectSumElement(SignaturePtr sig) : sig_(std::move(sig)) {
  if (!sig_) throw std::invalid_argument("element without a signature");
}

DirectSumElement::DirectSumElement(SignaturePtr sig,
                                   std::vector<Entry> entries)
    : sig_(std::move(sig)) {
  if (!sig_) throw std::invalid_argument("element without a signature");
  for (const Entry& e : entries) check_entry_kind(*sig_, e);
  std::erase_if(entries, [](const Entry& e) { return value_is_zero(e.second); });
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
    if (cmp(entries[i].first, entries[i + 1].first) == 0) {
      throw std::invalid_argument("duplicate entry at " +
                                  entries[i].first.to_string());
    }
  }
  entries_ = std::move(entries);
}

CoordinateValue DirectSumElement::at(const Ordinal& index) const {
  if (!sig_) throw std::domain_error("coordinate outside the signature");
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, const Ordinal& a) {
                               return e.first < a;
                             });
  if (it != entries_.end() && cmp(it->first, index) == 0) return it->second;
  return sig_->zero_value(index);
}

FiniteOrdinalSet DirectSumElement::support() const {
  std::vector<Ordinal> idx;
  idx.reserve(entries_.size());
  for (const Entry& e : entries_) idx.push_back(e.first);
  return FiniteOrdinalSet(std::move(idx));
}

std::string DirectSumElement::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i > 0) out += ',';
    out += entries_[i].first.to_string();
    out += ':';
    out += value_to_string(entries_[i].second);
  }
  out += ')';
  return out;
}

bool operator==(const DirectSumElement& a, const DirectSumElement& b) {
  if (!same_signature(a.signature(), b.signature())) return false;
  if (a.entries().size() != b.entries().size()) return false;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    if (cmp(a.entries()[i].first, b.entries()[i].first) != 0 ||
        !(a.entries()[i].second == b.entries()[i].second)) {
      return false;
    }
  }
  return true;
}

DirectSumElement add(const DirectSumElement& a, const DirectSumElement& b) {
  if (!same_signature(a.signature(), b.signature())) {
    throw std::invalid_argument("adding elements of different signatures");
  }
  std::vector<DirectSumElement::Entry> out;
  out.reserve(a.entries().size() + b.entries().size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.entries().size() && j < b.entries().size()) {
    int c = cmp(a.entries()[i].first, b.entries()[j].first);
    if (c < 0) {
      out.push_back(a.entries()[i++]);
    } else if (c > 0) {
      out.push_back(b.entries()[j++]);
    } else {
      CoordinateValue v = value_add(a.entries()[i].second,
                                    b.entries()[j].second);
      if (!value_is_zero(v)) {
        out.emplace_back(a.entries()[i].first, std::move(v));
      }
      ++i;
      ++j;
    }
  }
  for (; i < a.entries().size(); ++i) out.push_back(a.entries()[i]);
  for (; j < b.entries().size(); ++j) out.push_back(b.entries()[j]);
  return DirectSumElement(a.signature(), std::move(out));
}

DirectSumElement negate(const DirectSumElement& x) {
  std::vector<DirectSumElement::Entry> out;
  out.reserve(x.entries().size());
  for (const auto& e : x.entries()) {
    out.emplace_back(e.first, value_negate(e.second));
  }
  return DirectSumElement(x.signature(), std::move(out));
}

DirectSumElement zmul(const mpz_class& n, const DirectSumElement& x) {
  if (n == 0) return DirectSumElement(x.signature());
  std::vector<DirectSumElement::Entry> out;
  out.reserve(x.entries().size());
  for (const auto& e : x.entries()) {
    CoordinateValue v = value_zmul(n, e.second);
    if (!value_is_zero(v)) out.emplace_back(e.first, std::move(v));
  }
  return DirectSumElement(x.signature(), std::move(out));
}

DirectSumElement nmul(std::uint64_t n, const DirectSumElement& x) {
  return zmul(mpz_class(static_cast<unsigned long>(n)), x);
}

DirectSumElement divide(std::uint64_t n, const DirectSumElement& x) {
  if (n < 1) throw std::invalid_argument("divide expects a positive factor");
  const mpz_class nz(static_cast<unsigned long>(n));
  std::vector<DirectSumElement::Entry> out;
  out.reserve(x.entries().size());
  for (const auto& e : x.entries()) {
    out.emplace_back(e.first, value_divide(nz, e.second));
  }
  return DirectSumElement(x.signature(), std::move(out));
}

DirectSumElement sum_of(const std::vector<DirectSumElement>& xs) {
  if (xs.empty()) throw std::invalid_argument("sum of an empty list");
  DirectSumElement acc = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) acc = add(acc, xs[i]);
  return acc;
}

}  // namespace fsr
