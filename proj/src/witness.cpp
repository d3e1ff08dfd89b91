#include "fsr/witness.hpp"

#include <bit>
#include <stdexcept>

#include "fsr/errors.hpp"

namespace fsr {

namespace {

// Least admissible position for omega: strictly above its maximum element,
// i.e. at least the bit width of the mask.
std::uint64_t min_position_for(std::uint64_t omega) {
  return static_cast<std::uint64_t>(std::bit_width(omega));
}

}  // namespace

std::uint64_t WitnessF::eval_mask(std::uint64_t k) {
  std::lock_guard<std::mutex> lock(mu_);
  return eval_mask_impl(k);
}

std::vector<std::uint64_t> WitnessF::eval(std::uint64_t k) {
  std::uint64_t mask = eval_mask(k);
  std::vector<std::uint64_t> out;
  for (std::uint64_t b = 0; b < 64; ++b)
    if (mask & (std::uint64_t{1} << b)) out.push_back(b);
  return out;
}

std::uint64_t WitnessF::eval_mask_impl(std::uint64_t k) {
  while (frontier_ <= k) run_round();
  auto it = table_.find(k);
  return it == table_.end() ? 0 : it->second;
}

std::uint64_t WitnessF::frontier() const {
  std::lock_guard<std::mutex> lock(mu_);
  return frontier_;
}

std::size_t WitnessF::assigned_count() const {
  std::lock_guard<std::mutex> lock(mu_);
  return table_.size();
}

std::uint64_t WitnessF::request_fulfillment(const WitnessRequirement& r,
                                            std::uint64_t min_k) {
  if (r.n == 0)
    throw std::invalid_argument(
        "witness requirement needs step n >= 1: a zero step names the single "
        "position m, which cannot be revisited");
  std::lock_guard<std::mutex> lock(mu_);
  auto key = std::make_tuple(r.m, r.n, r.omega);
  auto it = enrolled_index_.find(key);
  std::size_t idx =
      it == enrolled_index_.end() ? enroll(r) : it->second;
  Enrolled& e = enrolled_[idx];
  for (std::uint64_t k : e.ks)
    if (k >= min_k) return k;
  return service(e, min_k);
}

std::vector<std::uint64_t> WitnessF::fulfillments(
    const WitnessRequirement& r) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = enrolled_index_.find(std::make_tuple(r.m, r.n, r.omega));
  if (it == enrolled_index_.end()) return {};
  return enrolled_[it->second].ks;
}

void WitnessF::run_round() {
  enroll_next_background();
  // Service every requirement enrolled at the start of the round once, in
  // enrollment order. Servicing never enrolls, so the bound is stable.
  std::size_t count = enrolled_.size();
  for (std::size_t i = 0; i < count; ++i) service(enrolled_[i], 0);
}

void WitnessF::enroll_next_background() {
  // Walk the diagonal enumeration until a triple not yet enrolled appears.
  // Explicit requests can pre-enroll only finitely many triples, so the
  // walk terminates.
  for (;;) {
    WitnessRequirement r{bg_m_, bg_n_, bg_s_ - bg_m_ - bg_n_};
    if (bg_n_ < bg_s_ - bg_m_) {
      ++bg_n_;
    } else if (bg_m_ + 1 < bg_s_) {
      ++bg_m_;
      bg_n_ = 1;
    } else {
      ++bg_s_;
      bg_m_ = 0;
      bg_n_ = 1;
    }
    if (enrolled_index_.find(std::make_tuple(r.m, r.n, r.omega)) ==
        enrolled_index_.end()) {
      enroll(r);
      return;
    }
  }
}

std::size_t WitnessF::enroll(const WitnessRequirement& r) {
  std::size_t idx = enrolled_.size();
  enrolled_.push_back(Enrolled{r, {}});
  enrolled_index_.emplace(std::make_tuple(r.m, r.n, r.omega), idx);
  return idx;
}

std::uint64_t WitnessF::service(Enrolled& e, std::uint64_t min_k) {
  const std::uint64_t m = e.req.m;
  const std::uint64_t n = e.req.n;
  std::uint64_t lower = frontier_;
  if (std::uint64_t floor = min_position_for(e.req.omega); floor > lower)
    lower = floor;
  std::uint64_t k_floor = lower > m ? (lower - m + n - 1) / n : 0;
  std::uint64_t k = min_k > k_floor ? min_k : k_floor;
  if (k != 0 && n > (UINT64_MAX - m) / k)
    throw resource_error("witness table position overflows 64 bits");
  std::uint64_t pos = m + n * k;
  table_[pos] = e.req.omega;
  frontier_ = pos + 1;
  e.ks.push_back(k);
  return k;
}

}  // namespace fsr
