#pragma once
//
// The witness function f: a lazily built assignment of finite subsets of
// naturals to positions, with f(k) always a subset of {0,...,k-1}, such
// that every requirement "f(m + n*k) equals the target set Omega for
// infinitely many k" (n >= 1, Omega within {0,...,63}) keeps being
// fulfilled forever.
//
// Construction is a deterministic fair scheduler instead of a genericity
// argument. Requirements enter a queue in two ways: a background diagonal
// enumeration of all triples (m, n, Omega-code) by ascending m + n + code
// (lexicographic within a diagonal), and explicit request_fulfillment
// calls, which enqueue on first use and service immediately. One scheduler
// round enrolls the next background requirement and then services every
// enrolled requirement once, in enrollment order. Servicing a requirement
// picks the least position m + n*k at or beyond the frontier that can hold
// Omega (position strictly above max(Omega)), assigns it, and moves the
// frontier past it; positions below the frontier are final, so evaluation
// is stable. Unassigned positions read as the empty set.
//
// The table is a pure function of the call sequence: identical sequences
// of eval / request_fulfillment calls rebuild identical tables. All public
// methods serialize on an internal mutex, so concurrent readers always
// observe a consistent table.

#include <cstdint>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace fsr {

struct WitnessRequirement {
  std::uint64_t m = 0;
  std::uint64_t n = 1;      // step; must be >= 1
  std::uint64_t omega = 0;  // target set as a bitmask over {0,...,63}

  friend bool operator==(const WitnessRequirement& a,
                         const WitnessRequirement& b) {
    return a.m == b.m && a.n == b.n && a.omega == b.omega;
  }
};

class WitnessF {
 public:
  WitnessF() = default;

  // f(k) as a bitmask; runs scheduler rounds until position k is final.
  std::uint64_t eval_mask(std::uint64_t k);
  // f(k) as an increasing list of naturals.
  std::vector<std::uint64_t> eval(std::uint64_t k);

  // Ensures a recorded fulfillment of r with multiplier k >= min_k, i.e.
  // f(r.m + r.n * k) == r.omega, servicing the requirement immediately when
  // no logged fulfillment qualifies. Returns the least such logged k.
  // invalid_argument when r.n == 0.
  std::uint64_t request_fulfillment(const WitnessRequirement& r,
                                    std::uint64_t min_k = 0);

  // Multipliers k recorded for r so far, in increasing order.
  std::vector<std::uint64_t> fulfillments(const WitnessRequirement& r) const;

  // Positions strictly below the frontier are final.
  std::uint64_t frontier() const;

  // Number of assigned positions (diagnostic).
  std::size_t assigned_count() const;

 private:
  struct Enrolled {
    WitnessRequirement req;
    std::vector<std::uint64_t> ks;
  };

  std::uint64_t eval_mask_impl(std::uint64_t k);
  void run_round();
  void enroll_next_background();
  std::size_t enroll(const WitnessRequirement& r);
  std::uint64_t service(Enrolled& e, std::uint64_t min_k);

  mutable std::mutex mu_;
  std::map<std::uint64_t, std::uint64_t> table_;  // position -> mask
  std::uint64_t frontier_ = 0;
  std::vector<Enrolled> enrolled_;
  std::map<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>,
           std::size_t>
      enrolled_index_;
  // Background cursor over diagonals s = m + n + code, n >= 1.
  std::uint64_t bg_s_ = 1;
  std::uint64_t bg_m_ = 0;
  std::uint64_t bg_n_ = 1;
};

}  // namespace fsr
