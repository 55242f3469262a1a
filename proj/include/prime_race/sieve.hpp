// sieve.hpp
// Segmented sieve of Eratosthenes over odd integers, one bit per odd number.
// 2 is handled out of band; every other even number is composite.
//
// Encoding inside a window:
//   bit i  ->  odd number first_odd() + 2*i
//
// A window may extend past the end of its segment ("extension") so that
// p + gap can be tested for every prime p in the segment without touching
// an unsieved boundary. Primes are only reported for the core bits.

#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "prime_race/errors.hpp"

namespace prime_race::sieve {

inline constexpr std::uint64_t kLongRunThreshold = 1'000'000'000ULL;
inline constexpr std::uint64_t kHardCap = 10'000'000'000ULL;
inline constexpr std::uint64_t kDefaultSegmentSize = std::uint64_t{1} << 18;

enum class LongRun { forbidden, allowed };

// Upper end of a sieve run. Values above kLongRunThreshold need an explicit
// LongRun::allowed; nothing above kHardCap is accepted.
class SieveLimit {
 public:
  explicit SieveLimit(std::uint64_t value, LongRun policy = LongRun::forbidden);

  std::uint64_t value() const noexcept { return value_; }
  bool long_running() const noexcept { return value_ > kLongRunThreshold; }

 private:
  std::uint64_t value_;
};

// segment_size counts odd entries (bits) sieved per pass.
struct SegmentPlan {
  std::uint64_t segment_size = kDefaultSegmentSize;

  void validate() const;
};

std::uint64_t isqrt(std::uint64_t n) noexcept;
std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept;

// Base-prime limit used for a run up to `limit`: floor(sqrt(limit)).
inline std::uint64_t base_primes_limit(std::uint64_t limit) noexcept { return isqrt(limit); }

// All primes <= limit by a plain (unsegmented) sieve. Used for base primes
// and small factorisations.
std::vector<std::uint32_t> small_primes(std::uint32_t limit);

// Distinct prime divisors of n, ascending.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

// Residues 0 <= a < q with gcd(a, q) = 1, ascending. For q = 1 this is {0}.
std::vector<std::uint32_t> coprime_residues(std::uint32_t q);

struct ProgressionSpec {
  std::uint32_t modulus = 1;
  std::uint32_t residue = 0;

  // Throws DomainError unless q >= 1, 0 <= a < q and gcd(a, q) = 1.
  void validate_for_counting() const;
};

// pi(x; q, a) for every residue a coprime to q, at one checkpoint x.
struct ResidueCounts {
  std::uint32_t modulus = 1;
  std::uint64_t x = 0;
  std::map<std::uint32_t, std::uint64_t> counts;

  std::uint64_t at(std::uint32_t residue) const;
  std::uint64_t total() const noexcept;

  bool operator==(const ResidueCounts&) const = default;
};

// pi(x) recovered from a ResidueCounts: the residue total plus the primes
// dividing q that are <= x.
std::uint64_t prime_count(const ResidueCounts& counts);

class SegmentedSieve {
 public:
  // Sieves the odd integers of [lo, hi] (only those >= 3). `extension`
  // widens each window by that many integers past the segment end.
  SegmentedSieve(std::uint64_t lo, std::uint64_t hi, const SegmentPlan& plan,
                 std::uint64_t extension = 0);

  // Sieves the next segment. Returns false once [lo, hi] is exhausted.
  bool next();

  std::uint64_t first_odd() const noexcept { return window_first_; }
  std::uint64_t core_bits() const noexcept { return core_bits_; }
  std::uint64_t window_bits() const noexcept { return window_bits_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  // `offset_bits` is relative to bit 0 of the current window.
  bool test_bit(std::uint64_t offset_bits) const noexcept {
    return (words_[offset_bits >> 6] >> (offset_bits & 63)) & 1U;
  }

 private:
  void sieve_window();

  std::uint64_t first_;       // first odd >= max(lo, 3)
  std::uint64_t last_;        // last odd <= hi
  std::uint64_t extension_bits_;
  std::uint64_t max_value_;   // hi + extension
  std::uint64_t segment_bits_;
  std::uint64_t next_first_;  // first odd of the next segment
  bool exhausted_;

  std::uint64_t window_first_ = 0;
  std::uint64_t core_bits_ = 0;
  std::uint64_t window_bits_ = 0;
  std::vector<std::uint32_t> base_primes_;  // odd primes <= sqrt(max_value_)
  std::vector<std::uint64_t> words_;
};

namespace detail {

// Calls fn(bit) for every set bit below `bit_limit`, ascending.
template <class Fn>
inline void for_each_set_bit(std::span<const std::uint64_t> words, std::uint64_t bit_limit,
                             Fn&& fn) {
  const std::uint64_t full_words = bit_limit >> 6;
  for (std::uint64_t w = 0; w < full_words; ++w) {
    std::uint64_t word = words[w];
    while (word != 0) {
      fn((w << 6) + static_cast<std::uint64_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  const std::uint64_t tail = bit_limit & 63;
  if (tail != 0) {
    std::uint64_t word = words[full_words] & ((std::uint64_t{1} << tail) - 1);
    while (word != 0) {
      fn((full_words << 6) + static_cast<std::uint64_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
}

}  // namespace detail

// Visits every prime in [lo, hi] in ascending order; returns how many.
template <class Visitor>
std::uint64_t for_each_prime_in(std::uint64_t lo, std::uint64_t hi, const SegmentPlan& plan,
                                Visitor&& visit) {
  plan.validate();
  if (hi < lo || hi < 2) return 0;
  std::uint64_t count = 0;
  if (lo <= 2) {
    visit(std::uint64_t{2});
    ++count;
  }
  if (hi < 3) return count;
  SegmentedSieve sieve(lo, hi, plan);
  while (sieve.next()) {
    const std::uint64_t base = sieve.first_odd();
    detail::for_each_set_bit(sieve.words(), sieve.core_bits(), [&](std::uint64_t bit) {
      visit(base + 2 * bit);
      ++count;
    });
  }
  return count;
}

// Visitor invoked once per prime <= limit, ascending. Returns pi(limit).
template <class Visitor>
std::uint64_t enumerate_primes(const SieveLimit& limit, const SegmentPlan& plan,
                               Visitor&& visit) {
  return for_each_prime_in(2, limit.value(), plan, std::forward<Visitor>(visit));
}

// pi(hi) - pi(lo - 1) by popcount; no per-prime callback.
std::uint64_t count_primes_in(std::uint64_t lo, std::uint64_t hi, const SegmentPlan& plan = {});

std::uint64_t prime_pi(const SieveLimit& limit, const SegmentPlan& plan = {});

// Throws DomainError unless every gap is even and >= 2; CapacityError when
// limit + max gap passes the hard cap. Returns the largest gap.
std::uint32_t validate_gaps(std::uint64_t limit, std::span<const std::uint32_t> gaps);

// Calls visit(p, gap_index) for each prime p in [lo, hi] and each gap with
// p + gaps[gap_index] prime. Ascending in p; for equal p, ascending index.
template <class Visitor>
void for_each_prime_pair_in(std::uint64_t lo, std::uint64_t hi,
                            std::span<const std::uint32_t> gaps, const SegmentPlan& plan,
                            Visitor&& visit) {
  plan.validate();
  const std::uint32_t max_gap = validate_gaps(hi, gaps);
  if (hi < lo || hi < 3) return;
  SegmentedSieve sieve(lo, hi, plan, max_gap);
  while (sieve.next()) {
    const std::uint64_t base = sieve.first_odd();
    detail::for_each_set_bit(sieve.words(), sieve.core_bits(), [&](std::uint64_t bit) {
      for (std::size_t g = 0; g < gaps.size(); ++g) {
        if (sieve.test_bit(bit + gaps[g] / 2)) visit(base + 2 * bit, g);
      }
    });
  }
}

// Visits each p <= limit with p and p + gap both prime. Returns pi_gap(limit).
template <class Visitor>
std::uint64_t enumerate_prime_pairs(const SieveLimit& limit, std::uint32_t gap,
                                    const SegmentPlan& plan, Visitor&& visit) {
  const std::uint32_t gaps[] = {gap};
  std::uint64_t count = 0;
  for_each_prime_pair_in(2, limit.value(), gaps, plan, [&](std::uint64_t p, std::size_t) {
    visit(p);
    ++count;
  });
  return count;
}

// Exact pi(x; q, a) for every a coprime to q at each checkpoint, in one pass.
// Checkpoints must be strictly ascending and <= limit. Work is split into
// `workers` contiguous ranges whose partial tallies are merged.
std::vector<ResidueCounts> count_in_progressions(const SieveLimit& limit, std::uint32_t q,
                                                 std::span<const std::uint64_t> checkpoints,
                                                 const SegmentPlan& plan = {},
                                                 unsigned workers = 1);

// Throws DomainError unless strictly ascending and <= limit.
void validate_checkpoints(std::uint64_t limit, std::span<const std::uint64_t> checkpoints);

}  // namespace prime_race::sieve
