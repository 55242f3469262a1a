#include "prime_race/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

namespace prime_race::sieve {

namespace {

constexpr std::uint64_t kMaxModulus = 1'000'000;

}  // namespace

SieveLimit::SieveLimit(std::uint64_t value, LongRun policy) : value_(value) {
  if (value < 2) throw DomainError("sieve limit must be at least 2");
  if (value > kHardCap) {
    throw CapacityError("sieve limit " + std::to_string(value) + " exceeds hard cap 10^10");
  }
  if (value > kLongRunThreshold && policy != LongRun::allowed) {
    throw CapacityError("sieve limit " + std::to_string(value) +
                        " is above 10^9; long-running mode must be enabled explicitly");
  }
}

void SegmentPlan::validate() const {
  if (segment_size < 2) throw DomainError("segment_size must be at least 2");
}

std::uint64_t isqrt(std::uint64_t n) noexcept {
  if (n < 2) return n;
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept {
  while (b != 0) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::vector<std::uint32_t> small_primes(std::uint32_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<std::uint8_t> composite(static_cast<std::size_t>(limit) + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return primes;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<std::uint32_t> coprime_residues(std::uint32_t q) {
  if (q == 0) throw DomainError("modulus must be at least 1");
  if (q == 1) return {0};
  std::vector<std::uint32_t> out;
  for (std::uint32_t a = 1; a < q; ++a) {
    if (gcd(a, q) == 1) out.push_back(a);
  }
  return out;
}

void ProgressionSpec::validate_for_counting() const {
  if (modulus < 1) throw DomainError("modulus must be at least 1");
  if (residue >= modulus) throw DomainError("residue must satisfy 0 <= a < q");
  if (gcd(residue, modulus) != 1) {
    throw DomainError("residue " + std::to_string(residue) + " is not coprime to " +
                      std::to_string(modulus));
  }
}

std::uint64_t ResidueCounts::at(std::uint32_t residue) const {
  auto it = counts.find(residue);
  if (it == counts.end()) {
    throw DomainError("residue " + std::to_string(residue) + " not tracked mod " +
                      std::to_string(modulus));
  }
  return it->second;
}

std::uint64_t ResidueCounts::total() const noexcept {
  std::uint64_t sum = 0;
  for (const auto& [r, c] : counts) sum += c;
  return sum;
}

std::uint64_t prime_count(const ResidueCounts& counts) {
  std::uint64_t extra = 0;
  for (std::uint64_t p : prime_divisors(counts.modulus)) {
    if (p <= counts.x) ++extra;
  }
  return counts.total() + extra;
}

SegmentedSieve::SegmentedSieve(std::uint64_t lo, std::uint64_t hi, const SegmentPlan& plan,
                               std::uint64_t extension)
    : first_(std::max<std::uint64_t>(lo, 3) | 1U),
      last_((hi & 1U) ? hi : hi - 1),
      extension_bits_((extension + 1) / 2),
      max_value_(0),
      segment_bits_(plan.segment_size),
      next_first_(0),
      exhausted_(false) {
  plan.validate();
  if (hi < 3 || first_ > last_) {
    exhausted_ = true;
    return;
  }
  max_value_ = last_ + 2 * extension_bits_;
  for (std::uint32_t p : small_primes(static_cast<std::uint32_t>(isqrt(max_value_)))) {
    if (p != 2) base_primes_.push_back(p);
  }
  next_first_ = first_;
}

bool SegmentedSieve::next() {
  if (exhausted_ || next_first_ > last_) {
    exhausted_ = true;
    return false;
  }
  window_first_ = next_first_;
  core_bits_ = std::min(segment_bits_, (last_ - window_first_) / 2 + 1);
  window_bits_ = core_bits_ + extension_bits_;
  next_first_ = window_first_ + 2 * core_bits_;
  sieve_window();
  return true;
}

void SegmentedSieve::sieve_window() {
  const std::size_t n_words = static_cast<std::size_t>((window_bits_ + 63) / 64);
  words_.assign(n_words, ~std::uint64_t{0});
  if (window_bits_ & 63) words_.back() &= (std::uint64_t{1} << (window_bits_ & 63)) - 1;

  const std::uint64_t window_last = window_first_ + 2 * (window_bits_ - 1);
  for (std::uint32_t p32 : base_primes_) {
    const std::uint64_t p = p32;
    const std::uint64_t square = p * p;
    if (square > window_last) break;
    std::uint64_t start;
    if (square >= window_first_) {
      start = square;
    } else {
      start = (window_first_ + p - 1) / p * p;
      if ((start & 1U) == 0) start += p;
    }
    for (std::uint64_t i = (start - window_first_) / 2; i < window_bits_; i += p) {
      words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
  }
}

std::uint64_t count_primes_in(std::uint64_t lo, std::uint64_t hi, const SegmentPlan& plan) {
  plan.validate();
  if (hi < lo || hi < 2) return 0;
  std::uint64_t count = (lo <= 2) ? 1 : 0;
  if (hi < 3) return count;
  SegmentedSieve sieve(lo, hi, plan);
  while (sieve.next()) {
    const auto words = sieve.words();
    const std::uint64_t bits = sieve.core_bits();
    const std::uint64_t full = bits >> 6;
    for (std::uint64_t w = 0; w < full; ++w) count += std::popcount(words[w]);
    if (bits & 63) count += std::popcount(words[full] & ((std::uint64_t{1} << (bits & 63)) - 1));
  }
  return count;
}

std::uint64_t prime_pi(const SieveLimit& limit, const SegmentPlan& plan) {
  return count_primes_in(2, limit.value(), plan);
}

std::uint32_t validate_gaps(std::uint64_t limit, std::span<const std::uint32_t> gaps) {
  if (gaps.empty()) throw DomainError("at least one gap is required");
  std::uint32_t max_gap = 0;
  for (std::uint32_t g : gaps) {
    if (g < 2 || (g & 1U)) {
      throw DomainError("gap " + std::to_string(g) + " must be an even integer >= 2");
    }
    max_gap = std::max(max_gap, g);
  }
  if (limit > kHardCap - max_gap) {
    throw CapacityError("pair window exceeds hard cap");
  }
  return max_gap;
}

void validate_checkpoints(std::uint64_t limit, std::span<const std::uint64_t> checkpoints) {
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (i > 0 && checkpoints[i] <= checkpoints[i - 1]) {
      throw DomainError("checkpoints must be strictly ascending");
    }
    if (checkpoints[i] > limit) {
      throw DomainError("checkpoint " + std::to_string(checkpoints[i]) + " exceeds limit " +
                        std::to_string(limit));
    }
  }
}

std::vector<ResidueCounts> count_in_progressions(const SieveLimit& limit, std::uint32_t q,
                                                 std::span<const std::uint64_t> checkpoints,
                                                 const SegmentPlan& plan, unsigned workers) {
  if (q < 1) throw DomainError("modulus must be at least 1");
  if (q > kMaxModulus) throw CapacityError("modulus above 10^6 is not supported");
  plan.validate();
  validate_checkpoints(limit.value(), checkpoints);
  if (checkpoints.empty()) return {};

  const std::vector<std::uint32_t> residues = coprime_residues(q);
  std::vector<std::int32_t> slot(q, -1);
  for (std::size_t i = 0; i < residues.size(); ++i) slot[residues[i]] = static_cast<std::int32_t>(i);
  const std::size_t width = residues.size();
  const std::size_t n_cp = checkpoints.size();
  const std::uint64_t hi = checkpoints.back();

  // Bucket j holds primes in (checkpoints[j-1], checkpoints[j]].
  auto tally_range = [&](std::uint64_t lo_v, std::uint64_t hi_v, std::vector<std::uint64_t>& buckets) {
    buckets.assign(n_cp * width, 0);
    std::size_t j = static_cast<std::size_t>(
        std::lower_bound(checkpoints.begin(), checkpoints.end(), lo_v) - checkpoints.begin());
    for_each_prime_in(lo_v, hi_v, plan, [&](std::uint64_t p) {
      while (checkpoints[j] < p) ++j;
      const std::int32_t s = slot[p % q];
      if (s >= 0) ++buckets[j * width + static_cast<std::size_t>(s)];
    });
  };

  unsigned n_workers = std::max(1U, workers);
  if (hi < 2 * std::uint64_t{n_workers} * 1024) n_workers = 1;
  std::vector<std::vector<std::uint64_t>> partial(n_workers);
  if (n_workers == 1) {
    tally_range(2, hi, partial[0]);
  } else {
    const std::uint64_t span_len = (hi - 1) / n_workers;
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> failures(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) {
      const std::uint64_t lo_v = 2 + w * span_len;
      const std::uint64_t hi_v = (w + 1 == n_workers) ? hi : lo_v + span_len - 1;
      threads.emplace_back([&, w, lo_v, hi_v] {
        try {
          tally_range(lo_v, hi_v, partial[w]);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }

  std::vector<std::uint64_t> running(width, 0);
  std::vector<ResidueCounts> out;
  out.reserve(n_cp);
  for (std::size_t j = 0; j < n_cp; ++j) {
    for (const auto& part : partial) {
      for (std::size_t r = 0; r < width; ++r) running[r] += part[j * width + r];
    }
    ResidueCounts rc;
    rc.modulus = q;
    rc.x = checkpoints[j];
    for (std::size_t r = 0; r < width; ++r) rc.counts.emplace(residues[r], running[r]);
    out.push_back(std::move(rc));
  }
  return out;
}

}  // namespace prime_race::sieve
