#include <algorithm>
#include <cmath>

#include "prime_race/special_functions.hpp"

namespace prime_race::analytic {

double chebyshev_psi(std::uint64_t x, std::span<const std::uint64_t> primes) {
  long double sum = 0.0L;
  for (std::uint64_t p : primes) {
    if (p > x) break;
    const long double lp = std::log(static_cast<long double>(p));
    for (std::uint64_t pk = p;; pk *= p) {
      sum += lp;
      if (pk > x / p) break;
    }
  }
  return static_cast<double>(sum);
}

double chebyshev_psi(std::uint64_t x, const sieve::SegmentPlan& plan) {
  const std::uint64_t xs[] = {x};
  return chebyshev_psi_at(xs, plan).front();
}

std::vector<double> chebyshev_psi_at(std::span<const std::uint64_t> checkpoints,
                                     const sieve::SegmentPlan& plan) {
  if (checkpoints.empty()) return {};
  sieve::validate_checkpoints(checkpoints.back(), checkpoints);
  const std::uint64_t hi = checkpoints.back();
  if (hi > sieve::kHardCap) throw CapacityError("psi limit exceeds hard cap");

  // bucket j collects ln p for prime powers in (checkpoints[j-1], checkpoints[j]]
  std::vector<long double> bucket(checkpoints.size(), 0.0L);
  auto bucket_of = [&](std::uint64_t v) {
    return static_cast<std::size_t>(
        std::lower_bound(checkpoints.begin(), checkpoints.end(), v) - checkpoints.begin());
  };
  std::size_t j = 0;
  sieve::for_each_prime_in(2, hi, plan, [&](std::uint64_t p) {
    while (checkpoints[j] < p) ++j;
    const long double lp = std::log(static_cast<long double>(p));
    bucket[j] += lp;
    if (p <= hi / p) {
      for (std::uint64_t pk = p * p;; pk *= p) {
        bucket[bucket_of(pk)] += lp;
        if (pk > hi / p) break;
      }
    }
  });

  std::vector<double> out;
  long double running = 0.0L;
  for (long double b : bucket) {
    running += b;
    out.push_back(static_cast<double>(running));
  }
  return out;
}

bool psi_rh_inequality_check(double x, double psi_value) {
  if (!(x >= 100.0)) throw DomainError("the psi inequality is only asserted for x >= 100");
  const double lx = std::log(x);
  return std::fabs(psi_value - x) <= 2.0 * std::sqrt(x) * lx * lx;
}

}  // namespace prime_race::analytic
