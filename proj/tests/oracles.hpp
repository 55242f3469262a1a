// oracles.hpp
// Slow, obviously-correct reference implementations used only by tests.

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> primes_upto(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    if (is_prime(n)) out.push_back(n);
  }
  return out;
}

// li(x) - li(2) by the Ramanujan series for li.
inline double li_offset(double x) {
  const long double gamma = 0.57721566490153286060651209008240243L;
  const long double lx = std::log(static_cast<long double>(x));
  long double sum = 0.0L;
  long double term_fact = 1.0L;  // (-1)^(n-1) (ln x)^n / (n! 2^(n-1))
  long double inner = 0.0L;      // sum_{k=0}^{floor((n-1)/2)} 1/(2k+1)
  for (int n = 1; n < 400; ++n) {
    if (n == 1) {
      term_fact = lx;
    } else {
      term_fact *= -lx / (2.0L * n);
    }
    if ((n - 1) % 2 == 0) inner += 1.0L / n;
    const long double term = term_fact * inner;
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum) && n > 2 * lx) break;
  }
  const long double li = gamma + std::log(lx) + std::sqrt(static_cast<long double>(x)) * sum;
  return static_cast<double>(li - 1.04516378011749278484458888919461313652261557815120157583290914407501320521L);
}

}  // namespace oracle
