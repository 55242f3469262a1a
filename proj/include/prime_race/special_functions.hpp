// special_functions.hpp
// Logarithmic integrals, Chebyshev psi, zeta / Dirichlet L evaluation for
// Re s > 0, and zero finding on the critical line.

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "prime_race/errors.hpp"
#include "prime_race/sieve.hpp"

namespace prime_race::analytic {

using ComplexValue = std::complex<double>;

// ---- quadrature ----------------------------------------------------------

struct QuadratureConfig {
  double abs_tol = 1e-9;
  int max_depth = 60;

  void validate() const;
};

// Integral of 1/ln t over [2, x]. The tolerance actually honoured is
// max(abs_tol, 64 * eps * |result|).
double li(double x, const QuadratureConfig& cfg = {});

// Integral of 1/(ln t)^2 over [2, x].
double li2(double x, const QuadratureConfig& cfg = {});

// Li(x) - Li(sqrt x) / 2.
double riemann_prediction(double x, const QuadratureConfig& cfg = {});

enum class Rounding { floor, nearest, truncate };

// floor(v), round-half-away-from-zero(v) or v with its fraction dropped.
std::int64_t apply_rounding(double v, Rounding mode);

// ---- Chebyshev psi -------------------------------------------------------

// Sum of ln p over prime powers p^k <= x. `primes` must hold every prime
// <= x in ascending order (extra larger primes are ignored).
double chebyshev_psi(std::uint64_t x, std::span<const std::uint64_t> primes);

// Same, sieving the primes itself.
double chebyshev_psi(std::uint64_t x, const sieve::SegmentPlan& plan = {});

// psi at each strictly ascending checkpoint, one sieve pass.
std::vector<double> chebyshev_psi_at(std::span<const std::uint64_t> checkpoints,
                                     const sieve::SegmentPlan& plan = {});

// |psi - x| <= 2 sqrt(x) ln^2 x. Throws DomainError for x < 100.
bool psi_rh_inequality_check(double x, double psi_value);

// ---- L-functions ---------------------------------------------------------

class LFunctionId {
 public:
  enum class Kind { zeta, beta4, quadratic };

  static LFunctionId zeta() { return LFunctionId(Kind::zeta, 0); }
  static LFunctionId beta4() { return LFunctionId(Kind::beta4, 4); }
  // Character n -> (n/q), q an odd prime.
  static LFunctionId quadratic(std::uint32_t q);

  // "zeta", "beta4" or "quadratic:<q>".
  static LFunctionId parse(const std::string& text);
  std::string name() const;

  Kind kind() const noexcept { return kind_; }
  std::uint32_t modulus() const noexcept { return q_; }

  // Character value chi(n); 1 for every n when kind is zeta.
  int character(std::uint64_t n) const;

  bool operator==(const LFunctionId&) const = default;

 private:
  LFunctionId(Kind kind, std::uint32_t q) : kind_(kind), q_(q) {}

  Kind kind_;
  std::uint32_t q_;
};

// Principal log Gamma(z), Re z > 0.
std::complex<long double> log_gamma(std::complex<long double> z);

// Error bound of the accelerated alternating sum behind zeta and beta4 with
// n terms: 4 Gamma(sigma) / |Gamma(s)| / (3 + sqrt 8)^n (divided by
// |1 - 2^(1-s)| for zeta). For quadratic characters `terms` counts whole
// periods before the Euler-Maclaurin tail and the bound is that tail's
// remainder estimate.
double l_error_bound(const LFunctionId& id, ComplexValue s, int terms);

// Smallest term count whose bound is below `tolerance` (at most kMaxTerms).
int default_terms(const LFunctionId& id, ComplexValue s, double tolerance = 1e-15);

inline constexpr int kMaxTerms = 4000;

// Throws DomainError for Re s <= 0 or non-finite s, PoleError for zeta at 1.
ComplexValue evaluate_l(const LFunctionId& id, ComplexValue s, int terms);
ComplexValue evaluate_l(const LFunctionId& id, ComplexValue s);

// Phase making the critical-line value real:
//   zeta : Im logGamma(1/4 + it/2) - (t/2) ln pi
//   beta4: Im logGamma(3/4 + it/2) + (t/2) ln(4/pi)
double theta(const LFunctionId& id, double t);

// Re(e^{i theta(t)} L(1/2 + it)). zeta and beta4 only.
double critical_line_z(const LFunctionId& id, double t, int terms = 0);

// ---- zeros ---------------------------------------------------------------

struct ZeroTable {
  LFunctionId id = LFunctionId::zeta();
  std::vector<double> ordinates;
  double precision = 1e-9;

  // Throws DomainError unless strictly ascending, positive and precision > 0.
  void validate() const;
};

struct ZeroSearchConfig {
  double scan_step = 0.05;
  double precision = 1e-9;
  double min_step = 1e-4;  // adaptive halving stops here

  void validate() const;
};

inline constexpr double kMaxZeroHeight = 500.0;

// Every zero ordinate in (0, t_max], located by sign changes of
// critical_line_z and refined by bisection. CapacityError above t = 500,
// UnsupportedError for quadratic characters.
ZeroTable find_zeros(const LFunctionId& id, double t_max, const ZeroSearchConfig& cfg = {});

}  // namespace prime_race::analytic
