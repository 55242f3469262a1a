// prime_pairs.hpp
// Prime pairs p, p + 2k counted by p <= x, the twin prime constant, the
// Hardy-Littlewood prediction and the renormalized pair race.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "prime_race/errors.hpp"
#include "prime_race/races.hpp"
#include "prime_race/sieve.hpp"
#include "prime_race/special_functions.hpp"

namespace prime_race::pairs {

struct GapSpec {
  std::uint32_t gap = 2;

  // DomainError unless even and >= 2.
  static GapSpec of(std::uint64_t gap);
  std::uint32_t k() const noexcept { return gap / 2; }

  bool operator==(const GapSpec&) const = default;
};

struct PairCounts {
  GapSpec gap;
  std::vector<std::uint64_t> xs;
  std::vector<std::uint64_t> counts;

  // DomainError unless lengths match, xs strictly ascending, counts nondecreasing.
  void validate() const;
  std::uint64_t at(std::uint64_t x) const;
};

// pi_{2k}(x) for every gap at every checkpoint, one sieve pass.
std::vector<PairCounts> count_pairs(const sieve::SieveLimit& limit, std::span<const GapSpec> gaps,
                                    std::span<const std::uint64_t> checkpoints,
                                    const sieve::SegmentPlan& plan = {});

struct HLConstants {
  double c2 = 0.0;
  double c2_error_bound = 0.0;  // true constant lies in [c2 - bound, c2]
};

inline constexpr std::uint64_t kDefaultC2Limit = 10000000;

// Product over odd primes p <= prime_limit of 1 - 1/(p-1)^2. The tail over
// n > limit is bounded by sum_{m >= limit} 1/m^2 < 1/L + 1/(2L^2) + 1/(6L^3).
// DomainError for prime_limit < 3.
HLConstants compute_c2(std::uint64_t prime_limit = kDefaultC2Limit);

// compute_c2() evaluated once.
const HLConstants& twin_prime_constants();

// Product over odd primes p | k of (p-1)/(p-2). DomainError for k = 0.
double singular_factor(std::uint64_t k);

// Raw counts times the reciprocal singular factor of the gap.
std::vector<double> normalized_count(const PairCounts& counts);

// 2 c2 Li2(x).
double hl_prediction(double x, const HLConstants& constants = twin_prime_constants(),
                     const analytic::QuadratureConfig& cfg = {});

// One cell of the normalized-count table under both rounding conventions:
//   floor:   floor(pi') - floor(pi_HL), shown with floor(pi_HL)
//   nearest: round(pi' - pi_HL), shown with round(pi_HL)
struct HLCell {
  std::uint64_t x = 0;
  GapSpec gap;
  std::uint64_t raw = 0;
  double normalized = 0.0;
  double prediction = 0.0;
  std::int64_t prediction_floor = 0;
  std::int64_t difference_floor = 0;
  std::int64_t prediction_nearest = 0;
  std::int64_t difference_nearest = 0;
};

std::vector<HLCell> hl_table(std::span<const PairCounts> counts,
                             const HLConstants& constants = twin_prime_constants());

// Twin CSV "x,gap,raw,normalized,hl_prediction,difference" (floor convention).
void write_twin_csv(std::span<const HLCell> cells, std::ostream& out);

struct PairRace {
  std::vector<GapSpec> gaps;
  std::vector<std::string> labels;  // decimal gap
  std::vector<PairCounts> counts;   // raw, at the checkpoints
  std::vector<races::LeadChangeEvent> first_place;
  std::vector<races::LeadChangeEvent> last_place;
};

// Tracks normalized counts exactly (as integers over a common denominator)
// after every pair and records first- and last-place changes with
// x >= events_from. Gaps must be distinct; one gap yields no events.
PairRace pair_race(std::span<const GapSpec> gaps, const sieve::SieveLimit& limit,
                   std::span<const std::uint64_t> checkpoints, const sieve::SegmentPlan& plan = {},
                   std::uint64_t events_from = 0);

}  // namespace prime_race::pairs
