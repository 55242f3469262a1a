// explicit_formula.hpp
// Wave sums over zero ordinates, the normalized prime-count errors they
// approximate, the sawtooth Fourier demo and the mod-5 profiles of a single
// hypothetical off-line zero.

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "prime_race/errors.hpp"
#include "prime_race/sieve.hpp"
#include "prime_race/special_functions.hpp"

namespace prime_race::wave {

// -2 sum_{n=1..N} sin(2 pi n x) / (2 pi n), which tends to x - 1/2 on (0, 1).
double sawtooth_partial_sum(double x, std::int64_t n_waves);

// `points` log-uniform values from lo to hi inclusive. lo >= 2, hi > lo,
// points >= 2 (points == 1 gives {lo}).
std::vector<double> log_grid(double lo, double hi, std::size_t points);

// sum over the given ordinates of sin(gamma ln x) / gamma, ascending order.
double partial_wave_sum(std::span<const double> ordinates, double x);

// 1 + 2 sum_gamma sin(gamma ln x) / gamma over the whole table. x >= 2.
double wave_sum(const analytic::ZeroTable& table, double x);

struct Curve {
  std::vector<double> x_grid;
  std::vector<double> values;

  // DomainError unless lengths match and the grid is strictly ascending
  // with every point >= 2.
  void validate() const;
};

struct WaveSeries {
  std::size_t zeros_used = 0;
  std::vector<double> x_grid;
  std::vector<double> values;

  void validate() const;
};

// One series per truncation, using the first n ordinates of the table.
// PreconditionError if the table holds fewer than n.
std::vector<WaveSeries> wave_series(const analytic::ZeroTable& table,
                                    std::span<const double> grid,
                                    std::span<const std::size_t> truncations);

enum class Normalization {
  sqrt_over_log,  // sqrt(x) / ln x
  half_li_sqrt,   // Li(sqrt x) / 2
};

double normalizer(double x, Normalization norm, const analytic::QuadratureConfig& cfg = {});

// (Li(x) - pi(x)) / normalizer. DomainError for x < 4.
double lhs_pi_li(double x, double pi_x, Normalization norm = Normalization::sqrt_over_log,
                 const analytic::QuadratureConfig& cfg = {});

// (count_3 - count_1) / (sqrt x / ln x). DomainError for x < 3.
double lhs_mod4(double x, std::int64_t count_3, std::int64_t count_1);

enum class Target { pi_li, mod4 };

// Sieve truth at every grid point, counts taken at floor(x).
Curve truth_curve(Target target, std::span<const double> grid,
                  Normalization norm = Normalization::sqrt_over_log,
                  const sieve::SegmentPlan& plan = {}, unsigned workers = 1);

struct HypotheticalZero {
  double sigma = 0.75;
  double gamma = 1.0;

  // DomainError unless 1/2 < sigma < 1 and gamma >= 0.
  void validate() const;
};

// Right-hand sides for residues a = 1, 2, 3, 4 mod 5 with c = cos(gamma ln x),
// s = sin(gamma ln x): (-sigma c - gamma s, sigma s - gamma c,
// -sigma s + gamma c, sigma c + gamma s).
std::array<double, 4> ford_konyagin_profile(const HypotheticalZero& z, double x);

// True when value(3) < value(2) < value(4) < value(1), each gap exceeding slack.
bool ordering_3_2_4_1(const std::array<double, 4>& profile, double slack);

// Grid points where the ordering above holds. Default slack is sigma / 2.
std::size_t count_ordering_3_2_4_1(const HypotheticalZero& z, std::span<const double> grid,
                                   double slack = -1.0);

struct SeriesComparison {
  double rms = 0.0;
  double correlation = 0.0;     // NaN when either side has zero variance
  double sign_agreement = 0.0;  // fraction with (truth >= 0) == (approx >= 0)
};

// DomainError unless both grids are identical and nonempty.
SeriesComparison compare_series(const Curve& truth, const WaveSeries& approx);

// "x,truth,approx_<n>,..." with one row per grid point.
void write_series_csv(const Curve& truth, std::span<const WaveSeries> approx, std::ostream& out);

}  // namespace prime_race::wave
