#include "prime_race/explicit_formula.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "prime_race/text.hpp"

namespace prime_race::wave {

namespace {

void check_grid(std::span<const double> grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || !(grid[i] >= 2.0)) throw DomainError("grid points must be finite and >= 2");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("grid must be strictly ascending");
  }
}

}  // namespace

double sawtooth_partial_sum(double x, std::int64_t n_waves) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("sawtooth needs 0 < x < 1");
  if (n_waves < 0) throw DomainError("wave count must be nonnegative");
  const long double w = 2.0L * std::numbers::pi_v<long double> * x;
  long double sum = 0.0L;
  for (std::int64_t n = 1; n <= n_waves; ++n) {
    const long double nl = static_cast<long double>(n);
    sum += std::sin(nl * w) / nl;
  }
  return static_cast<double>(-sum / std::numbers::pi_v<long double>);
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo < 2.0) throw DomainError("grid needs finite lo >= 2");
  if (points == 0) throw DomainError("grid needs at least one point");
  if (points == 1) return {lo};
  if (!(hi > lo)) throw DomainError("grid needs hi > lo");
  std::vector<double> out(points);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < points; ++i) {
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

double partial_wave_sum(std::span<const double> ordinates, double x) {
  const double lx = std::log(x);
  long double sum = 0.0L;
  for (double g : ordinates) sum += std::sin(static_cast<long double>(g) * lx) / g;
  return static_cast<double>(sum);
}

double wave_sum(const analytic::ZeroTable& table, double x) {
  if (!std::isfinite(x) || x < 2.0) throw DomainError("wave_sum needs x >= 2");
  return 1.0 + 2.0 * partial_wave_sum(table.ordinates, x);
}

void Curve::validate() const {
  if (x_grid.size() != values.size()) throw DomainError("grid and values differ in length");
  check_grid(x_grid);
}

void WaveSeries::validate() const {
  if (x_grid.size() != values.size()) throw DomainError("grid and values differ in length");
  check_grid(x_grid);
}

std::vector<WaveSeries> wave_series(const analytic::ZeroTable& table, std::span<const double> grid,
                                    std::span<const std::size_t> truncations) {
  check_grid(grid);
  for (std::size_t n : truncations) {
    if (n > table.ordinates.size()) {
      throw PreconditionError("zero table holds " + std::to_string(table.ordinates.size()) +
                              " ordinates, " + std::to_string(n) + " requested");
    }
  }
  std::vector<WaveSeries> out(truncations.size());
  for (std::size_t k = 0; k < truncations.size(); ++k) {
    out[k].zeros_used = truncations[k];
    out[k].x_grid.assign(grid.begin(), grid.end());
    out[k].values.resize(grid.size());
  }
  // one ascending pass per point; snapshot the running sum at each cut
  std::vector<std::size_t> order(truncations.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return truncations[a] < truncations[b]; });
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double lx = std::log(grid[i]);
    long double sum = 0.0L;
    std::size_t used = 0;
    for (std::size_t k : order) {
      for (; used < truncations[k]; ++used) {
        const double g = table.ordinates[used];
        sum += std::sin(static_cast<long double>(g) * lx) / g;
      }
      out[k].values[i] = 1.0 + 2.0 * static_cast<double>(sum);
    }
  }
  return out;
}

double normalizer(double x, Normalization norm, const analytic::QuadratureConfig& cfg) {
  if (!std::isfinite(x) || x < 4.0) throw DomainError("normalizer needs x >= 4");
  if (norm == Normalization::sqrt_over_log) return std::sqrt(x) / std::log(x);
  return 0.5 * analytic::li(std::sqrt(x), cfg);
}

double lhs_pi_li(double x, double pi_x, Normalization norm, const analytic::QuadratureConfig& cfg) {
  if (!std::isfinite(x) || x < 4.0) throw DomainError("lhs_pi_li needs x >= 4");
  return (analytic::li(x, cfg) - pi_x) / normalizer(x, norm, cfg);
}

double lhs_mod4(double x, std::int64_t count_3, std::int64_t count_1) {
  if (!std::isfinite(x) || x < 3.0) throw DomainError("lhs_mod4 needs x >= 3");
  return static_cast<double>(count_3 - count_1) * std::log(x) / std::sqrt(x);
}

Curve truth_curve(Target target, std::span<const double> grid, Normalization norm,
                  const sieve::SegmentPlan& plan, unsigned workers) {
  check_grid(grid);
  Curve curve;
  curve.x_grid.assign(grid.begin(), grid.end());
  if (grid.empty()) return curve;
  if (grid.front() < (target == Target::pi_li ? 4.0 : 3.0)) throw DomainError("grid starts below the target's domain");
  std::vector<std::uint64_t> cps;
  for (double x : grid) {
    const auto v = static_cast<std::uint64_t>(std::floor(x));
    if (cps.empty() || cps.back() != v) cps.push_back(v);
  }
  const auto counts = sieve::count_in_progressions(sieve::SieveLimit(cps.back(), sieve::LongRun::allowed), 4,
                                                   cps, plan, workers);
  std::size_t j = 0;
  for (double x : grid) {
    const auto v = static_cast<std::uint64_t>(std::floor(x));
    while (cps[j] != v) ++j;
    const auto& rc = counts[j];
    if (target == Target::pi_li) {
      curve.values.push_back(lhs_pi_li(x, static_cast<double>(sieve::prime_count(rc)), norm));
    } else {
      curve.values.push_back(lhs_mod4(x, static_cast<std::int64_t>(rc.at(3)), static_cast<std::int64_t>(rc.at(1))));
    }
  }
  return curve;
}

void HypotheticalZero::validate() const {
  if (!(sigma > 0.5 && sigma < 1.0)) throw DomainError("hypothetical zero needs 1/2 < sigma < 1");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw DomainError("hypothetical zero needs gamma >= 0");
}

std::array<double, 4> ford_konyagin_profile(const HypotheticalZero& z, double x) {
  z.validate();
  if (!std::isfinite(x) || x < 2.0) throw DomainError("profile needs x >= 2");
  const double phase = z.gamma * std::log(x);
  const double c = std::cos(phase), s = std::sin(phase);
  const double a = z.sigma * s - z.gamma * c;
  const double b = z.sigma * c + z.gamma * s;
  return {-b, a, -a, b};
}

bool ordering_3_2_4_1(const std::array<double, 4>& p, double slack) {
  return p[2] + slack < p[1] && p[1] + slack < p[3] && p[3] + slack < p[0];
}

std::size_t count_ordering_3_2_4_1(const HypotheticalZero& z, std::span<const double> grid, double slack) {
  z.validate();
  if (slack < 0.0) slack = z.sigma / 2;
  std::size_t hits = 0;
  for (double x : grid) hits += ordering_3_2_4_1(ford_konyagin_profile(z, x), slack) ? 1 : 0;
  return hits;
}

SeriesComparison compare_series(const Curve& truth, const WaveSeries& approx) {
  truth.validate();
  approx.validate();
  if (truth.x_grid.empty()) throw DomainError("cannot compare empty series");
  if (truth.x_grid != approx.x_grid) throw DomainError("truth and approximation grids differ");
  const std::size_t n = truth.values.size();
  long double sq = 0, mt = 0, ma = 0;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = truth.values[i], a = approx.values[i];
    sq += static_cast<long double>(t - a) * (t - a);
    mt += t;
    ma += a;
    agree += (t >= 0) == (a >= 0) ? 1 : 0;
  }
  mt /= n;
  ma /= n;
  long double vt = 0, va = 0, cov = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const long double dt = truth.values[i] - mt, da = approx.values[i] - ma;
    vt += dt * dt;
    va += da * da;
    cov += dt * da;
  }
  SeriesComparison out;
  out.rms = static_cast<double>(std::sqrt(sq / n));
  out.correlation = vt > 0 && va > 0 ? static_cast<double>(cov / std::sqrt(vt * va)) : std::nan("");
  out.sign_agreement = static_cast<double>(agree) / static_cast<double>(n);
  return out;
}

void write_series_csv(const Curve& truth, std::span<const WaveSeries> approx, std::ostream& out) {
  truth.validate();
  for (const auto& a : approx) {
    if (a.x_grid != truth.x_grid) throw DomainError("series grids differ");
  }
  out << "x,truth";
  for (const auto& a : approx) out << ",approx_" << a.zeros_used;
  out << '\n';
  for (std::size_t i = 0; i < truth.x_grid.size(); ++i) {
    out << text::format_double(truth.x_grid[i]) << ',' << text::format_double(truth.values[i]);
    for (const auto& a : approx) out << ',' << text::format_double(a.values[i]);
    out << '\n';
  }
}

}  // namespace prime_race::wave
