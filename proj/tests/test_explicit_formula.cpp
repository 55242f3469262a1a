#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "prime_race/explicit_formula.hpp"
#include "prime_race/sieve.hpp"

using namespace prime_race;
using namespace prime_race::wave;
using Catch::Approx;

namespace {

double direct_sawtooth(double x, int n) {
  double sum = 0.0;
  for (int k = 1; k <= n; ++k) sum += std::sin(2 * std::numbers::pi * k * x) / (2 * std::numbers::pi * k);
  return -2 * sum;
}

analytic::ZeroTable table_of(std::vector<double> ordinates) {
  analytic::ZeroTable t;
  t.ordinates = std::move(ordinates);
  return t;
}

const analytic::ZeroTable& zeta_zeros() {
  static const auto t = analytic::find_zeros(analytic::LFunctionId::zeta(), 240);
  return t;
}

const analytic::ZeroTable& beta_zeros() {
  static const auto t = analytic::find_zeros(analytic::LFunctionId::beta4(), 180);
  return t;
}

}  // namespace

TEST_CASE("sawtooth partial sums", "[sawtooth]") {
  CHECK(sawtooth_partial_sum(0.3, 0) == 0.0);
  for (int n : {1, 7, 100, 5000}) CHECK(std::fabs(sawtooth_partial_sum(0.5, n)) < 1e-12);
  CHECK(sawtooth_partial_sum(0.25, 1000) == Approx(-0.25).margin(1e-2));
  CHECK(sawtooth_partial_sum(0.25, 1000) == Approx(direct_sawtooth(0.25, 1000)).margin(1e-12));
  CHECK(sawtooth_partial_sum(0.25, 1000000) == Approx(direct_sawtooth(0.25, 1000000)).margin(1e-9));
  REQUIRE_THROWS_AS(sawtooth_partial_sum(0.0, 5), DomainError);
  REQUIRE_THROWS_AS(sawtooth_partial_sum(1.0, 5), DomainError);
  REQUIRE_THROWS_AS(sawtooth_partial_sum(0.5, -1), DomainError);
}

TEST_CASE("sawtooth error shrinks as waves double", "[sawtooth][property]") {
  for (double x : {0.25, 1.0 / 3, 0.75, 0.1, 0.2}) {
    double prev = INFINITY;
    for (int n = 10; n <= 10000; n *= 2) {
      const double err = std::fabs(sawtooth_partial_sum(x, n) - (x - 0.5));
      CHECK(err <= prev + 1e-3);
      prev = err;
    }
  }
}

TEST_CASE("sawtooth error stays under the summation-by-parts envelope", "[sawtooth][property]") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> pick(0.01, 0.99);
  for (int trial = 0; trial < 200; ++trial) {
    const double x = pick(rng);
    for (int n = 10; n <= 10000; n *= 2) {
      const double err = std::fabs(sawtooth_partial_sum(x, n) - (x - 0.5));
      CHECK(err <= 1.0 / (std::numbers::pi * (n + 1) * std::sin(std::numbers::pi * x)) + 1e-12);
    }
  }
}

TEST_CASE("log grid", "[grid]") {
  const auto g = log_grid(1e4, 1e6, 500);
  REQUIRE(g.size() == 500);
  CHECK(g.front() == 1e4);
  CHECK(g.back() == 1e6);
  for (std::size_t i = 1; i < g.size(); ++i) {
    CHECK(g[i] > g[i - 1]);
    CHECK(g[i] / g[i - 1] == Approx(std::pow(100.0, 1.0 / 499)).epsilon(1e-12));
  }
  CHECK(log_grid(5, 9, 1) == std::vector<double>{5});
  REQUIRE_THROWS_AS(log_grid(1.5, 9, 3), DomainError);
  REQUIRE_THROWS_AS(log_grid(9, 9, 3), DomainError);
  REQUIRE_THROWS_AS(log_grid(2, 9, 0), DomainError);
}

TEST_CASE("wave sums", "[wave]") {
  CHECK(wave_sum(table_of({}), 1e5) == 1.0);
  const double g = 1.0;
  const double x = std::exp(std::numbers::pi / 2 / g);
  CHECK(wave_sum(table_of({g}), x) == Approx(1 + 2 / g).epsilon(1e-14));
  REQUIRE_THROWS_AS(wave_sum(table_of({}), 1.5), DomainError);
}

TEST_CASE("wave sum splits over a table prefix", "[wave][property]") {
  const auto& zeros = zeta_zeros().ordinates;
  REQUIRE(zeros.size() >= 100);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> lx(std::log(2.0), std::log(1e12));
  std::uniform_int_distribution<std::size_t> cut(0, zeros.size());
  for (int i = 0; i < 100; ++i) {
    const double x = std::exp(lx(rng));
    const std::size_t k = cut(rng);
    const std::span<const double> all(zeros);
    const double split = 1 + 2 * (partial_wave_sum(all.first(k), x) + partial_wave_sum(all.subspan(k), x));
    const double once = wave_sum(zeta_zeros(), x);
    CHECK(std::fabs(split - once) <= 1e-10 * std::max(1.0, std::fabs(once)));
  }
}

TEST_CASE("wave series matches truncated wave sums", "[wave]") {
  const auto grid = log_grid(100, 1e7, 37);
  const std::size_t cuts[] = {100, 0, 10};
  const auto series = wave_series(zeta_zeros(), grid, cuts);
  REQUIRE(series.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(series[k].zeros_used == cuts[k]);
    auto prefix = zeta_zeros();
    prefix.ordinates.resize(cuts[k]);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(series[k].values[i] == Approx(wave_sum(prefix, grid[i])).margin(1e-12));
    }
  }
  const std::size_t too_many[] = {100000};
  REQUIRE_THROWS_AS(wave_series(zeta_zeros(), grid, too_many), PreconditionError);
}

TEST_CASE("normalized prime count errors", "[lhs]") {
  const double lx8 = std::log(1e8);
  CHECK(lhs_pi_li(1e8, 5761455) == Approx(1.39).margin(0.005));
  CHECK(lhs_pi_li(1e8, 5761455) == Approx((analytic::li(1e8) - 5761455) * lx8 / 1e4).epsilon(1e-14));
  CHECK(lhs_pi_li(1e6, analytic::li(1e6)) == 0.0);
  REQUIRE_THROWS_AS(lhs_pi_li(3.9, 2), DomainError);
  for (double x : {1e4, 1e6, 1e8, 1e10}) {
    const double a = lhs_pi_li(x, 1000, Normalization::sqrt_over_log);
    const double b = lhs_pi_li(x, 1000, Normalization::half_li_sqrt);
    const double ratio = normalizer(x, Normalization::half_li_sqrt) / normalizer(x, Normalization::sqrt_over_log);
    CHECK(a / b == Approx(ratio).epsilon(1e-12));
  }
  // the ratio falls toward 1 like 1 + 2 / ln x + O(1 / ln^2 x)
  double prev = INFINITY;
  for (double x : {1e4, 1e6, 1e8, 1e10, 1e14, 1e20}) {
    const double r = normalizer(x, Normalization::half_li_sqrt) / normalizer(x, Normalization::sqrt_over_log);
    CHECK(r > 1.0);
    CHECK(r < prev);
    const double excess = r - 1 - 2 / std::log(x);
    CHECK(excess > 0);
    CHECK(excess < 20 / std::pow(std::log(x), 2));
    prev = r;
  }
  CHECK(lhs_mod4(100, 13, 11) == Approx(0.92103).margin(1e-5));
  CHECK(lhs_mod4(1e6, 500, 500) == 0.0);
  REQUIRE_THROWS_AS(lhs_mod4(2.5, 1, 0), DomainError);
}

TEST_CASE("truth curves come from exact counts", "[lhs]") {
  const std::vector<double> grid = {100.0, 100.5, 101.0, 1000.0, 1e5};
  const auto mod4 = truth_curve(Target::mod4, grid);
  CHECK(mod4.values[0] == Approx(lhs_mod4(100, 13, 11)).epsilon(1e-15));
  CHECK(mod4.values[1] == Approx(lhs_mod4(100.5, 13, 11)).epsilon(1e-15));
  CHECK(mod4.values[2] == Approx(lhs_mod4(101, 13, 12)).epsilon(1e-15));
  CHECK(mod4.values[4] == Approx(lhs_mod4(1e5, 4808, 4783)).epsilon(1e-15));
  const auto pl = truth_curve(Target::pi_li, grid, Normalization::half_li_sqrt);
  CHECK(pl.values[3] == Approx(lhs_pi_li(1000, 168, Normalization::half_li_sqrt)).epsilon(1e-15));
  REQUIRE_THROWS_AS(truth_curve(Target::pi_li, std::vector<double>{3.0}), DomainError);
}

TEST_CASE("mod-4 truth dips below zero only in the first three lead regions", "[lhs]") {
  auto grid = log_grid(1e4, 1.3e7, 4000);
  for (double x : {26861.0, 616841.0, 633798.0, 12306137.0, 12382326.0}) grid.push_back(x);
  std::sort(grid.begin(), grid.end());
  const auto curve = truth_curve(Target::mod4, grid);
  auto in_region = [](double x) {
    return (x >= 26861 && x < 26863) || (x >= 616841 && x <= 633798) || (x >= 12306137 && x <= 12382326);
  };
  std::size_t region_hits[3] = {0, 0, 0};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (curve.values[i] < 0) {
      CHECK(in_region(grid[i]));
      region_hits[grid[i] < 1e5 ? 0 : grid[i] < 1e6 ? 1 : 2]++;
    }
  }
  CHECK(region_hits[0] >= 1);
  CHECK(region_hits[1] >= 2);
  CHECK(region_hits[2] >= 2);
}

TEST_CASE("hypothetical zero profile", "[ford]") {
  const HypotheticalZero z{0.75, 1.0};
  const auto p = ford_konyagin_profile(z, std::exp(2 * std::numbers::pi));
  CHECK(p[0] == Approx(-0.75).margin(1e-12));
  CHECK(p[1] == Approx(-1.0).margin(1e-12));
  CHECK(p[2] == Approx(1.0).margin(1e-12));
  CHECK(p[3] == Approx(0.75).margin(1e-12));
  REQUIRE_THROWS_AS(ford_konyagin_profile(HypotheticalZero{0.5, 1}, 10), DomainError);
  REQUIRE_THROWS_AS(ford_konyagin_profile(HypotheticalZero{1.0, 1}, 10), DomainError);
  REQUIRE_THROWS_AS(ford_konyagin_profile(HypotheticalZero{0.7, -1}, 10), DomainError);
  CHECK(ordering_3_2_4_1({4, 2, 1, 3}, 0.5));
  CHECK_FALSE(ordering_3_2_4_1({4, 2, 1, 3}, 1.0));
  CHECK_FALSE(ordering_3_2_4_1({1, 2, 3, 4}, 0.0));
}

TEST_CASE("profile identities", "[ford][property]") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> sig(0.5001, 0.9999), gam(0.0, 50.0), lx(std::log(2.0), 60.0);
  for (int i = 0; i < 2000; ++i) {
    const HypotheticalZero z{sig(rng), gam(rng)};
    const double x = std::exp(lx(rng));
    const auto p = ford_konyagin_profile(z, x);
    CHECK(p[0] + p[3] == 0.0);
    CHECK(p[1] + p[2] == 0.0);
    CHECK_FALSE(ordering_3_2_4_1(p, 0.0));
    // |A| < eps and |B| < eps force sigma < 2 eps max(1, gamma)
    const double eps = std::max(std::fabs(p[1]), std::fabs(p[3])) * (1 + 1e-12) + 1e-300;
    CHECK(z.sigma < 2 * eps * std::max(1.0, z.gamma));
  }
}

TEST_CASE("forbidden ordering never occurs on a wide grid", "[ford]") {
  const auto grid = log_grid(2, 1e12, 10000);
  CHECK(count_ordering_3_2_4_1(HypotheticalZero{0.75, 1.0}, grid) == 0);
  CHECK(count_ordering_3_2_4_1(HypotheticalZero{0.6, 14.0}, grid, 0.0) == 0);
}

TEST_CASE("series comparison", "[compare]") {
  Curve truth{{2, 3, 4, 5}, {1.0, -2.0, 0.5, 3.0}};
  WaveSeries same{7, truth.x_grid, truth.values};
  const auto s = compare_series(truth, same);
  CHECK(s.rms == 0.0);
  CHECK(s.correlation == Approx(1.0).epsilon(1e-15));
  CHECK(s.sign_agreement == 1.0);
  WaveSeries zero{0, truth.x_grid, {0, 0, 0, 0}};
  const auto z = compare_series(truth, zero);
  CHECK(z.sign_agreement == 0.75);
  CHECK(std::isnan(z.correlation));
  CHECK(z.rms == Approx(std::sqrt((1 + 4 + 0.25 + 9) / 4.0)));
  WaveSeries shifted{1, {2, 3, 4, 6}, {0, 0, 0, 0}};
  REQUIRE_THROWS_AS(compare_series(truth, shifted), DomainError);
  REQUIRE_THROWS_AS(compare_series(Curve{}, WaveSeries{}), DomainError);
}

TEST_CASE("more zeros track the sieve truth better", "[compare]") {
  const auto grid = log_grid(1e4, 1e6, 500);
  const std::size_t cuts[] = {10, 100};
  for (auto norm : {Normalization::sqrt_over_log, Normalization::half_li_sqrt}) {
    const auto truth = truth_curve(Target::pi_li, grid, norm);
    const auto series = wave_series(zeta_zeros(), grid, cuts);
    const auto c10 = compare_series(truth, series[0]);
    const auto c100 = compare_series(truth, series[1]);
    CHECK(c100.rms < c10.rms);
    CHECK(c100.correlation > 0.5);
  }
  const auto truth = truth_curve(Target::mod4, grid);
  const auto series = wave_series(beta_zeros(), grid, cuts);
  CHECK(compare_series(truth, series[1]).rms < compare_series(truth, series[0]).rms);
  CHECK(compare_series(truth, series[1]).correlation > 0.5);
}

TEST_CASE("series CSV", "[io]") {
  Curve truth{{2, 10}, {0.5, -1}};
  const std::vector<WaveSeries> approx = {{10, {2, 10}, {0.25, 1}}, {100, {2, 10}, {0.5, -0.75}}};
  std::ostringstream out;
  write_series_csv(truth, approx, out);
  CHECK(out.str() == "x,truth,approx_10,approx_100\n2,0.5,0.25,0.5\n10,-1,1,-0.75\n");
}
