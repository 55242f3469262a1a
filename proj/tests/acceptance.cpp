// Acceptance run: one PASS/FAIL line per criterion, with wall time.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "prime_race/checkpoint.hpp"
#include "prime_race/explicit_formula.hpp"
#include "prime_race/prime_pairs.hpp"
#include "prime_race/races.hpp"
#include "prime_race/random_walk.hpp"
#include "prime_race/sieve.hpp"
#include "prime_race/special_functions.hpp"
#include "prime_race/zero_table.hpp"

using namespace prime_race;
using sieve::SieveLimit;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail.clear();
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) {
    if (pass) detail += (detail.empty() ? "" : "; ") + what;
  }
};

template <typename F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string str(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

template <typename A, typename B>
std::string mismatch(const std::string& what, std::uint64_t x, A got, B want) {
  std::ostringstream os;
  os << what << " at x=" << x << ": " << got << " != " << want;
  return os.str();
}

// ---- 1 ---------------------------------------------------------------------

Outcome mod4_counts() {
  struct Row {
    std::uint64_t x, team3, team1;
  };
  const std::vector<Row> rows = {
      {100, 13, 11},       {200, 24, 21},       {300, 32, 29},       {400, 40, 37},       {500, 50, 44},
      {600, 57, 51},       {700, 65, 59},       {800, 71, 67},       {900, 79, 74},       {1000, 87, 80},
      {2000, 155, 147},    {3000, 218, 211},    {4000, 280, 269},    {5000, 339, 329},    {6000, 399, 383},
      {7000, 457, 442},    {8000, 507, 499},    {9000, 562, 554},    {10000, 619, 609},   {20000, 1136, 1125},
      {50000, 2583, 2549}, {100000, 4808, 4783}};
  Outcome o;
  std::vector<std::uint64_t> xs;
  for (const auto& r : rows) xs.push_back(r.x);
  std::vector<sieve::ResidueCounts> c;
  const double t = timed([&] { c = sieve::count_in_progressions(SieveLimit(100000), 4, xs); });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    o.require(c[i].at(3) == rows[i].team3 && c[i].at(1) == rows[i].team1,
              mismatch("pi(x;4,3)/pi(x;4,1)", rows[i].x,
                       std::to_string(c[i].at(3)) + "/" + std::to_string(c[i].at(1)),
                       std::to_string(rows[i].team3) + "/" + std::to_string(rows[i].team1)));
  }
  o.require(t < 2.0, "runtime " + str(t) + " s >= 2 s");
  o.note("22 rows exact");
  return o;
}

// ---- 2 ---------------------------------------------------------------------

Outcome mod3_counts() {
  struct Row {
    std::uint64_t x, team2, team1;
  };
  const std::vector<Row> rows = {
      {100, 13, 11},           {200, 24, 21},           {300, 33, 28},           {400, 40, 37},
      {500, 49, 45},           {600, 58, 50},           {700, 65, 59},           {800, 71, 67},
      {900, 79, 74},           {1000, 87, 80},          {2000, 154, 148},        {3000, 222, 207},
      {4000, 278, 271},        {5000, 338, 330},        {6000, 398, 384},        {7000, 455, 444},
      {8000, 511, 495},        {9000, 564, 552},        {10000, 617, 611},       {20000, 1137, 1124},
      {30000, 1634, 1610},     {40000, 2113, 2089},     {50000, 2576, 2556},     {60000, 3042, 3014},
      {70000, 3491, 3443},     {80000, 3938, 3898},     {90000, 4374, 4338},     {100000, 4807, 4784},
      {200000, 8995, 8988},    {300000, 13026, 12970},  {400000, 16967, 16892},  {500000, 20804, 20733},
      {600000, 24573, 24524},  {700000, 28306, 28236},  {800000, 32032, 31918},  {900000, 35676, 35597},
      {1000000, 39266, 39231}, {2000000, 74520, 74412}, {5000000, 174322, 174190}, {10000000, 332384, 332194}};
  Outcome o;
  std::vector<std::uint64_t> xs;
  for (const auto& r : rows) xs.push_back(r.x);
  std::vector<sieve::ResidueCounts> c;
  const double t = timed([&] { c = sieve::count_in_progressions(SieveLimit(10000000), 3, xs); });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    o.require(c[i].at(2) == rows[i].team2 && c[i].at(1) == rows[i].team1,
              mismatch("pi(x;3,2)/pi(x;3,1)", rows[i].x,
                       std::to_string(c[i].at(2)) + "/" + std::to_string(c[i].at(1)),
                       std::to_string(rows[i].team2) + "/" + std::to_string(rows[i].team1)));
  }
  o.require(t < 10.0, "runtime " + str(t) + " s >= 10 s");
  o.note(std::to_string(rows.size()) + " rows exact");
  return o;
}

// ---- 3 ---------------------------------------------------------------------

Outcome digit_counts() {
  Outcome o;
  const double t = timed([&] {
    // primes by last digit up to 100 and between 100 and 200
    const std::vector<std::vector<std::uint64_t>> low = {
        {11, 31, 41, 61, 71}, {3, 13, 23, 43, 53, 73, 83}, {7, 17, 37, 47, 67, 97}, {19, 29, 59, 79, 89}};
    const std::vector<std::vector<std::uint64_t>> high = {
        {101, 131, 151, 181, 191}, {103, 113, 163, 173, 193}, {107, 127, 137, 157, 167, 197}, {109, 139, 149, 179, 199}};
    const std::uint32_t digits[4] = {1, 3, 7, 9};
    std::vector<std::vector<std::uint64_t>> got_low(4), got_high(4);
    sieve::enumerate_primes(SieveLimit(200), {}, [&](std::uint64_t p) {
      for (int d = 0; d < 4; ++d) {
        if (p % 10 == digits[d]) (p <= 100 ? got_low : got_high)[d].push_back(p);
      }
    });
    o.require(got_low == low && got_high == high, "last-digit prime lists differ up to 200");

    const std::vector<std::uint64_t> xs10 = {100,   200,    500,    1000,   2000,   5000,   10000,
                                             20000, 50000, 100000, 200000, 500000, 1000000};
    const std::vector<std::vector<std::uint64_t>> t10 = {
        {5, 7, 6, 5},             {10, 12, 12, 10},         {22, 24, 24, 23},         {40, 42, 46, 38},
        {73, 78, 77, 73},         {163, 172, 169, 163},     {306, 310, 308, 303},     {563, 569, 569, 559},
        {1274, 1290, 1288, 1279}, {2387, 2402, 2411, 2390}, {4478, 4517, 4503, 4484}, {10386, 10382, 10403, 10365},
        {19617, 19665, 19621, 19593}};
    const auto c10 = sieve::count_in_progressions(SieveLimit(1000000), 10, xs10);
    for (std::size_t i = 0; i < xs10.size(); ++i) {
      const std::vector<std::uint64_t> got = {c10[i].at(1), c10[i].at(3), c10[i].at(7), c10[i].at(9)};
      o.require(got == t10[i], mismatch("mod 10 counts", xs10[i], got[0], t10[i][0]));
    }
    const std::vector<std::uint64_t> xs8 = {1000, 2000, 5000, 10000, 20000, 50000, 100000, 200000, 500000, 1000000};
    const std::vector<std::vector<std::uint64_t>> t8 = {
        {37, 44, 43, 43},         {68, 77, 79, 78},         {161, 168, 168, 171},       {295, 311, 314, 308},
        {556, 571, 569, 565},     {1257, 1295, 1292, 1288}, {2384, 2409, 2399, 2399},   {4466, 4495, 4511, 4511},
        {10334, 10418, 10397, 10388}, {19552, 19653, 19623, 19669}};
    const auto c8 = sieve::count_in_progressions(SieveLimit(1000000), 8, xs8);
    for (std::size_t i = 0; i < xs8.size(); ++i) {
      const std::vector<std::uint64_t> got = {c8[i].at(1), c8[i].at(3), c8[i].at(5), c8[i].at(7)};
      o.require(got == t8[i], mismatch("mod 8 counts", xs8[i], got[0], t8[i][0]));
    }
  });
  o.require(t < 5.0, "runtime " + str(t) + " s >= 5 s");
  o.note("last-digit lists, 13 mod-10 rows and 10 mod-8 rows exact");
  return o;
}

// ---- 4 ---------------------------------------------------------------------

Outcome lead_changes() {
  Outcome o;
  const double t = timed([&] {
    const std::vector<races::TeamSpec> teams = {{"3", {3}}, {"1", {1}}};
    const auto ledger = races::run_dense_race(SieveLimit(13000000), 4, teams);
    const auto events = races::detect_lead_changes(ledger);
    std::size_t first = 0;
    while (first < events.size() && events[first].new_leader != "1") ++first;
    o.require(first < events.size() && events[first].x == 26861, "first Team-1 lead is not at 26861");
    o.require(first + 1 < events.size() && events[first + 1].x == 26863 && events[first + 1].new_leader == "tie",
              "no tie at 26863");
    const auto episodes = races::lead_episodes(races::lead_windows(events, "1", ledger.coverage()));
    o.require(episodes.size() >= 3, "fewer than three Team-1 lead episodes below 1.3e7");
    if (episodes.size() >= 3) {
      o.require(episodes[1].first_lead == 616841 && episodes[1].last_ahead == 633798,
                "second episode [" + std::to_string(episodes[1].first_lead) + ", " +
                    std::to_string(episodes[1].last_ahead) + "]");
      o.require(episodes[2].first_lead == 12306137 && episodes[2].last_ahead == 12382326,
                "third episode [" + std::to_string(episodes[2].first_lead) + ", " +
                    std::to_string(episodes[2].last_ahead) + "]");
    }
  });
  o.require(t < 20.0, "runtime " + str(t) + " s >= 20 s");
  o.note("26861, tie 26863, [616841, 633798], [12306137, 12382326]");
  return o;
}

// ---- 5, 6 ------------------------------------------------------------------

struct BigCounts {
  std::uint64_t pi8 = 0, pi9 = 0;
  double seconds9 = 0;
};

const BigCounts& big_counts() {
  static const BigCounts b = [] {
    BigCounts r;
    r.pi8 = sieve::prime_pi(SieveLimit(100000000));
    r.seconds9 = timed([&] { r.pi9 = sieve::prime_pi(SieveLimit(1000000000)); });
    return r;
  }();
  return b;
}

Outcome li_overcount() {
  Outcome o;
  const auto& b = big_counts();
  o.require(b.pi8 == 5761455, "pi(1e8) = " + std::to_string(b.pi8));
  o.require(b.pi9 == 50847534, "pi(1e9) = " + std::to_string(b.pi9));
  const auto g8 = analytic::apply_rounding(analytic::li(1e8) - static_cast<double>(b.pi8), analytic::Rounding::truncate);
  const auto g9 = analytic::apply_rounding(analytic::li(1e9) - static_cast<double>(b.pi9), analytic::Rounding::truncate);
  o.require(std::llabs(g8 - 753) <= 1, "Gauss overcount at 1e8 = " + std::to_string(g8));
  o.require(std::llabs(g9 - 1700) <= 1, "Gauss overcount at 1e9 = " + std::to_string(g9));
  o.require(b.seconds9 < 90.0, "pi(1e9) took " + str(b.seconds9) + " s");
  o.note("overcounts " + std::to_string(g8) + " / " + std::to_string(g9) + ", pi(1e9) in " + str(b.seconds9, 3) + " s");
  return o;
}

Outcome riemann_overcount() {
  Outcome o;
  const auto& b = big_counts();
  const auto r8 = analytic::apply_rounding(analytic::riemann_prediction(1e8) - static_cast<double>(b.pi8),
                                           analytic::Rounding::truncate);
  const auto r9 = analytic::apply_rounding(analytic::riemann_prediction(1e9) - static_cast<double>(b.pi9),
                                           analytic::Rounding::truncate);
  o.require(std::llabs(r8 - 131) <= 1, "Riemann overcount at 1e8 = " + std::to_string(r8));
  o.require(std::llabs(r9 + 15) <= 1, "Riemann overcount at 1e9 = " + std::to_string(r9));
  o.note("overcounts " + std::to_string(r8) + " / " + std::to_string(r9));
  return o;
}

// ---- 7 ---------------------------------------------------------------------

Outcome psi_table() {
  Outcome o;
  const std::vector<std::uint64_t> xs = {100, 1000, 10000, 100000, 1000000};
  const std::int64_t want[] = {94, 997, 10013, 100052, 999587};
  const auto psi = analytic::chebyshev_psi_at(xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto n = analytic::apply_rounding(psi[i], analytic::Rounding::nearest);
    o.require(n == want[i], mismatch("round(psi)", xs[i], n, want[i]));
    o.require(analytic::psi_rh_inequality_check(static_cast<double>(xs[i]), psi[i]),
              "RH inequality fails at " + std::to_string(xs[i]));
  }
  o.note("94, 997, 10013, 100052, 999587; RH check true");
  return o;
}

// ---- 8 ---------------------------------------------------------------------

Outcome zeta_zeros() {
  Outcome o;
  analytic::ZeroTable z;
  const double t = timed([&] { z = analytic::find_zeros(analytic::LFunctionId::zeta(), 31.0); });
  const double want[] = {14.1347, 21.02, 25.01, 30.42};
  o.require(z.ordinates.size() == 4, std::to_string(z.ordinates.size()) + " zeros below 31");
  for (std::size_t i = 0; i < std::min<std::size_t>(4, z.ordinates.size()); ++i) {
    const double tol = i == 0 ? 1e-3 : 1e-2;
    o.require(std::fabs(z.ordinates[i] - want[i]) <= tol, "zero " + std::to_string(i + 1) + " = " + str(z.ordinates[i], 10));
  }
  o.require(t < 30.0, "runtime " + str(t) + " s >= 30 s");
  std::string list;
  for (double g : z.ordinates) list += (list.empty() ? "" : ", ") + str(g, 8);
  o.note(list);
  return o;
}

// ---- 9 ---------------------------------------------------------------------

Outcome explicit_quality() {
  Outcome o;
  const auto grid = wave::log_grid(1e4, 1e6, 500);
  const std::vector<std::size_t> truncations = {10, 100};
  struct Case {
    const char* name;
    wave::Target target;
    analytic::LFunctionId id;
    double t_max;
  };
  const Case cases[] = {{"pi-li", wave::Target::pi_li, analytic::LFunctionId::zeta(), 240.0},
                        {"mod4", wave::Target::mod4, analytic::LFunctionId::beta4(), 180.0}};
  for (const auto& c : cases) {
    const auto zeros = analytic::find_zeros(c.id, c.t_max);
    const auto truth = wave::truth_curve(c.target, grid);
    const auto series = wave::wave_series(zeros, grid, truncations);
    const double r10 = wave::compare_series(truth, series[0]).rms;
    const double r100 = wave::compare_series(truth, series[1]).rms;
    o.require(r100 < r10, std::string(c.name) + " rms(100) " + str(r100) + " >= rms(10) " + str(r10));
    o.note(std::string(c.name) + " rms " + str(r10) + " -> " + str(r100));
  }
  return o;
}

// ---- 10 --------------------------------------------------------------------

Outcome pair_counts() {
  Outcome o;
  const double t = timed([&] {
    std::vector<pairs::GapSpec> gaps;
    for (std::uint64_t g : {2, 4, 6, 8, 10}) gaps.push_back(pairs::GapSpec::of(g));
    const std::vector<std::uint64_t> xs = {1000, 10000, 100000, 1000000};
    const auto counts = pairs::count_pairs(SieveLimit(1000000), gaps, xs);
    const std::uint64_t raw[4][5] = {
        {35, 41, 74, 38, 51}, {205, 203, 411, 208, 270}, {1224, 1216, 2447, 1260, 1624}, {8169, 8144, 16386, 8242, 10934}};
    const std::int64_t hl[4] = {45, 214, 1248, 8248};
    const std::int64_t diff[5][4] = {
        {-10, -9, -24, -79}, {-4, -11, -32, -104}, {-8, -9, -25, -55}, {-7, -6, 12, -6}, {-7, -12, -30, -48}};
    const auto cells = pairs::hl_table(counts);
    for (std::size_t g = 0; g < 5; ++g) {
      for (std::size_t r = 0; r < 4; ++r) {
        const auto& cell = cells[g * 4 + r];
        o.require(cell.raw == raw[r][g], mismatch("pi_" + std::to_string(gaps[g].gap), xs[r], cell.raw, raw[r][g]));
        o.require(std::llabs(cell.prediction_floor - hl[r]) <= 1,
                  mismatch("pi_HL", xs[r], cell.prediction_floor, hl[r]));
        o.require(std::llabs(cell.difference_floor - diff[g][r]) <= 1,
                  mismatch("difference gap " + std::to_string(gaps[g].gap), xs[r], cell.difference_floor, diff[g][r]));
      }
    }
  });
  o.require(t < 10.0, "runtime " + str(t) + " s >= 10 s");
  o.note("20 raw counts exact, pi_HL and 20 differences within 1");
  return o;
}

// ---- 11 --------------------------------------------------------------------

Outcome densities() {
  Outcome o;
  const std::vector<races::TeamSpec> teams = {{"3", {3}}, {"1", {1}}};
  const auto ledger = races::run_dense_race(SieveLimit(10000000), 4, teams);
  const auto log_share = races::leader_density(ledger, races::team_ahead(0), 10000000, races::DensityKind::logarithmic);
  const auto natural = races::leader_density(ledger, races::team_ahead(1), 26860, races::DensityKind::natural);
  o.require(log_share.value > 0.95, "log density of Team 3 ahead to 1e7 = " + str(log_share.value, 6) + " <= 0.95");
  o.require(natural.value == 0.0, "natural share of Team 1 ahead to 26860 = " + str(natural.value));
  o.note("log density " + str(log_share.value, 6) + ", natural Team 1 share " + str(natural.value));
  return o;
}

// ---- 12 --------------------------------------------------------------------

Outcome ford_konyagin() {
  Outcome o;
  const wave::HypotheticalZero z{0.75, 1.0};
  const auto grid = wave::log_grid(2, 1e12, 10000);
  const auto hits = wave::count_ordering_3_2_4_1(z, grid, z.sigma / 2);
  o.require(hits == 0, std::to_string(hits) + " grid points show 3<2<4<1");
  for (double x : grid) {
    const auto p = wave::ford_konyagin_profile(z, x);
    if (p[0] + p[3] != 0.0 || p[1] + p[2] != 0.0) {
      o.require(false, "antisymmetry fails at x=" + str(x, 10));
      break;
    }
  }
  o.note("0 of 10000 points, identities exact");
  return o;
}

// ---- 13 --------------------------------------------------------------------

Outcome random_walk() {
  Outcome o;
  const double f3 = races::return_fraction(races::simulate_tie_walk({3, 100000, 200, 2024}));
  const double f4 = races::return_fraction(races::simulate_tie_walk({4, 100000, 200, 2024}));
  o.require(f3 > f4, "2-D fraction " + str(f3) + " <= 3-D fraction " + str(f4));
  o.note("2-D " + str(f3) + " > 3-D " + str(f4));
  return o;
}

// ---- 14 --------------------------------------------------------------------

Outcome properties() {
  Outcome o;
  std::vector<std::uint64_t> primes;
  sieve::enumerate_primes(SieveLimit(100000), {}, [&](std::uint64_t p) { primes.push_back(p); });
  o.require(primes == oracle::primes_upto(100000), "sieve differs from trial division below 1e5");

  std::mt19937_64 rng(14);
  for (std::uint32_t q : {3u, 4u, 5u, 8u, 10u, 12u, 30u}) {
    std::vector<std::uint64_t> xs;
    for (int i = 0; i < 5; ++i) xs.push_back(1000 + rng() % 200000);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    const auto c = sieve::count_in_progressions(SieveLimit(xs.back()), q, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto pi = sieve::prime_pi(SieveLimit(xs[i]));
      const auto small = sieve::prime_divisors(q).size();
      o.require(c[i].total() + small == pi, "partition identity fails for q=" + std::to_string(q));
    }

    std::stringstream ss;
    sieve::checkpoint_save(c, ss);
    o.require(sieve::checkpoint_load(ss) == c, "checkpoint round trip fails for q=" + std::to_string(q));
  }

  for (const auto& id : {analytic::LFunctionId::zeta(), analytic::LFunctionId::beta4()}) {
    const auto z = analytic::find_zeros(id, 60.0);
    std::stringstream ss;
    analytic::write_zero_table(z, ss);
    const auto back = analytic::parse_zero_table(ss, id);
    bool same = back.ordinates.size() == z.ordinates.size();
    for (std::size_t i = 0; same && i < z.ordinates.size(); ++i) {
      same = std::fabs(back.ordinates[i] - z.ordinates[i]) <= back.precision;
    }
    o.require(same, "zero table round trip fails for " + id.name());
  }

  std::uniform_real_distribution<double> re(0.05, 3.0), im(-60.0, 60.0);
  for (const auto& id : {analytic::LFunctionId::zeta(), analytic::LFunctionId::beta4(), analytic::LFunctionId::quadratic(7)}) {
    for (int i = 0; i < 40; ++i) {
      const std::complex<double> s(re(rng), im(rng));
      const auto a = analytic::evaluate_l(id, std::conj(s));
      const auto b = std::conj(analytic::evaluate_l(id, s));
      o.require(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)), "conjugate symmetry fails for " + id.name());
    }
  }

  const double z2 = analytic::evaluate_l(analytic::LFunctionId::zeta(), 2.0).real();
  const double b1 = analytic::evaluate_l(analytic::LFunctionId::beta4(), 1.0).real();
  o.require(std::fabs(z2 - std::numbers::pi * std::numbers::pi / 6) < 1e-6, "zeta(2) = " + str(z2, 12));
  o.require(std::fabs(b1 - std::numbers::pi / 4) < 1e-6, "beta(1) = " + str(b1, 12));
  o.note("sieve, partition, round trips, conjugate symmetry, zeta(2), beta(1)");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"mod 4 counts to 1e5", mod4_counts},
      {"mod 3 counts to 1e7", mod3_counts},
      {"last-digit and mod 8 counts to 1e6", digit_counts},
      {"mod 4 lead-change ground truth", lead_changes},
      {"pi at 1e8, 1e9 and the Li overcount", li_overcount},
      {"Riemann-correction overcount", riemann_overcount},
      {"psi table", psi_table},
      {"zeta zeros below 31", zeta_zeros},
      {"explicit formula improves with more zeros", explicit_quality},
      {"prime pairs against Hardy-Littlewood", pair_counts},
      {"race densities", densities},
      {"Ford-Konyagin ordering", ford_konyagin},
      {"random-walk model", random_walk},
      {"property suites", properties},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    const double t = timed([&] {
      try {
        out = criteria[i].second();
      } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
      }
    });
    failures += !out.pass;
    std::printf("%s %2zu  %-45s %8.2f s  %s\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), t,
                out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
