#include "prime_race/prime_pairs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "prime_race/text.hpp"

namespace prime_race::pairs {

namespace {

std::vector<std::uint32_t> raw_gaps(std::span<const GapSpec> gaps) {
  std::vector<std::uint32_t> out;
  for (const auto& g : gaps) out.push_back(GapSpec::of(g.gap).gap);
  return out;
}

// prod (p-2) and prod (p-1) over odd primes p | k.
std::pair<std::uint64_t, std::uint64_t> singular_parts(std::uint64_t k) {
  std::uint64_t num = 1, den = 1;
  for (std::uint64_t p : sieve::prime_divisors(k)) {
    if (p == 2) continue;
    num *= p - 2;
    den *= p - 1;
  }
  return {num, den};
}

}  // namespace

GapSpec GapSpec::of(std::uint64_t gap) {
  if (gap < 2 || gap % 2 != 0 || gap > 0xFFFFFFFFULL) {
    throw DomainError("pair gap must be an even integer >= 2, got " + std::to_string(gap));
  }
  return GapSpec{static_cast<std::uint32_t>(gap)};
}

void PairCounts::validate() const {
  GapSpec::of(gap.gap);
  if (xs.size() != counts.size()) throw DomainError("pair checkpoints and counts differ in length");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] <= xs[i - 1]) throw DomainError("pair checkpoints must be strictly ascending");
    if (counts[i] < counts[i - 1]) throw DomainError("pair counts must be nondecreasing");
  }
}

std::uint64_t PairCounts::at(std::uint64_t x) const {
  const auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it == xs.end() || *it != x) throw DomainError("no pair count at x = " + std::to_string(x));
  return counts[static_cast<std::size_t>(it - xs.begin())];
}

std::vector<PairCounts> count_pairs(const sieve::SieveLimit& limit, std::span<const GapSpec> gaps,
                                    std::span<const std::uint64_t> checkpoints,
                                    const sieve::SegmentPlan& plan) {
  const auto g = raw_gaps(gaps);
  sieve::validate_checkpoints(limit.value(), checkpoints);
  std::vector<PairCounts> out(gaps.size());
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    out[i].gap = gaps[i];
    out[i].xs.assign(checkpoints.begin(), checkpoints.end());
    out[i].counts.assign(checkpoints.size(), 0);
  }
  if (checkpoints.empty() || g.empty()) return out;
  std::vector<std::uint64_t> bucket(checkpoints.size() * g.size(), 0);
  std::size_t j = 0;
  sieve::for_each_prime_pair_in(2, checkpoints.back(), g, plan, [&](std::uint64_t p, std::size_t gi) {
    while (checkpoints[j] < p) ++j;
    ++bucket[j * g.size() + gi];
  });
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::uint64_t running = 0;
    for (std::size_t c = 0; c < checkpoints.size(); ++c) {
      running += bucket[c * g.size() + i];
      out[i].counts[c] = running;
    }
  }
  return out;
}

HLConstants compute_c2(std::uint64_t prime_limit) {
  if (prime_limit < 3) throw DomainError("twin prime constant needs prime_limit >= 3");
  long double product = 1.0L;
  sieve::for_each_prime_in(3, prime_limit, sieve::SegmentPlan{}, [&](std::uint64_t p) {
    const long double d = static_cast<long double>(p - 1);
    product *= 1.0L - 1.0L / (d * d);
  });
  const long double L = static_cast<long double>(prime_limit);
  const long double tail = 1.0L / L + 1.0L / (2 * L * L) + 1.0L / (6 * L * L * L);
  return {static_cast<double>(product), static_cast<double>(product * tail)};
}

const HLConstants& twin_prime_constants() {
  static const HLConstants constants = compute_c2();
  return constants;
}

double singular_factor(std::uint64_t k) {
  if (k == 0) throw DomainError("singular factor needs k >= 1");
  const auto [num, den] = singular_parts(k);
  return static_cast<double>(den) / static_cast<double>(num);
}

std::vector<double> normalized_count(const PairCounts& counts) {
  counts.validate();
  const double f = singular_factor(counts.gap.k());
  std::vector<double> out;
  for (std::uint64_t c : counts.counts) out.push_back(static_cast<double>(c) / f);
  return out;
}

double hl_prediction(double x, const HLConstants& constants, const analytic::QuadratureConfig& cfg) {
  return 2.0 * constants.c2 * analytic::li2(x, cfg);
}

std::vector<HLCell> hl_table(std::span<const PairCounts> counts, const HLConstants& constants) {
  std::vector<HLCell> out;
  for (const auto& pc : counts) {
    const auto norm = normalized_count(pc);
    for (std::size_t i = 0; i < pc.xs.size(); ++i) {
      if (pc.xs[i] < 2) throw DomainError("prediction needs x >= 2");
      HLCell cell;
      cell.x = pc.xs[i];
      cell.gap = pc.gap;
      cell.raw = pc.counts[i];
      cell.normalized = norm[i];
      cell.prediction = hl_prediction(static_cast<double>(cell.x), constants);
      cell.prediction_floor = analytic::apply_rounding(cell.prediction, analytic::Rounding::floor);
      cell.difference_floor =
          analytic::apply_rounding(cell.normalized, analytic::Rounding::floor) - cell.prediction_floor;
      cell.prediction_nearest = analytic::apply_rounding(cell.prediction, analytic::Rounding::nearest);
      cell.difference_nearest =
          analytic::apply_rounding(cell.normalized - cell.prediction, analytic::Rounding::nearest);
      out.push_back(cell);
    }
  }
  return out;
}

void write_twin_csv(std::span<const HLCell> cells, std::ostream& out) {
  out << "x,gap,raw,normalized,hl_prediction,difference\n";
  for (const auto& c : cells) {
    out << c.x << ',' << c.gap.gap << ',' << c.raw << ',' << text::format_double(c.normalized) << ','
        << c.prediction_floor << ',' << c.difference_floor << '\n';
  }
}

PairRace pair_race(std::span<const GapSpec> gaps, const sieve::SieveLimit& limit,
                   std::span<const std::uint64_t> checkpoints, const sieve::SegmentPlan& plan,
                   std::uint64_t events_from) {
  const auto g = raw_gaps(gaps);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (g[i] == g[j]) throw DomainError("pair race gaps must be distinct");
    }
  }
  sieve::validate_checkpoints(limit.value(), checkpoints);

  PairRace race;
  race.gaps.assign(gaps.begin(), gaps.end());
  for (std::uint32_t gap : g) race.labels.push_back(std::to_string(gap));
  for (std::size_t i = 0; i < g.size(); ++i) {
    race.counts.push_back(PairCounts{gaps[i], {checkpoints.begin(), checkpoints.end()},
                                     std::vector<std::uint64_t>(checkpoints.size(), 0)});
  }

  // normalized count i = raw_i * weight_i / common_den, compared via raw_i * weight_i
  std::uint64_t common_den = 1;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> parts;
  for (std::uint32_t gap : g) {
    parts.push_back(singular_parts(gap / 2));
    common_den = std::lcm(common_den, parts.back().second);
  }
  std::vector<std::int64_t> weight;
  for (const auto& [num, den] : parts) {
    const unsigned __int128 w = static_cast<unsigned __int128>(num) * (common_den / den);
    if (w * limit.value() > static_cast<unsigned __int128>(INT64_MAX)) {
      throw CapacityError("exact normalized counts overflow for this gap set");
    }
    weight.push_back(static_cast<std::int64_t>(w));
  }

  const bool track = g.size() >= 2;
  races::LeadTracker first(race.labels, races::Place::first);
  races::LeadTracker last(race.labels, races::Place::last);
  std::vector<std::int64_t> scaled(g.size(), 0);
  std::vector<std::uint64_t> raw(g.size(), 0);
  std::uint64_t pending = 0;
  auto flush = [&] {
    if (pending == 0 || !track) return;
    first.observe(pending, scaled);
    last.observe(pending, scaled);
  };
  std::size_t c = 0;
  auto record_until = [&](std::uint64_t x) {
    // checkpoints below x see the counts so far
    for (; c < checkpoints.size() && checkpoints[c] < x; ++c) {
      for (std::size_t i = 0; i < g.size(); ++i) race.counts[i].counts[c] = raw[i];
    }
  };
  if (!g.empty() && limit.value() >= 3) {
    sieve::for_each_prime_pair_in(2, limit.value(), g, plan, [&](std::uint64_t p, std::size_t gi) {
      if (p != pending) {
        flush();
        record_until(p);
        pending = p;
      }
      ++raw[gi];
      scaled[gi] += weight[gi];
    });
  }
  flush();
  record_until(UINT64_MAX);

  auto keep = [&](const std::vector<races::LeadChangeEvent>& events) {
    std::vector<races::LeadChangeEvent> out;
    for (const auto& e : events) {
      if (e.x >= events_from) out.push_back(e);
    }
    return out;
  };
  if (track) {
    race.first_place = keep(first.events());
    race.last_place = keep(last.events());
  }
  return race;
}

}  // namespace prime_race::pairs
