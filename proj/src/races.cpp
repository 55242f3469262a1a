#include "prime_race/races.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>

#include <json.hpp>

#include "prime_race/text.hpp"

namespace prime_race::races {

namespace {

constexpr long double kEulerGamma = 0.577215664901532860606512090082402431L;

// H(n) = sum_{k=1..n} 1/k.
long double harmonic(std::uint64_t n) {
  if (n == 0) return 0.0L;
  if (n <= 2048) {
    long double s = 0.0L;
    for (std::uint64_t k = n; k >= 1; --k) s += 1.0L / static_cast<long double>(k);
    return s;
  }
  const long double x = static_cast<long double>(n);
  const long double inv2 = 1.0L / (x * x);
  return std::log(x) + kEulerGamma + 0.5L / x -
         inv2 * (1.0L / 12 - inv2 * (1.0L / 120 - inv2 * (1.0L / 252 - inv2 / 240)));
}

void check_label(const std::string& label) {
  if (label.empty()) throw DomainError("team label must not be empty");
  if (label == kTieLabel) throw DomainError("team label 'tie' is reserved");
  if (label.find_first_of(",:\n\r\"") != std::string::npos) {
    throw DomainError("team label '" + label + "' contains a reserved character");
  }
}

}  // namespace

void validate_teams(std::uint32_t q, std::span<const TeamSpec> teams) {
  if (q < 1) throw DomainError("modulus must be at least 1");
  if (teams.empty()) throw DomainError("a race needs at least one team");
  std::set<std::uint32_t> used;
  std::set<std::string> labels;
  for (const auto& team : teams) {
    check_label(team.label);
    if (!labels.insert(team.label).second) {
      throw DomainError("duplicate team label '" + team.label + "'");
    }
    if (team.residues.empty()) throw DomainError("team '" + team.label + "' has no residues");
    for (std::uint32_t r : team.residues) {
      sieve::ProgressionSpec{q, r}.validate_for_counting();
      if (!used.insert(r).second) {
        throw DomainError("residue " + std::to_string(r) + " appears in more than one team");
      }
    }
  }
}

RaceLedger::RaceLedger(std::uint32_t modulus, std::vector<TeamSpec> teams, bool dense,
                       std::uint64_t coverage)
    : modulus_(modulus), teams_(std::move(teams)), dense_(dense), coverage_(coverage) {
  validate_teams(modulus_, teams_);
}

void RaceLedger::push(std::uint64_t x, std::span<const std::uint64_t> team_counts) {
  if (team_counts.size() != teams_.size()) throw DomainError("team count width mismatch");
  if (!xs_.empty() && x <= xs_.back()) throw DomainError("ledger samples must be strictly ascending");
  if (!xs_.empty()) {
    const auto prev = row(xs_.size() - 1);
    for (std::size_t t = 0; t < team_counts.size(); ++t) {
      if (team_counts[t] < prev[t]) throw DomainError("team counts must be nondecreasing");
    }
  }
  xs_.push_back(x);
  counts_.insert(counts_.end(), team_counts.begin(), team_counts.end());
}

std::span<const std::uint64_t> RaceLedger::row(std::size_t i) const {
  if (i >= xs_.size()) throw std::out_of_range("ledger row out of range");
  return std::span<const std::uint64_t>(counts_).subspan(i * teams_.size(), teams_.size());
}

std::vector<std::uint64_t> RaceLedger::counts_at(std::uint64_t x) const {
  if (!dense_) throw PreconditionError("counts_at requires a dense ledger");
  if (x > coverage_) throw PreconditionError("x beyond ledger coverage");
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  if (it == xs_.begin()) return std::vector<std::uint64_t>(teams_.size(), 0);
  const auto r = row(static_cast<std::size_t>(it - xs_.begin()) - 1);
  return {r.begin(), r.end()};
}

std::size_t RaceLedger::team_index(const std::string& label) const {
  for (std::size_t i = 0; i < teams_.size(); ++i) {
    if (teams_[i].label == label) return i;
  }
  throw DomainError("no team labelled '" + label + "'");
}

RaceLedger run_race(std::span<const sieve::ResidueCounts> counts, std::span<const TeamSpec> teams) {
  if (counts.empty()) throw DomainError("run_race needs at least one checkpoint");
  const std::uint32_t q = counts.front().modulus;
  RaceLedger ledger(q, {teams.begin(), teams.end()}, false, counts.back().x);
  std::vector<std::uint64_t> row(teams.size());
  for (const auto& rc : counts) {
    if (rc.modulus != q) throw DomainError("checkpoint series mixes moduli");
    for (std::size_t t = 0; t < teams.size(); ++t) {
      row[t] = 0;
      for (std::uint32_t r : teams[t].residues) row[t] += rc.at(r);
    }
    ledger.push(rc.x, row);
  }
  return ledger;
}

RaceLedger run_dense_race(const sieve::SieveLimit& limit, std::uint32_t q,
                          std::span<const TeamSpec> teams, const sieve::SegmentPlan& plan,
                          std::span<const std::uint64_t> checkpoints) {
  validate_teams(q, teams);
  sieve::validate_checkpoints(limit.value(), checkpoints);
  RaceLedger ledger(q, {teams.begin(), teams.end()}, true, limit.value());
  std::vector<std::int32_t> slot(q, -1);
  for (std::size_t t = 0; t < teams.size(); ++t) {
    for (std::uint32_t r : teams[t].residues) slot[r] = static_cast<std::int32_t>(t);
  }
  std::vector<std::uint64_t> current(teams.size(), 0);
  std::size_t next_cp = 0;
  auto flush_checkpoints_below = [&](std::uint64_t bound) {
    while (next_cp < checkpoints.size() && checkpoints[next_cp] < bound) {
      const std::uint64_t cp = checkpoints[next_cp++];
      if (ledger.size() == 0 || ledger.xs().back() < cp) ledger.push(cp, current);
    }
  };
  sieve::enumerate_primes(limit, plan, [&](std::uint64_t p) {
    const std::int32_t s = slot[p % q];
    if (s < 0) return;
    flush_checkpoints_below(p);
    ++current[static_cast<std::size_t>(s)];
    ledger.push(p, current);
  });
  flush_checkpoints_below(limit.value() + 1);
  return ledger;
}

LeadTracker::LeadTracker(std::vector<std::string> labels, Place place)
    : labels_(std::move(labels)), place_(place), current_(kTieLabel) {}

void LeadTracker::observe(std::uint64_t x, std::span<const std::int64_t> values) {
  if (values.size() != labels_.size()) throw DomainError("tracker width mismatch");
  const auto idx = place_ == Place::first ? strict_leader(values) : strict_trailer(values);
  const std::string& state = idx ? labels_[*idx] : std::string(kTieLabel);
  if (state != current_) {
    events_.push_back({x, current_, state});
    current_ = state;
  }
}

std::vector<LeadChangeEvent> detect_lead_changes(const RaceLedger& ledger, Place place) {
  if (!ledger.dense()) throw PreconditionError("lead-change detection requires a dense ledger");
  if (ledger.team_count() < 2) return {};
  std::vector<std::string> labels;
  for (const auto& t : ledger.teams()) labels.push_back(t.label);
  LeadTracker tracker(std::move(labels), place);
  std::vector<std::int64_t> values(ledger.team_count());
  for (std::size_t i = 0; i < ledger.size(); ++i) {
    const auto r = ledger.row(i);
    for (std::size_t t = 0; t < values.size(); ++t) values[t] = static_cast<std::int64_t>(r[t]);
    tracker.observe(ledger.x(i), values);
  }
  return tracker.events();
}

std::vector<LeadChangeEvent> takeovers(std::span<const LeadChangeEvent> events) {
  std::vector<LeadChangeEvent> out;
  std::string holder;
  for (const auto& e : events) {
    if (e.new_leader == kTieLabel) continue;
    if (!holder.empty() && e.new_leader != holder) out.push_back({e.x, holder, e.new_leader});
    holder = e.new_leader;
  }
  return out;
}

std::vector<LeadWindow> lead_windows(std::span<const LeadChangeEvent> events,
                                     const std::string& label, std::uint64_t coverage) {
  std::vector<LeadWindow> out;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].new_leader != label) continue;
    const std::uint64_t end = (i + 1 < events.size()) ? events[i + 1].x - 1 : coverage;
    out.push_back({events[i].x, end});
  }
  return out;
}

std::vector<LeadEpisode> lead_episodes(std::span<const LeadWindow> windows, double relative_gap) {
  if (!(relative_gap >= 0.0)) throw DomainError("relative_gap must be nonnegative");
  std::vector<LeadEpisode> out;
  for (const auto& w : windows) {
    if (!out.empty() &&
        static_cast<double>(w.first) <= (1.0 + relative_gap) * static_cast<double>(out.back().last_ahead)) {
      auto& ep = out.back();
      ep.last_lead = w.first;
      ep.last_ahead = w.last;
      ++ep.windows;
    } else {
      out.push_back({w.first, w.first, w.last, 1});
    }
  }
  return out;
}

std::uint64_t euler_phi(std::uint64_t q) {
  if (q == 0) throw DomainError("phi(0) is undefined");
  std::uint64_t phi = q;
  for (std::uint64_t p : sieve::prime_divisors(q)) phi = phi / p * (p - 1);
  return phi;
}

ErrorSample error_term(std::uint64_t x, std::uint32_t q, std::uint32_t a, std::uint64_t pi_x,
                       std::uint64_t pi_x_q_a) {
  if (x < 3) throw DomainError("error_term needs x >= 3");
  sieve::ProgressionSpec{q, a}.validate_for_counting();
  const double lx = std::log(static_cast<double>(x));
  const double expected = static_cast<double>(pi_x) / static_cast<double>(euler_phi(q));
  const double value = (static_cast<double>(pi_x_q_a) - expected) * lx / std::sqrt(static_cast<double>(x));
  return {x, q, a, value};
}

double shanks_ratio(std::uint64_t x, std::uint64_t count_a, std::uint64_t count_b) {
  if (x < 3) throw PreconditionError("shanks_ratio needs x >= 3");
  const double diff = static_cast<double>(count_a) - static_cast<double>(count_b);
  return diff * std::log(static_cast<double>(x)) / std::sqrt(static_cast<double>(x));
}

std::size_t Histogram::mode_bin() const {
  return static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

Histogram build_histogram(std::span<const double> samples, std::size_t bins, double lo, double hi) {
  if (bins < 1) throw DomainError("histogram needs at least one bin");
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw DomainError("histogram range must satisfy lo < hi");
  }
  Histogram h;
  h.bin_edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    h.bin_edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
  }
  h.bin_edges.back() = hi;
  h.counts.assign(bins, 0);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (double v : samples) {
    if (std::isnan(v)) throw DomainError("histogram sample is NaN");
    ++h.total;
    if (v < lo) {
      ++h.underflow;
      continue;
    }
    if (v > hi) {
      ++h.overflow;
      continue;
    }
    auto idx = static_cast<std::size_t>(std::min<double>((v - lo) / width, static_cast<double>(bins - 1)));
    while (idx > 0 && v < h.bin_edges[idx]) --idx;
    while (idx + 1 < bins && v >= h.bin_edges[idx + 1]) ++idx;
    ++h.counts[idx];
  }
  return h;
}

std::string to_string(DensityKind kind) {
  return kind == DensityKind::logarithmic ? "logarithmic" : "natural";
}

DensityKind parse_density_kind(const std::string& text) {
  if (text == "log" || text == "logarithmic") return DensityKind::logarithmic;
  if (text == "natural") return DensityKind::natural;
  throw DomainError("unknown density kind '" + text + "'");
}

TeamPredicate team_ahead(std::size_t team) {
  return [team](std::span<const std::uint64_t> counts) {
    const auto leader = strict_leader(counts);
    return leader && *leader == team;
  };
}

long double harmonic_range(std::uint64_t a, std::uint64_t b) {
  if (a == 0) throw DomainError("harmonic_range starts at 1");
  if (b < a) return 0.0L;
  if (b - a < 2048) {
    long double s = 0.0L;
    for (std::uint64_t k = b; k >= a; --k) s += 1.0L / static_cast<long double>(k);
    return s;
  }
  return harmonic(b) - harmonic(a - 1);
}

namespace {

// Constant-state stretches [first, last] of a dense ledger up to X, the
// initial all-zero state included.
struct Stretch {
  std::uint64_t first;
  std::uint64_t last;
  bool condition;
};

std::vector<Stretch> stretches(const RaceLedger& ledger, const TeamPredicate& condition,
                               std::uint64_t X) {
  std::vector<Stretch> out;
  const std::vector<std::uint64_t> zeros(ledger.team_count(), 0);
  const auto& xs = ledger.xs();
  const std::uint64_t first_sample = xs.empty() ? X + 1 : xs.front();
  if (first_sample > 1) {
    out.push_back({1, std::min(X, first_sample - 1), condition(zeros)});
  }
  for (std::size_t i = 0; i < xs.size() && xs[i] <= X; ++i) {
    const std::uint64_t end = (i + 1 < xs.size()) ? std::min(X, xs[i + 1] - 1) : X;
    const bool c = condition(ledger.row(i));
    if (!out.empty() && out.back().condition == c && out.back().last + 1 == xs[i]) {
      out.back().last = end;
    } else {
      out.push_back({xs[i], end, c});
    }
  }
  return out;
}

void require_dense_to(const RaceLedger& ledger, std::uint64_t X) {
  if (!ledger.dense()) throw PreconditionError("density needs a dense ledger");
  if (X > ledger.coverage()) {
    throw PreconditionError("X=" + std::to_string(X) + " beyond ledger coverage " +
                            std::to_string(ledger.coverage()));
  }
}

}  // namespace

DensityEstimate leader_density(const RaceLedger& ledger, const TeamPredicate& condition,
                               std::uint64_t X, DensityKind kind) {
  if (X < 2) throw DomainError("density needs X >= 2");
  require_dense_to(ledger, X);
  const auto parts = stretches(ledger, condition, X);
  double value = 0.0;
  if (kind == DensityKind::natural) {
    std::uint64_t hits = 0;
    for (const auto& s : parts) {
      if (s.condition) hits += s.last - s.first + 1;
    }
    value = static_cast<double>(hits) / static_cast<double>(X);
  } else {
    long double mass = 0.0L;
    for (const auto& s : parts) {
      if (s.condition) mass += harmonic_range(std::max<std::uint64_t>(s.first, 2), s.last);
    }
    value = static_cast<double>(mass / std::log(static_cast<long double>(X)));
  }
  return {X, kind, value};
}

std::vector<RangeMaximum> running_natural_maximum(
    const RaceLedger& ledger, const TeamPredicate& condition,
    std::span<const std::pair<std::uint64_t, std::uint64_t>> ranges) {
  std::uint64_t top = 1;
  for (const auto& [lo, hi] : ranges) {
    if (lo < 1 || hi < lo) throw DomainError("range bounds must satisfy 1 <= lo <= hi");
    top = std::max(top, hi);
  }
  require_dense_to(ledger, top);
  const auto parts = stretches(ledger, condition, top);
  std::vector<std::uint64_t> hits_before(parts.size());
  std::uint64_t hits = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    hits_before[i] = hits;
    if (parts[i].condition) hits += parts[i].last - parts[i].first + 1;
  }

  std::vector<RangeMaximum> out;
  for (const auto& [lo, hi] : ranges) {
    RangeMaximum rm{lo, hi, -1.0, lo};
    auto consider = [&](std::size_t i, std::uint64_t X) {
      const auto& s = parts[i];
      const std::uint64_t c = hits_before[i] + (s.condition ? X - s.first + 1 : 0);
      const double f = static_cast<double>(c) / static_cast<double>(X);
      if (f > rm.max_fraction) {
        rm.max_fraction = f;
        rm.argmax = X;
      }
    };
    auto it = std::upper_bound(parts.begin(), parts.end(), lo,
                               [](std::uint64_t v, const Stretch& s) { return v < s.first; });
    std::size_t i = static_cast<std::size_t>(it - parts.begin()) - 1;
    for (; i < parts.size() && parts[i].first <= hi; ++i) {
      const std::uint64_t a = std::max(lo, parts[i].first);
      const std::uint64_t b = std::min(hi, parts[i].last);
      consider(i, parts[i].condition ? b : a);
    }
    out.push_back(rm);
  }
  return out;
}

QuadraticClasses squares_mod(std::uint32_t q) {
  if (q < 3 || q % 2 == 0 || sieve::prime_divisors(q) != std::vector<std::uint64_t>{q}) {
    throw DomainError("squares_mod needs an odd prime modulus, got " + std::to_string(q));
  }
  std::vector<bool> is_square(q, false);
  for (std::uint64_t b = 1; b <= (q - 1) / 2; ++b) is_square[b * b % q] = true;
  QuadraticClasses out;
  for (std::uint32_t a = 1; a < q; ++a) (is_square[a] ? out.squares : out.nonsquares).push_back(a);
  return out;
}

void write_race_csv(const RaceLedger& ledger, std::ostream& out) {
  out << "# modulus=" << ledger.modulus() << '\n';
  for (std::size_t i = 0; i < ledger.size(); ++i) {
    out << ledger.x(i);
    const auto r = ledger.row(i);
    for (std::size_t t = 0; t < r.size(); ++t) out << ',' << ledger.teams()[t].label << ':' << r[t];
    out << '\n';
  }
}

void write_events_csv(std::span<const LeadChangeEvent> events, std::ostream& out) {
  out << "x,prev,next\n";
  for (const auto& e : events) out << e.x << ',' << e.previous_leader << ',' << e.new_leader << '\n';
}

std::string density_json(const DensityEstimate& estimate) {
  nlohmann::ordered_json j;
  j["X"] = estimate.X;
  j["kind"] = to_string(estimate.kind);
  j["value"] = estimate.value;
  return j.dump();
}

}  // namespace prime_race::races
