// races.hpp
// Race bookkeeping on top of progression counts: teams, ledgers, lead
// changes, normalised error terms, histograms and density measures.

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prime_race/sieve.hpp"

namespace prime_race::races {

inline constexpr const char* kTieLabel = "tie";

struct TeamSpec {
  std::string label;
  std::vector<std::uint32_t> residues;
};

// Nonempty teams, residues coprime to q and < q, pairwise disjoint, labels
// unique and usable in CSV ("tie", ',', ':' and newlines are rejected).
void validate_teams(std::uint32_t q, std::span<const TeamSpec> teams);

// Cumulative team counts at ascending sample points. A dense ledger has a
// sample at every prime that belongs to some team (plus any requested
// checkpoints), so the counts at any integer x <= coverage are those of the
// last sample <= x.
class RaceLedger {
 public:
  RaceLedger(std::uint32_t modulus, std::vector<TeamSpec> teams, bool dense,
             std::uint64_t coverage);

  void push(std::uint64_t x, std::span<const std::uint64_t> team_counts);

  std::uint32_t modulus() const noexcept { return modulus_; }
  const std::vector<TeamSpec>& teams() const noexcept { return teams_; }
  std::size_t team_count() const noexcept { return teams_.size(); }
  bool dense() const noexcept { return dense_; }
  std::uint64_t coverage() const noexcept { return coverage_; }

  std::size_t size() const noexcept { return xs_.size(); }
  std::uint64_t x(std::size_t i) const { return xs_.at(i); }
  const std::vector<std::uint64_t>& xs() const noexcept { return xs_; }
  std::span<const std::uint64_t> row(std::size_t i) const;
  std::uint64_t count(std::size_t i, std::size_t team) const { return row(i)[team]; }

  // Team counts in force at integer x. Dense ledgers only.
  std::vector<std::uint64_t> counts_at(std::uint64_t x) const;

  std::size_t team_index(const std::string& label) const;

 private:
  std::uint32_t modulus_;
  std::vector<TeamSpec> teams_;
  bool dense_;
  std::uint64_t coverage_;
  std::vector<std::uint64_t> xs_;
  std::vector<std::uint64_t> counts_;  // row-major, team_count() per sample
};

// Sparse ledger: one sample per ResidueCounts entry.
RaceLedger run_race(std::span<const sieve::ResidueCounts> counts, std::span<const TeamSpec> teams);

// Dense ledger built straight from the prime stream up to `limit`.
RaceLedger run_dense_race(const sieve::SieveLimit& limit, std::uint32_t q,
                          std::span<const TeamSpec> teams, const sieve::SegmentPlan& plan = {},
                          std::span<const std::uint64_t> checkpoints = {});

// Index of the strict maximum, or nullopt on a tie for first place.
template <class T>
std::optional<std::size_t> strict_leader(std::span<const T> values) {
  if (values.empty()) return std::nullopt;
  std::size_t best = 0;
  bool tied = false;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[best] < values[i]) {
      best = i;
      tied = false;
    } else if (!(values[i] < values[best])) {
      tied = true;
    }
  }
  if (tied) return std::nullopt;
  return best;
}

// Index of the strict minimum, or nullopt on a tie for last place.
template <class T>
std::optional<std::size_t> strict_trailer(std::span<const T> values) {
  if (values.empty()) return std::nullopt;
  std::size_t worst = 0;
  bool tied = false;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[worst]) {
      worst = i;
      tied = false;
    } else if (!(values[worst] < values[i])) {
      tied = true;
    }
  }
  if (tied) return std::nullopt;
  return worst;
}

struct LeadChangeEvent {
  std::uint64_t x = 0;
  std::string previous_leader;
  std::string new_leader;

  bool operator==(const LeadChangeEvent&) const = default;
};

enum class Place { first, last };

// Feeds successive (x, values) states and records every change of the
// strict leader (or trailer), ties included. Starts in the tie state.
class LeadTracker {
 public:
  LeadTracker(std::vector<std::string> labels, Place place = Place::first);

  void observe(std::uint64_t x, std::span<const std::int64_t> values);
  const std::vector<LeadChangeEvent>& events() const noexcept { return events_; }
  const std::string& current() const noexcept { return current_; }

 private:
  std::vector<std::string> labels_;
  Place place_;
  std::string current_;
  std::vector<LeadChangeEvent> events_;
};

// Throws PreconditionError for a sparse ledger. One-team races have no events.
std::vector<LeadChangeEvent> detect_lead_changes(const RaceLedger& ledger,
                                                 Place place = Place::first);

// Events where a team takes first (or last) place from a different team,
// looking through intervening ties. The first team ever to lead is not a
// takeover.
std::vector<LeadChangeEvent> takeovers(std::span<const LeadChangeEvent> events);

// Integer ranges on which `label` holds the lead: [event x, next event x - 1];
// the final window ends at `coverage`.
struct LeadWindow {
  std::uint64_t first = 0;
  std::uint64_t last = 0;
};

std::vector<LeadWindow> lead_windows(std::span<const LeadChangeEvent> events,
                                     const std::string& label, std::uint64_t coverage);

// Windows grouped into episodes: a window starting no later than
// (1 + relative_gap) times the end of the previous one joins that episode.
struct LeadEpisode {
  std::uint64_t first_lead = 0;  // x where the first window opens
  std::uint64_t last_lead = 0;   // x where the last window opens
  std::uint64_t last_ahead = 0;  // final x still ahead
  std::size_t windows = 0;
};

std::vector<LeadEpisode> lead_episodes(std::span<const LeadWindow> windows,
                                       double relative_gap = 0.25);

std::uint64_t euler_phi(std::uint64_t q);

struct ErrorSample {
  std::uint64_t x = 0;
  std::uint32_t q = 1;
  std::uint32_t a = 0;
  double value = 0.0;
};

// (pi(x;q,a) - pi(x)/phi(q)) * ln x / sqrt x.
ErrorSample error_term(std::uint64_t x, std::uint32_t q, std::uint32_t a, std::uint64_t pi_x,
                       std::uint64_t pi_x_q_a);

// (count_a - count_b) * ln x / sqrt x.
double shanks_ratio(std::uint64_t x, std::uint64_t count_a, std::uint64_t count_b);

struct Histogram {
  std::vector<double> bin_edges;
  std::vector<std::uint64_t> counts;
  std::uint64_t underflow = 0;
  std::uint64_t overflow = 0;
  std::uint64_t total = 0;

  std::size_t mode_bin() const;
};

// Uniform bins on [lo, hi]; each bin closed-left/open-right except the last.
Histogram build_histogram(std::span<const double> samples, std::size_t bins, double lo, double hi);

enum class DensityKind { logarithmic, natural };

std::string to_string(DensityKind kind);
DensityKind parse_density_kind(const std::string& text);

struct DensityEstimate {
  std::uint64_t X = 0;
  DensityKind kind = DensityKind::logarithmic;
  double value = 0.0;
};

using TeamPredicate = std::function<bool(std::span<const std::uint64_t>)>;

// Team `team` strictly ahead of every other team.
TeamPredicate team_ahead(std::size_t team);

// logarithmic: (1/ln X) sum_{x=2..X, cond} 1/x; natural: #{1 <= x <= X : cond}/X.
DensityEstimate leader_density(const RaceLedger& ledger, const TeamPredicate& condition,
                               std::uint64_t X, DensityKind kind);

// sum_{x=a..b} 1/x, exact to long double rounding.
long double harmonic_range(std::uint64_t a, std::uint64_t b);

// Largest running natural percentage #{x <= X : cond}/X over X in [lo, hi].
struct RangeMaximum {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  double max_fraction = 0.0;
  std::uint64_t argmax = 0;
};

std::vector<RangeMaximum> running_natural_maximum(
    const RaceLedger& ledger, const TeamPredicate& condition,
    std::span<const std::pair<std::uint64_t, std::uint64_t>> ranges);

// Nonzero squares and non-squares mod an odd prime q.
struct QuadraticClasses {
  std::vector<std::uint32_t> squares;
  std::vector<std::uint32_t> nonsquares;
};

QuadraticClasses squares_mod(std::uint32_t q);

// Race CSV rows "x,<label>:<count>,...", events "x,prev,next",
// density JSON {"X":..,"kind":..,"value":..}.
void write_race_csv(const RaceLedger& ledger, std::ostream& out);
void write_events_csv(std::span<const LeadChangeEvent> events, std::ostream& out);
std::string density_json(const DensityEstimate& estimate);

}  // namespace prime_race::races
