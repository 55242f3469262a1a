#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "prime_race/checkpoint.hpp"
#include "prime_race/errors.hpp"
#include "prime_race/explicit_formula.hpp"
#include "prime_race/prime_pairs.hpp"
#include "prime_race/races.hpp"
#include "prime_race/random_walk.hpp"
#include "prime_race/sieve.hpp"
#include "prime_race/special_functions.hpp"
#include "prime_race/svg.hpp"
#include "prime_race/text.hpp"
#include "prime_race/zero_table.hpp"

namespace prime_race::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using sieve::ResidueCounts;

namespace {

constexpr std::uint64_t kDenseDeskLimit = 100000000;

sieve::LongRun policy(const Common& c) { return c.long_run ? sieve::LongRun::allowed : sieve::LongRun::forbidden; }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::uint32_t parse_u32(const std::string& text, const char* what) {
  const std::uint64_t v = parse_count(text);
  if (v > UINT32_MAX) throw DomainError(std::string(what) + " is too large");
  return static_cast<std::uint32_t>(v);
}

std::pair<double, double> parse_range(const std::string& text) {
  const auto parts = text::split(text, ':');
  if (parts.size() != 2) throw DomainError("range must be <lo>:<hi>, got '" + text + "'");
  const double lo = parse_real(std::string(parts[0])), hi = parse_real(std::string(parts[1]));
  if (!(lo < hi)) throw DomainError("range needs lo < hi");
  return {lo, hi};
}

void warn(const Common& c, const std::string& msg) {
  if (c.log) *c.log << "warning: " << msg << '\n';
}

// Limit and checkpoints from the usual --limit/--checkpoints pair. Without a
// limit the largest checkpoint the run may afford is used.
std::pair<std::uint64_t, std::vector<std::uint64_t>> resolve_checkpoints(
    const std::optional<std::string>& limit_text, const std::optional<std::string>& spec,
    const Common& c, std::vector<std::uint64_t> (*fallback)(std::uint64_t)) {
  if (!limit_text && !spec) throw DomainError("give --limit or --checkpoints");
  std::optional<std::uint64_t> limit;
  if (limit_text) limit = parse_count(*limit_text);
  std::vector<std::uint64_t> xs;
  if (spec) {
    const std::uint64_t cap = c.long_run ? sieve::kHardCap : sieve::kLongRunThreshold;
    xs = parse_checkpoints(*spec, limit ? limit : std::optional<std::uint64_t>(cap));
  } else {
    xs = fallback(*limit);
  }
  if (!limit) limit = xs.back();
  return {*limit, xs};
}

std::vector<std::uint64_t> only_limit(std::uint64_t limit) { return {limit}; }

std::vector<std::uint64_t> decades_to(std::uint64_t lo, std::uint64_t limit) {
  std::vector<std::uint64_t> xs;
  for (std::uint64_t x = lo; x < limit; x *= 10) xs.push_back(x);
  xs.push_back(limit);
  return xs;
}

std::vector<std::uint64_t> decades_from_10(std::uint64_t limit) { return decades_to(10, limit); }
std::vector<std::uint64_t> decades_from_1000(std::uint64_t limit) { return decades_to(1000, limit); }

// Counts at the checkpoints, served from and merged into the cache
// directory named by PRIME_RACES_CACHE when it is set.
std::vector<ResidueCounts> progression_counts(const sieve::SieveLimit& limit, std::uint32_t q,
                                              const std::vector<std::uint64_t>& xs, const Common& c) {
  const char* dir = std::getenv("PRIME_RACES_CACHE");
  std::map<std::uint64_t, ResidueCounts> cached;
  fs::path file;
  if (dir && *dir) {
    file = fs::path(dir) / ("pi_mod" + std::to_string(q) + ".csv");
    std::error_code ec;
    if (fs::exists(file, ec)) {
      try {
        for (auto& rc : sieve::checkpoint_load(file)) {
          if (rc.modulus == q) cached.emplace(rc.x, std::move(rc));
        }
      } catch (const std::exception& e) {
        warn(c, "ignoring unreadable cache " + file.string() + ": " + e.what());
        cached.clear();
      }
    }
    if (std::all_of(xs.begin(), xs.end(), [&](std::uint64_t x) { return cached.count(x) > 0; })) {
      std::vector<ResidueCounts> out;
      for (auto x : xs) out.push_back(cached.at(x));
      return out;
    }
  }
  auto counts = sieve::count_in_progressions(limit, q, xs, {}, c.workers);
  if (!file.empty()) {
    for (const auto& rc : counts) cached.insert_or_assign(rc.x, rc);
    std::vector<ResidueCounts> merged;
    for (auto& [x, rc] : cached) merged.push_back(rc);
    try {
      fs::create_directories(file.parent_path());
      const fs::path tmp = file.string() + ".tmp";
      sieve::checkpoint_save(merged, tmp);
      fs::rename(tmp, file);
    } catch (const std::exception& e) {
      warn(c, std::string("cache not updated: ") + e.what());
    }
  }
  return counts;
}

double scaled(double v, double x) { return v * std::log(x) / std::sqrt(x); }

}  // namespace

// ---- pi --------------------------------------------------------------------

std::string cmd_pi(const PiArgs& a, const Common& c) {
  auto [limit_value, xs] = resolve_checkpoints(a.limit, a.checkpoints, c, only_limit);
  const sieve::SieveLimit limit(limit_value, policy(c));
  const std::uint32_t q = a.modulus ? parse_u32(*a.modulus, "modulus") : 1;
  if (q == 0) throw DomainError("modulus must be at least 1");
  const auto counts = progression_counts(limit, q, xs, c);

  if (c.format == Format::json) {
    json rows = json::array();
    for (const auto& rc : counts) {
      json row;
      row["x"] = rc.x;
      row["pi"] = sieve::prime_count(rc);
      if (a.modulus) {
        json by;
        for (const auto& [r, n] : rc.counts) by[std::to_string(r)] = n;
        row["counts"] = by;
      }
      rows.push_back(row);
    }
    json j;
    if (a.modulus) j["modulus"] = q;
    j["rows"] = rows;
    return dump(j);
  }
  if (c.format == Format::svg) {
    svg::Chart chart;
    chart.log_x = true;
    chart.x_label = "x";
    if (!a.modulus || q == 1) {
      chart.title = "Li(x) - pi(x)";
      chart.y_label = "Li(x) - pi(x)";
      svg::Series s{"Li(x) - pi(x)", {}, {}};
      for (const auto& rc : counts) {
        if (rc.x < 3) continue;
        s.xs.push_back(static_cast<double>(rc.x));
        s.ys.push_back(analytic::li(static_cast<double>(rc.x)) - static_cast<double>(sieve::prime_count(rc)));
      }
      chart.series.push_back(std::move(s));
    } else {
      chart.title = "Error(x; " + std::to_string(q) + ", a)";
      chart.y_label = "(pi(x;q,a) - pi(x)/phi(q)) ln x / sqrt x";
      for (auto r : sieve::coprime_residues(q)) {
        svg::Series s{"a = " + std::to_string(r), {}, {}};
        for (const auto& rc : counts) {
          if (rc.x < 3) continue;
          s.xs.push_back(static_cast<double>(rc.x));
          s.ys.push_back(races::error_term(rc.x, q, r, sieve::prime_count(rc), rc.at(r)).value);
        }
        chart.series.push_back(std::move(s));
      }
    }
    return chart.render();
  }
  std::ostringstream os;
  if (a.modulus) {
    sieve::checkpoint_save(counts, os);
  } else {
    for (const auto& rc : counts) os << rc.x << ',' << sieve::prime_count(rc) << '\n';
  }
  return os.str();
}

// ---- race ------------------------------------------------------------------

std::string cmd_race(const RaceArgs& a, const Common& c) {
  const std::uint32_t q = parse_u32(a.modulus, "modulus");
  const auto teams = parse_teams(a.teams, q);
  auto [limit_value, xs] = resolve_checkpoints(a.limit, a.checkpoints, c, decades_from_10);
  const bool want_events = a.events || a.all_events;
  const bool want_density = a.density.has_value();
  if ((want_events || want_density) && !a.dense) throw PreconditionError("--events and --density need --dense");
  if (a.place != "first" && a.place != "last") throw DomainError("--place must be first or last");
  const auto place = a.place == "first" ? races::Place::first : races::Place::last;
  if (a.dense && limit_value > kDenseDeskLimit && !c.long_run) {
    throw CapacityError("--dense above 1e8 keeps every prime in memory; add --long-run");
  }
  const sieve::SieveLimit limit(limit_value, policy(c));

  std::optional<races::RaceLedger> dense;
  std::optional<races::RaceLedger> sparse;
  if (a.dense) {
    dense = races::run_dense_race(limit, q, teams, {}, xs);
    sparse.emplace(q, teams, false, limit_value);
    for (auto x : xs) sparse->push(x, dense->counts_at(x));
  } else {
    sparse = races::run_race(progression_counts(limit, q, xs, c), teams);
  }

  std::vector<races::LeadChangeEvent> events;
  if (want_events) {
    events = races::detect_lead_changes(*dense, place);
    if (!a.all_events) events = races::takeovers(events);
  }
  std::optional<races::DensityEstimate> density;
  if (want_density) {
    const std::string label = a.ahead ? *a.ahead : teams.front().label;
    const std::uint64_t X = a.density_x ? parse_count(*a.density_x) : limit_value;
    density = races::leader_density(*dense, races::team_ahead(dense->team_index(label)), X,
                                    races::parse_density_kind(*a.density));
  }

  if (c.format == Format::json) {
    json j;
    j["modulus"] = q;
    json tj = json::array();
    for (const auto& t : teams) tj.push_back({{"label", t.label}, {"residues", t.residues}});
    j["teams"] = tj;
    json rows = json::array();
    for (std::size_t i = 0; i < sparse->size(); ++i) {
      const auto row = sparse->row(i);
      json counts;
      for (std::size_t t = 0; t < teams.size(); ++t) counts[teams[t].label] = row[t];
      const auto lead = place == races::Place::first ? races::strict_leader(row) : races::strict_trailer(row);
      rows.push_back({{"x", sparse->x(i)}, {"counts", counts}, {"leader", lead ? teams[*lead].label : "tie"}});
    }
    j["rows"] = rows;
    if (want_events) {
      json ev = json::array();
      for (const auto& e : events) ev.push_back({{"x", e.x}, {"prev", e.previous_leader}, {"next", e.new_leader}});
      j["events"] = ev;
    }
    if (density) j["density"] = json::parse(races::density_json(*density));
    return dump(j);
  }
  if (c.format == Format::svg) {
    svg::Chart chart;
    chart.title = "Mod " + std::to_string(q) + " race";
    chart.x_label = "x";
    chart.y_label = "(count - mean) ln x / sqrt x";
    chart.log_x = true;
    std::vector<std::uint64_t> sample = xs;
    if (dense && limit_value >= 20) {
      sample.clear();
      for (double x : wave::log_grid(10.0, static_cast<double>(limit_value), 1500)) {
        sample.push_back(static_cast<std::uint64_t>(x));
      }
      sample.erase(std::unique(sample.begin(), sample.end()), sample.end());
    }
    for (std::size_t t = 0; t < teams.size(); ++t) {
      svg::Series s{teams[t].label, {}, {}};
      for (auto x : sample) {
        if (x < 3) continue;
        std::vector<std::uint64_t> row;
        if (dense) {
          row = dense->counts_at(x);
        } else {
          const auto r = sparse->row(static_cast<std::size_t>(std::find(xs.begin(), xs.end(), x) - xs.begin()));
          row.assign(r.begin(), r.end());
        }
        double mean = 0;
        for (auto v : row) mean += static_cast<double>(v);
        mean /= static_cast<double>(row.size());
        s.xs.push_back(static_cast<double>(x));
        s.ys.push_back(scaled(static_cast<double>(row[t]) - mean, static_cast<double>(x)));
      }
      chart.series.push_back(std::move(s));
    }
    for (const auto& e : events) chart.markers_x.push_back(static_cast<double>(e.x));
    return chart.render();
  }
  std::ostringstream os;
  if (!want_events && !want_density) {
    races::write_race_csv(*sparse, os);
    return os.str();
  }
  if (want_events) races::write_events_csv(events, os);
  if (density) {
    if (want_events) os << '\n';
    os << "X,kind,value\n"
       << density->X << ',' << races::to_string(density->kind) << ',' << text::format_double(density->value) << '\n';
  }
  return os.str();
}

// ---- zeros -----------------------------------------------------------------

std::string cmd_zeros(const ZerosArgs& a, const Common& c) {
  const auto id = analytic::LFunctionId::parse(a.lfunction);
  const double tmax = parse_real(a.tmax);
  analytic::ZeroSearchConfig cfg;
  if (a.scan_step) cfg.scan_step = parse_real(*a.scan_step);
  if (a.precision) cfg.precision = parse_real(*a.precision);
  const auto table = analytic::find_zeros(id, tmax, cfg);

  if (c.format == Format::json) {
    json j;
    j["lfunction"] = id.name();
    j["precision"] = table.precision;
    j["ordinates"] = table.ordinates;
    return dump(j);
  }
  if (c.format == Format::svg) {
    svg::Chart chart;
    chart.title = "Z(t) for " + id.name();
    chart.x_label = "t";
    chart.y_label = "Z(t)";
    svg::Series s{"Z(t)", {}, {}};
    const int n = 1200;
    for (int i = 1; i <= n; ++i) {
      const double t = tmax * i / n;
      s.xs.push_back(t);
      s.ys.push_back(analytic::critical_line_z(id, t));
    }
    chart.series.push_back(std::move(s));
    chart.markers_x = table.ordinates;
    return chart.render();
  }
  std::ostringstream os;
  analytic::write_zero_table(table, os);
  return os.str();
}

// ---- explicit --------------------------------------------------------------

std::string cmd_explicit(const ExplicitArgs& a, const Common& c) {
  wave::Target target;
  if (a.target == "pi-li") {
    target = wave::Target::pi_li;
  } else if (a.target == "mod4") {
    target = wave::Target::mod4;
  } else {
    throw DomainError("--target must be pi-li or mod4");
  }
  wave::Normalization norm;
  if (a.normalization == "sqrt-log") {
    norm = wave::Normalization::sqrt_over_log;
  } else if (a.normalization == "half-li") {
    norm = wave::Normalization::half_li_sqrt;
  } else {
    throw DomainError("--normalization must be sqrt-log or half-li");
  }
  const auto id = a.lfunction ? analytic::LFunctionId::parse(*a.lfunction)
                              : (target == wave::Target::mod4 ? analytic::LFunctionId::beta4()
                                                              : analytic::LFunctionId::zeta());
  const auto [lo, hi] = parse_range(a.range);
  const std::uint64_t points = parse_count(a.points);
  if (points < 2) throw DomainError("--points must be at least 2");
  std::vector<std::size_t> truncations;
  for (auto n : parse_count_list(a.truncations)) {
    if (n == 0) throw DomainError("truncations must be positive");
    truncations.push_back(static_cast<std::size_t>(n));
  }
  const std::size_t wanted = *std::max_element(truncations.begin(), truncations.end());
  sieve::SieveLimit(static_cast<std::uint64_t>(std::floor(hi)), policy(c));
  const auto grid = wave::log_grid(lo, hi, static_cast<std::size_t>(points));

  analytic::ZeroTable table;
  if (a.zeros) {
    table = analytic::parse_zero_table(fs::path(*a.zeros), id);
  } else if (a.tmax) {
    table = analytic::find_zeros(id, parse_real(*a.tmax));
  } else {
    // grow the search height until enough zeros are known
    for (double t = 50.0;; t = std::min(2 * t, analytic::kMaxZeroHeight)) {
      table = analytic::find_zeros(id, t);
      if (table.ordinates.size() >= wanted || t >= analytic::kMaxZeroHeight) break;
    }
  }
  if (table.ordinates.size() < wanted) {
    throw PreconditionError("only " + std::to_string(table.ordinates.size()) + " zeros available, " +
                            std::to_string(wanted) + " requested");
  }
  const auto truth = wave::truth_curve(target, grid, norm, {}, c.workers);
  const auto series = wave::wave_series(table, grid, truncations);

  std::vector<wave::SeriesComparison> stats;
  for (const auto& s : series) stats.push_back(wave::compare_series(truth, s));

  if (c.format == Format::json) {
    json j;
    j["target"] = a.target;
    j["normalization"] = a.normalization;
    j["lfunction"] = id.name();
    j["zeros_available"] = table.ordinates.size();
    json st = json::array();
    for (std::size_t i = 0; i < series.size(); ++i) {
      st.push_back({{"zeros", series[i].zeros_used},
                    {"rms", stats[i].rms},
                    {"correlation", stats[i].correlation},
                    {"sign_agreement", stats[i].sign_agreement}});
    }
    j["stats"] = st;
    j["x"] = truth.x_grid;
    j["truth"] = truth.values;
    json approx;
    for (const auto& s : series) approx[std::to_string(s.zeros_used)] = s.values;
    j["approx"] = approx;
    return dump(j);
  }
  if (c.format == Format::svg) {
    svg::Chart chart;
    chart.title = target == wave::Target::mod4 ? "Mod 4 race and its wave approximations"
                                               : "Li(x) - pi(x) and its wave approximations";
    chart.x_label = "x";
    chart.y_label = "normalized error";
    chart.log_x = true;
    chart.series.push_back({"sieve", truth.x_grid, truth.values});
    for (const auto& s : series) chart.series.push_back({std::to_string(s.zeros_used) + " zeros", s.x_grid, s.values});
    return chart.render();
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < series.size(); ++i) {
    os << "# approx_" << series[i].zeros_used << " rms=" << text::format_double(stats[i].rms)
       << " correlation=" << text::format_double(stats[i].correlation)
       << " sign_agreement=" << text::format_double(stats[i].sign_agreement) << '\n';
  }
  wave::write_series_csv(truth, series, os);
  return os.str();
}

// ---- twins -----------------------------------------------------------------

std::string cmd_twins(const TwinsArgs& a, const Common& c) {
  std::vector<pairs::GapSpec> gaps;
  for (auto g : parse_count_list(a.gaps)) gaps.push_back(pairs::GapSpec::of(g));
  auto [limit_value, xs] = resolve_checkpoints(a.limit, a.checkpoints, c, decades_from_1000);
  const sieve::SieveLimit limit(limit_value, policy(c));
  const auto constants = a.c2_limit ? pairs::compute_c2(parse_count(*a.c2_limit)) : pairs::twin_prime_constants();

  std::vector<pairs::PairCounts> counts;
  struct Row {
    std::uint64_t x;
    const char* place;
    std::string prev, next;
  };
  std::vector<Row> events;
  if (a.race) {
    auto pr = pairs::pair_race(gaps, limit, xs, {}, parse_count(a.events_from));
    counts = std::move(pr.counts);
    for (const auto& e : pr.first_place) events.push_back({e.x, "first", e.previous_leader, e.new_leader});
    for (const auto& e : pr.last_place) events.push_back({e.x, "last", e.previous_leader, e.new_leader});
    std::stable_sort(events.begin(), events.end(), [](const Row& l, const Row& r) { return l.x < r.x; });
  } else {
    counts = pairs::count_pairs(limit, gaps, xs);
  }
  const auto cells = pairs::hl_table(counts, constants);

  if (c.format == Format::json) {
    json j;
    j["c2"] = constants.c2;
    j["c2_error_bound"] = constants.c2_error_bound;
    json cj = json::array();
    for (const auto& cell : cells) {
      cj.push_back({{"x", cell.x},
                    {"gap", cell.gap.gap},
                    {"raw", cell.raw},
                    {"normalized", cell.normalized},
                    {"prediction", cell.prediction},
                    {"prediction_floor", cell.prediction_floor},
                    {"difference_floor", cell.difference_floor},
                    {"prediction_nearest", cell.prediction_nearest},
                    {"difference_nearest", cell.difference_nearest}});
    }
    j["cells"] = cj;
    if (a.race) {
      json ev = json::array();
      for (const auto& e : events) ev.push_back({{"x", e.x}, {"place", e.place}, {"prev", e.prev}, {"next", e.next}});
      j["events"] = ev;
    }
    return dump(j);
  }
  if (c.format == Format::svg) {
    svg::Chart chart;
    chart.title = "Normalized pair counts against the Hardy-Littlewood prediction";
    chart.x_label = "x";
    chart.y_label = "(normalized count - prediction) / sqrt x";
    chart.log_x = true;
    for (const auto& g : gaps) {
      svg::Series s{"gap " + std::to_string(g.gap), {}, {}};
      for (const auto& cell : cells) {
        if (cell.gap != g) continue;
        s.xs.push_back(static_cast<double>(cell.x));
        s.ys.push_back((cell.normalized - cell.prediction) / std::sqrt(static_cast<double>(cell.x)));
      }
      chart.series.push_back(std::move(s));
    }
    return chart.render();
  }
  std::ostringstream os;
  if (a.race) {
    os << "x,place,prev,next\n";
    for (const auto& e : events) os << e.x << ',' << e.place << ',' << e.prev << ',' << e.next << '\n';
  } else {
    pairs::write_twin_csv(cells, os);
  }
  return os.str();
}

// ---- histogram -------------------------------------------------------------

std::string cmd_histogram(const HistogramArgs& a, const Common& c) {
  const std::uint32_t q = parse_u32(a.modulus, "modulus");
  std::optional<std::uint32_t> residue;
  if (a.residue) residue = parse_u32(*a.residue, "residue");
  if (!residue && q != 4) throw DomainError("--residue is required unless --modulus is 4");
  if (residue && (*residue >= q || sieve::gcd(*residue, q) != 1)) {
    throw DomainError("--residue must be coprime to the modulus and below it");
  }
  const std::uint64_t bins = parse_count(a.bins);
  if (bins == 0 || bins > 100000) throw DomainError("--bins must be in 1..100000");
  const auto xs = parse_checkpoints(a.samples, std::nullopt);
  if (xs.front() < 3) throw DomainError("samples must be at least 3");
  const sieve::SieveLimit limit(xs.back(), policy(c));
  const auto counts = progression_counts(limit, q, xs, c);

  std::vector<double> values;
  for (const auto& rc : counts) {
    values.push_back(residue ? races::error_term(rc.x, q, *residue, sieve::prime_count(rc), rc.at(*residue)).value
                             : races::shanks_ratio(rc.x, rc.at(3), rc.at(1)));
  }
  double lo, hi;
  if (a.range) {
    std::tie(lo, hi) = parse_range(*a.range);
  } else {
    lo = *std::min_element(values.begin(), values.end());
    hi = *std::max_element(values.begin(), values.end());
    if (lo == hi) lo -= 0.5, hi += 0.5;
  }
  const auto h = races::build_histogram(values, static_cast<std::size_t>(bins), lo, hi);
  const std::string quantity = residue ? "error_term" : "shanks_ratio";

  if (c.format == Format::json) {
    json j;
    j["quantity"] = quantity;
    j["modulus"] = q;
    j["residue"] = residue ? json(*residue) : json(nullptr);
    j["samples"] = h.total;
    j["bin_edges"] = h.bin_edges;
    j["counts"] = h.counts;
    j["underflow"] = h.underflow;
    j["overflow"] = h.overflow;
    j["mode_bin"] = h.mode_bin();
    return dump(j);
  }
  if (c.format == Format::svg) {
    svg::Chart chart;
    chart.title = residue ? "Error(x; " + std::to_string(q) + ", " + std::to_string(*residue) + ")"
                          : "(pi(x;4,3) - pi(x;4,1)) ln x / sqrt x";
    chart.x_label = "value";
    chart.y_label = "samples";
    svg::Series s{"count", {}, {}};
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
      s.xs.push_back(h.bin_edges[i]);
      s.ys.push_back(static_cast<double>(h.counts[i]));
      s.xs.push_back(h.bin_edges[i + 1]);
      s.ys.push_back(static_cast<double>(h.counts[i]));
    }
    chart.series.push_back(std::move(s));
    return chart.render();
  }
  std::ostringstream os;
  os << "# quantity=" << quantity << " samples=" << h.total << " underflow=" << h.underflow
     << " overflow=" << h.overflow << '\n';
  os << "bin_lo,bin_hi,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    os << text::format_double(h.bin_edges[i]) << ',' << text::format_double(h.bin_edges[i + 1]) << ','
       << h.counts[i] << '\n';
  }
  return os.str();
}

// ---- walk ------------------------------------------------------------------

std::string cmd_walk(const WalkArgs& a, const Common& c) {
  if (c.format == Format::svg) throw UnsupportedError("walk has no SVG output");
  races::WalkConfig cfg;
  cfg.teams = parse_u32(a.teams, "teams");
  cfg.steps = parse_count(a.steps);
  cfg.trials = parse_count(a.trials);
  cfg.seed = parse_count(a.seed);
  const auto trials = races::simulate_tie_walk(cfg);
  std::uint64_t returns = 0;
  for (const auto& t : trials) returns += t.returned_to_origin;
  const double fraction = races::return_fraction(trials);

  if (c.format == Format::json) {
    json j;
    j["teams"] = cfg.teams;
    j["dimension"] = cfg.teams - 1;
    j["steps"] = cfg.steps;
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["returns"] = returns;
    j["fraction"] = fraction;
    json first = json::array();
    for (const auto& t : trials) first.push_back(t.first_return_step ? json(*t.first_return_step) : json(nullptr));
    j["first_returns"] = first;
    return dump(j);
  }
  std::ostringstream os;
  if (a.per_trial) {
    os << "trial,returned,first_return_step\n";
    for (std::size_t i = 0; i < trials.size(); ++i) {
      os << i << ',' << (trials[i].returned_to_origin ? 1 : 0) << ',';
      if (trials[i].first_return_step) os << *trials[i].first_return_step;
      os << '\n';
    }
    return os.str();
  }
  os << "teams,dimension,steps,trials,seed,returns,fraction\n"
     << cfg.teams << ',' << cfg.teams - 1 << ',' << cfg.steps << ',' << cfg.trials << ',' << cfg.seed << ','
     << returns << ',' << text::format_double(fraction) << '\n';
  return os.str();
}

// ---- psi -------------------------------------------------------------------

std::string cmd_psi(const PsiArgs& a, const Common& c) {
  auto [limit_value, xs] = resolve_checkpoints(a.limit, a.checkpoints, c, only_limit);
  const sieve::SieveLimit limit(limit_value, policy(c));
  const auto psi = analytic::chebyshev_psi_at(xs);

  if (c.format == Format::json) {
    json rows = json::array();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto nearest = analytic::apply_rounding(psi[i], analytic::Rounding::nearest);
      const double x = static_cast<double>(xs[i]);
      rows.push_back({{"x", xs[i]},
                      {"psi", psi[i]},
                      {"nearest", nearest},
                      {"difference", nearest - static_cast<std::int64_t>(xs[i])},
                      {"rh_check", xs[i] >= 100 ? json(analytic::psi_rh_inequality_check(x, psi[i])) : json(nullptr)}});
    }
    return dump(json{{"rows", rows}});
  }
  if (c.format == Format::svg) {
    svg::Chart chart;
    chart.title = "(psi(x) - x) / sqrt x";
    chart.x_label = "x";
    chart.y_label = "(psi(x) - x) / sqrt x";
    chart.log_x = true;
    svg::Series s{"psi", {}, {}};
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double x = static_cast<double>(xs[i]);
      s.xs.push_back(x);
      s.ys.push_back((psi[i] - x) / std::sqrt(x));
    }
    chart.series.push_back(std::move(s));
    return chart.render();
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto nearest = analytic::apply_rounding(psi[i], analytic::Rounding::nearest);
    os << xs[i] << ',' << nearest << ',' << nearest - static_cast<std::int64_t>(xs[i]) << '\n';
  }
  return os.str();
}

// ---- sawtooth --------------------------------------------------------------

std::string cmd_sawtooth(const SawtoothArgs& a, const Common& c) {
  const auto waves = parse_count_list(a.waves);
  for (auto n : waves) {
    if (n == 0 || n > 1000000) throw DomainError("wave counts must be in 1..1000000");
  }
  const std::uint64_t points = parse_count(a.points);
  if (points == 0 || points > 1000000) throw DomainError("--points must be in 1..1000000");
  std::vector<double> grid;
  for (std::uint64_t i = 0; i < points; ++i) grid.push_back((static_cast<double>(i) + 0.5) / static_cast<double>(points));
  std::vector<std::vector<double>> cols;
  for (auto n : waves) {
    std::vector<double> col;
    for (double x : grid) col.push_back(wave::sawtooth_partial_sum(x, static_cast<std::int64_t>(n)));
    cols.push_back(std::move(col));
  }

  if (c.format == Format::json) {
    json j;
    j["x"] = grid;
    std::vector<double> target;
    for (double x : grid) target.push_back(x - 0.5);
    j["target"] = target;
    json approx;
    for (std::size_t k = 0; k < waves.size(); ++k) approx[std::to_string(waves[k])] = cols[k];
    j["approx"] = approx;
    return dump(j);
  }
  if (c.format == Format::svg) {
    svg::Chart chart;
    chart.title = "Sawtooth and its Fourier partial sums";
    chart.x_label = "x";
    chart.y_label = "value";
    svg::Series target{"x - 1/2", grid, {}};
    for (double x : grid) target.ys.push_back(x - 0.5);
    chart.series.push_back(std::move(target));
    for (std::size_t k = 0; k < waves.size(); ++k) {
      chart.series.push_back({std::to_string(waves[k]) + " waves", grid, cols[k]});
    }
    return chart.render();
  }
  std::ostringstream os;
  os << "x,target";
  for (auto n : waves) os << ",n_" << n;
  os << '\n';
  for (std::size_t i = 0; i < grid.size(); ++i) {
    os << text::format_double(grid[i]) << ',' << text::format_double(grid[i] - 0.5);
    for (const auto& col : cols) os << ',' << text::format_double(col[i]);
    os << '\n';
  }
  return os.str();
}

}  // namespace prime_race::cli
