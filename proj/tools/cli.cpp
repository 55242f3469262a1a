#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "commands.hpp"
#include "prime_race/errors.hpp"

namespace prime_race::cli {

namespace {

namespace fs = std::filesystem;

void write_artifact(const std::string& body, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << body;
    out.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << body;
  if (!f.flush()) throw IoError("write failed for " + path);
}

void check_output_path(const std::string& path) {
  if (path.empty() || path == "-") return;
  const fs::path p(path);
  const fs::path dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("output directory " + dir.string() + " does not exist");
  if (fs::is_directory(p, ec)) throw IoError(path + " is a directory");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prime number races: progression counts, lead changes, L-function zeros, explicit formulas "
               "and prime pairs",
               "prime_races"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  common.workers = std::max(1u, std::thread::hardware_concurrency());
  common.log = &err;
  std::string format = "csv", out_path;
  app.add_option("--format", format, "csv, json or svg")->check(CLI::IsMember({"csv", "json", "svg"}));
  app.add_option("-o,--out", out_path, "write the artifact here instead of stdout");
  app.add_option("--workers", common.workers, "sieve threads (default: available parallelism)")
      ->check(CLI::Range(1u, 1024u));
  app.add_flag("--long-run", common.long_run, "allow sieving beyond 1e9 (up to 1e10)");
  app.add_flag("-v,--verbose", common.verbose, "report timings on stderr");

  std::function<std::string()> action;

  PiArgs pi;
  auto* sc = app.add_subcommand("pi", "prime counts, optionally split by residue class");
  sc->add_option("--limit", pi.limit, "sieve bound");
  sc->add_option("--modulus", pi.modulus, "split counts by residue mod q");
  sc->add_option("--checkpoints", pi.checkpoints, "x values: list, geom:lo:hi:n, linear:lo:hi:step, decades, paper:tableN");
  sc->callback([&] { action = [&] { return cmd_pi(pi, common); }; });

  RaceArgs race;
  sc = app.add_subcommand("race", "race between teams of residue classes");
  sc->add_option("--modulus", race.modulus)->required();
  sc->add_option("--teams", race.teams, "e.g. 3:1, 1,9:3,7 or squares:nonsquares")->required();
  sc->add_option("--limit", race.limit);
  sc->add_option("--checkpoints", race.checkpoints);
  sc->add_flag("--dense", race.dense, "track the race at every prime");
  sc->add_flag("--events", race.events, "list takeovers of the lead");
  sc->add_flag("--all-events", race.all_events, "list every change of the leader-or-tie state");
  sc->add_option("--place", race.place, "first or last");
  sc->add_option("--density", race.density, "log or natural share of x with --ahead strictly leading");
  sc->add_option("--ahead", race.ahead, "team label for --density (default: first team)");
  sc->add_option("--density-x", race.density_x, "density bound X (default: --limit)");
  sc->callback([&] { action = [&] { return cmd_race(race, common); }; });

  ZerosArgs zeros;
  sc = app.add_subcommand("zeros", "zero ordinates of zeta or beta4 on the critical line");
  sc->add_option("--lfunction", zeros.lfunction, "zeta or beta4");
  sc->add_option("--tmax", zeros.tmax)->required();
  sc->add_option("--scan-step", zeros.scan_step);
  sc->add_option("--precision", zeros.precision);
  sc->callback([&] { action = [&] { return cmd_zeros(zeros, common); }; });

  ExplicitArgs expl;
  sc = app.add_subcommand("explicit", "truncated explicit-formula wave sums against the sieve");
  sc->add_option("--zeros", expl.zeros, "zero-table file");
  sc->add_option("--tmax", expl.tmax, "compute zeros up to this height instead");
  sc->add_option("--lfunction", expl.lfunction, "zeta or beta4 (default follows --target)");
  sc->add_option("--target", expl.target, "pi-li or mod4");
  sc->add_option("--range", expl.range, "lo:hi");
  sc->add_option("--points", expl.points);
  sc->add_option("--truncations", expl.truncations, "zero counts, comma separated");
  sc->add_option("--normalization", expl.normalization, "sqrt-log or half-li");
  sc->callback([&] { action = [&] { return cmd_explicit(expl, common); }; });

  TwinsArgs twins;
  sc = app.add_subcommand("twins", "prime pairs with fixed gaps against Hardy-Littlewood");
  sc->add_option("--limit", twins.limit)->required();
  sc->add_option("--gaps", twins.gaps);
  sc->add_option("--checkpoints", twins.checkpoints);
  sc->add_option("--c2-limit", twins.c2_limit, "prime bound for the twin-prime constant product");
  sc->add_flag("--race", twins.race, "race the normalized counts and list lead changes");
  sc->add_option("--events-from", twins.events_from);
  sc->callback([&] { action = [&] { return cmd_twins(twins, common); }; });

  HistogramArgs hist;
  sc = app.add_subcommand("histogram", "distribution of the normalized race error");
  sc->add_option("--modulus", hist.modulus);
  sc->add_option("--residue", hist.residue, "histogram Error(x;q,a) for this residue");
  sc->add_option("--samples", hist.samples, "checkpoint spec of sample points")->required();
  sc->add_option("--bins", hist.bins);
  sc->add_option("--range", hist.range, "lo:hi");
  sc->callback([&] { action = [&] { return cmd_histogram(hist, common); }; });

  WalkArgs walk;
  sc = app.add_subcommand("walk", "random-walk model of an n-team race");
  sc->add_option("--teams", walk.teams);
  sc->add_option("--steps", walk.steps);
  sc->add_option("--trials", walk.trials);
  sc->add_option("--seed", walk.seed);
  sc->add_flag("--per-trial", walk.per_trial, "one CSV row per trial");
  sc->callback([&] { action = [&] { return cmd_walk(walk, common); }; });

  PsiArgs psi;
  sc = app.add_subcommand("psi", "Chebyshev psi rounded to the nearest integer");
  sc->add_option("--limit", psi.limit);
  sc->add_option("--checkpoints", psi.checkpoints);
  sc->callback([&] { action = [&] { return cmd_psi(psi, common); }; });

  SawtoothArgs saw;
  sc = app.add_subcommand("sawtooth", "Fourier partial sums of the sawtooth");
  sc->add_option("--waves", saw.waves);
  sc->add_option("--points", saw.points);
  sc->callback([&] { action = [&] { return cmd_sawtooth(saw, common); }; });

  std::vector<const char*> argv;
  argv.push_back(args.empty() ? "prime_races" : args[0].c_str());
  for (std::size_t i = 1; i < args.size(); ++i) argv.push_back(args[i].c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    common.format = format == "json" ? Format::json : format == "svg" ? Format::svg : Format::csv;
    check_output_path(out_path);
    const auto start = std::chrono::steady_clock::now();
    const std::string body = action();
    write_artifact(body, out_path, out);
    if (common.verbose > 0) {
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
      err << "elapsed " << dt.count() << " s\n";
    }
    return 0;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return 4;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 4;
  } catch (const NonConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return 5;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace prime_race::cli
