// commands.hpp
// Subcommand implementations. Flags arrive as raw strings and are parsed
// here so every malformed value surfaces as DomainError (exit 2).

#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace prime_race::cli {

enum class Format { csv, json, svg };

struct Common {
  Format format = Format::csv;
  unsigned workers = 1;
  bool long_run = false;
  int verbose = 0;
  std::ostream* log = nullptr;  // diagnostics (cache warnings, timings)
};

struct PiArgs {
  std::optional<std::string> limit, modulus, checkpoints;
};

struct RaceArgs {
  std::string modulus, teams;
  std::optional<std::string> limit, checkpoints, density, ahead, density_x;
  std::string place = "first";
  bool dense = false, events = false, all_events = false;
};

struct ZerosArgs {
  std::string lfunction = "zeta";
  std::string tmax;
  std::optional<std::string> scan_step, precision;
};

struct ExplicitArgs {
  std::optional<std::string> zeros, tmax, lfunction;
  std::string target = "pi-li";
  std::string range = "1e4:1e6";
  std::string points = "500";
  std::string truncations = "10,100";
  std::string normalization = "sqrt-log";
};

struct TwinsArgs {
  std::string limit;
  std::string gaps = "2,4,6,8,10";
  std::optional<std::string> checkpoints, c2_limit;
  std::string events_from = "0";
  bool race = false;
};

struct HistogramArgs {
  std::string modulus = "4";
  std::optional<std::string> residue, range;
  std::string samples;
  std::string bins = "40";
};

struct WalkArgs {
  std::string teams = "3", steps = "100000", trials = "200", seed = "0";
  bool per_trial = false;
};

struct PsiArgs {
  std::optional<std::string> limit, checkpoints;
};

struct SawtoothArgs {
  std::string waves = "1,10,100";
  std::string points = "200";
};

std::string cmd_pi(const PiArgs& a, const Common& c);
std::string cmd_race(const RaceArgs& a, const Common& c);
std::string cmd_zeros(const ZerosArgs& a, const Common& c);
std::string cmd_explicit(const ExplicitArgs& a, const Common& c);
std::string cmd_twins(const TwinsArgs& a, const Common& c);
std::string cmd_histogram(const HistogramArgs& a, const Common& c);
std::string cmd_walk(const WalkArgs& a, const Common& c);
std::string cmd_psi(const PsiArgs& a, const Common& c);
std::string cmd_sawtooth(const SawtoothArgs& a, const Common& c);

}  // namespace prime_race::cli
