// cli.hpp
// Command-line front end. run() takes the full argument list (program name
// first) and returns the process exit code:
//   0 ok, 2 usage or invalid input, 3 capacity, 4 I/O or file format,
//   5 numeric non-convergence.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "prime_race/races.hpp"

namespace prime_race::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Nonnegative integer written as digits or exact scientific notation ("1e7",
// "1.3e7"). DomainError otherwise.
std::uint64_t parse_count(const std::string& text);
double parse_real(const std::string& text);
std::vector<std::uint64_t> parse_count_list(const std::string& text);

// Checkpoint specs:
//   paper:table1 .. paper:table10   x-columns of the printed tables
//   geom:<lo>:<hi>:<n>              n log-spaced integers, duplicates dropped
//   linear:<lo>:<hi>:<step>
//   decades[:<lo>]                  powers of ten from lo (default 10)
//   <x>,<x>,...
// Values above `limit` are dropped from presets and decades; elsewhere they
// are an error. The result is strictly ascending.
std::vector<std::uint64_t> parse_checkpoints(const std::string& spec,
                                             std::optional<std::uint64_t> limit);

std::vector<std::uint64_t> preset(const std::string& name);

// "3:1" -> teams {3} and {1}; "1,9:3,7" -> {1,9} and {3,7}; labels join
// residues with '+'. "squares:nonsquares" -> teams S and N (odd prime q).
std::vector<races::TeamSpec> parse_teams(const std::string& spec, std::uint32_t q);

}  // namespace prime_race::cli
