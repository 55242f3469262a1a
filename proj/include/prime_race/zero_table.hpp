// zero_table.hpp
// Zero-table files:
//
//   # lfunction=zeta
//   # precision=1e-09
//   14.134725142
//   21.022039639
//
// One ordinate per line in plain decimal notation, strictly ascending and
// positive. '#' lines are comments; the lfunction and precision headers are
// optional when reading (the caller's id and 5e-10 apply when absent).

#pragma once

#include <filesystem>
#include <iosfwd>

#include "prime_race/special_functions.hpp"

namespace prime_race::analytic {

inline constexpr double kDefaultTablePrecision = 5e-10;

// ParseError (1-based line) for malformed, nonpositive or non-ascending
// entries, or a header naming a different L-function than `id`.
ZeroTable parse_zero_table(std::istream& in, const LFunctionId& id);
ZeroTable parse_zero_table(const std::filesystem::path& path, const LFunctionId& id);

// Writes the header and each ordinate with 9 decimals. The precision header
// is at least 5e-10, the rounding error of the 9-decimal form.
void write_zero_table(const ZeroTable& table, std::ostream& out);
void write_zero_table(const ZeroTable& table, const std::filesystem::path& path);

}  // namespace prime_race::analytic
