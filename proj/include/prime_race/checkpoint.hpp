// checkpoint.hpp
// Text persistence for ResidueCounts series.
//
//   # modulus=4
//   100,1:11,3:13
//   200,1:21,3:24
//
// Residues ascending within a row, x strictly ascending across rows.
// Any other line starting with '#' is a comment; blank lines are skipped.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "prime_race/sieve.hpp"

namespace prime_race::sieve {

// Throws DomainError if the series mixes moduli or x is not strictly
// ascending. An empty series writes nothing.
void checkpoint_save(std::span<const ResidueCounts> counts, std::ostream& out);
void checkpoint_save(std::span<const ResidueCounts> counts, const std::filesystem::path& path);

// Throws ParseError (with 1-based line) on malformed content, IoError if
// the file cannot be opened.
std::vector<ResidueCounts> checkpoint_load(std::istream& in);
std::vector<ResidueCounts> checkpoint_load(const std::filesystem::path& path);

}  // namespace prime_race::sieve
