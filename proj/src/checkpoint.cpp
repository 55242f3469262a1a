#include "prime_race/checkpoint.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "prime_race/text.hpp"

namespace prime_race::sieve {

namespace {

std::uint64_t parse_u64(std::string_view field, std::size_t line, const char* what) {
  field = text::trim(field);
  std::uint64_t value = 0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc{} || ptr != end) {
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

void checkpoint_save(std::span<const ResidueCounts> counts, std::ostream& out) {
  if (counts.empty()) return;
  const std::uint32_t q = counts.front().modulus;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i].modulus != q) throw DomainError("checkpoint series mixes moduli");
    if (i > 0 && counts[i].x <= counts[i - 1].x) {
      throw DomainError("checkpoint x values must be strictly ascending");
    }
  }
  out << "# modulus=" << q << '\n';
  for (const auto& rc : counts) {
    out << rc.x;
    for (const auto& [r, c] : rc.counts) out << ',' << r << ':' << c;
    out << '\n';
  }
  if (!out) throw IoError("failed writing checkpoint data");
}

void checkpoint_save(std::span<const ResidueCounts> counts, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  checkpoint_save(counts, out);
}

std::vector<ResidueCounts> checkpoint_load(std::istream& in) {
  std::vector<ResidueCounts> out;
  std::optional<std::uint32_t> modulus;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view s = text::trim(raw);
    if (s.empty()) continue;
    if (s.front() == '#') {
      const std::string_view body = text::trim(s.substr(1));
      if (body.starts_with("modulus=")) {
        const std::uint64_t q = parse_u64(body.substr(8), line, "modulus");
        if (q < 1 || q > 0xFFFFFFFFULL) throw ParseError(line, "modulus out of range");
        if (modulus && *modulus != q) throw ParseError(line, "conflicting modulus header");
        modulus = static_cast<std::uint32_t>(q);
      }
      continue;
    }
    if (!modulus) throw ParseError(line, "data row before '# modulus=' header");

    const auto fields = text::split(s, ',');
    ResidueCounts rc;
    rc.modulus = *modulus;
    rc.x = parse_u64(fields[0], line, "x");
    std::int64_t prev_residue = -1;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const std::string_view f = fields[i];
      const auto colon = f.find(':');
      if (colon == std::string_view::npos) {
        throw ParseError(line, "expected '<residue>:<count>', got '" + std::string(f) + "'");
      }
      const std::uint64_t r = parse_u64(f.substr(0, colon), line, "residue");
      const std::uint64_t c = parse_u64(f.substr(colon + 1), line, "count");
      if (r >= *modulus) throw ParseError(line, "residue " + std::to_string(r) + " not below modulus");
      if (static_cast<std::int64_t>(r) <= prev_residue) {
        throw ParseError(line, "residues must be strictly ascending");
      }
      prev_residue = static_cast<std::int64_t>(r);
      rc.counts.emplace(static_cast<std::uint32_t>(r), c);
    }
    if (!out.empty()) {
      const ResidueCounts& prev = out.back();
      if (rc.x <= prev.x) throw ParseError(line, "x values must be strictly ascending");
      if (rc.counts.size() != prev.counts.size()) {
        throw ParseError(line, "residue set differs from previous row");
      }
      for (const auto& [r, c] : rc.counts) {
        auto it = prev.counts.find(r);
        if (it == prev.counts.end()) throw ParseError(line, "residue set differs from previous row");
        if (c < it->second) throw ParseError(line, "count decreases for residue " + std::to_string(r));
      }
    }
    out.push_back(std::move(rc));
  }
  if (in.bad()) throw IoError("failed reading checkpoint data");
  return out;
}

std::vector<ResidueCounts> checkpoint_load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return checkpoint_load(in);
}

}  // namespace prime_race::sieve
