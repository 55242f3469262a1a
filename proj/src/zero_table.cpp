#include "prime_race/zero_table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "prime_race/text.hpp"

namespace prime_race::analytic {

namespace {

double parse_decimal(std::string_view field, std::size_t line) {
  double value = 0.0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value, std::chars_format::general);
  if (field.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ParseError(line, "not a decimal number: '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

ZeroTable parse_zero_table(std::istream& in, const LFunctionId& id) {
  ZeroTable table;
  table.id = id;
  table.precision = kDefaultTablePrecision;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view s = text::trim(raw);
    if (s.empty()) continue;
    if (s.front() == '#') {
      const std::string_view body = text::trim(s.substr(1));
      if (body.starts_with("lfunction=")) {
        const std::string name(text::trim(body.substr(10)));
        LFunctionId declared = LFunctionId::zeta();
        try {
          declared = LFunctionId::parse(name);
        } catch (const DomainError& e) {
          throw ParseError(line, e.what());
        }
        if (!(declared == id)) {
          throw ParseError(line, "table is for " + declared.name() + ", expected " + id.name());
        }
      } else if (body.starts_with("precision=")) {
        const double p = parse_decimal(text::trim(body.substr(10)), line);
        if (!(p > 0.0)) throw ParseError(line, "precision must be positive");
        table.precision = p;
      }
      continue;
    }
    const double g = parse_decimal(s, line);
    if (!(g > 0.0)) throw ParseError(line, "ordinate must be positive");
    if (!table.ordinates.empty() && !(g > table.ordinates.back())) {
      throw ParseError(line, "ordinates must be strictly ascending");
    }
    table.ordinates.push_back(g);
  }
  if (in.bad()) throw IoError("failed reading zero table");
  return table;
}

ZeroTable parse_zero_table(const std::filesystem::path& path, const LFunctionId& id) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open zero table '" + path.string() + "'");
  return parse_zero_table(in, id);
}

void write_zero_table(const ZeroTable& table, std::ostream& out) {
  table.validate();
  out << "# lfunction=" << table.id.name() << '\n';
  out << "# precision=" << text::format_double(std::max(table.precision, kDefaultTablePrecision)) << '\n';
  for (double g : table.ordinates) out << text::format_fixed(g, 9) << '\n';
  if (!out) throw IoError("failed writing zero table");
}

void write_zero_table(const ZeroTable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_zero_table(table, out);
}

}  // namespace prime_race::analytic
