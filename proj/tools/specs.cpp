#include <algorithm>
#include <charconv>
#include <cmath>

#include "cli.hpp"
#include "prime_race/errors.hpp"
#include "prime_race/text.hpp"

namespace prime_race::cli {

namespace {

std::vector<std::uint64_t> steps(std::uint64_t lo, std::uint64_t hi, std::uint64_t step) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = lo; x <= hi; x += step) out.push_back(x);
  return out;
}

void append(std::vector<std::uint64_t>& to, const std::vector<std::uint64_t>& more) {
  to.insert(to.end(), more.begin(), more.end());
}

std::vector<std::uint64_t> decades(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = lo; x <= hi; x *= 10) {
    out.push_back(x);
    if (x > UINT64_MAX / 10) break;
  }
  return out;
}

}  // namespace

std::uint64_t parse_count(const std::string& raw) {
  const std::string_view text = text::trim(raw);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec == std::errc() && ptr == text.data() + text.size() && !text.empty()) return v;
  double d = 0;
  auto [p2, e2] = std::from_chars(text.data(), text.data() + text.size(), d);
  if (e2 != std::errc() || p2 != text.data() + text.size() || text.empty() || !(d >= 0) || d > 9.007199254740992e15 ||
      d != std::floor(d)) {
    throw DomainError("expected a nonnegative integer, got '" + raw + "'");
  }
  return static_cast<std::uint64_t>(d);
}

double parse_real(const std::string& raw) {
  const std::string_view text = text::trim(raw);
  double d = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() || !std::isfinite(d)) {
    throw DomainError("expected a number, got '" + raw + "'");
  }
  return d;
}

std::vector<std::uint64_t> parse_count_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (auto part : text::split(text, ',')) out.push_back(parse_count(std::string(part)));
  return out;
}

std::vector<std::uint64_t> preset(const std::string& name) {
  std::vector<std::uint64_t> xs;
  if (name == "table1") {
    append(xs, steps(100, 1000, 100));
    append(xs, steps(2000, 10000, 1000));
    append(xs, {20000, 50000, 100000});
  } else if (name == "table2") {
    append(xs, steps(100, 900, 100));
    append(xs, steps(1000, 9000, 1000));
    append(xs, steps(10000, 90000, 10000));
    append(xs, steps(100000, 1000000, 100000));
    append(xs, {2000000, 5000000, 10000000});
  } else if (name == "table3") {
    xs = {100, 200};
  } else if (name == "table4") {
    xs = {100, 200, 500, 1000, 2000, 5000, 10000, 20000, 50000, 100000, 200000, 500000, 1000000};
  } else if (name == "table5" || name == "table6") {
    xs = decades(100000000, 10000000000ULL);
  } else if (name == "table7") {
    xs = {1000, 2000, 5000, 10000, 20000, 50000, 100000, 200000, 500000, 1000000};
  } else if (name == "table8") {
    xs = {100, 200, 500, 1000, 2000, 5000, 10000, 20000, 50000, 100000, 200000, 500000, 1000000};
  } else if (name == "table9" || name == "table10") {
    xs = decades(1000, 1000000000000ULL);
  } else {
    throw DomainError("unknown preset 'paper:" + name + "'");
  }
  return xs;
}

std::vector<std::uint64_t> parse_checkpoints(const std::string& spec, std::optional<std::uint64_t> limit) {
  std::vector<std::uint64_t> xs;
  bool clip = false;
  const auto parts = text::split(spec, ':');
  const std::string head(parts[0]);
  auto arg = [&](std::size_t i) { return std::string(parts.at(i)); };
  if (head == "paper" && parts.size() == 2) {
    xs = preset(arg(1));
    clip = true;
  } else if (head == "geom" && parts.size() == 4) {
    const double lo = static_cast<double>(parse_count(arg(1)));
    const double hi = static_cast<double>(parse_count(arg(2)));
    const std::uint64_t n = parse_count(arg(3));
    if (!(lo >= 1) || !(hi > lo) || n < 2) throw DomainError("geom needs 1 <= lo < hi and n >= 2");
    for (std::uint64_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(n - 1);
      xs.push_back(static_cast<std::uint64_t>(std::llround(std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))))));
    }
  } else if (head == "linear" && parts.size() == 4) {
    const std::uint64_t lo = parse_count(arg(1)), hi = parse_count(arg(2)), step = parse_count(arg(3));
    if (step == 0 || hi < lo) throw DomainError("linear needs lo <= hi and step >= 1");
    if ((hi - lo) / step > 50000000) throw DomainError("linear spec has too many points");
    xs = steps(lo, hi, step);
  } else if (head == "decades" && parts.size() <= 2) {
    const std::uint64_t lo = parts.size() == 2 ? parse_count(arg(1)) : 10;
    if (lo == 0) throw DomainError("decades needs lo >= 1");
    if (!limit) throw DomainError("decades needs --limit");
    xs = decades(lo, *limit);
    clip = true;
  } else if (parts.size() == 1) {
    xs = parse_count_list(spec);
  } else {
    throw DomainError("unrecognised checkpoint spec '" + spec + "'");
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (limit) {
    if (clip) {
      xs.erase(std::upper_bound(xs.begin(), xs.end(), *limit), xs.end());
    } else if (!xs.empty() && xs.back() > *limit) {
      throw DomainError("checkpoint " + std::to_string(xs.back()) + " exceeds --limit");
    }
  }
  if (xs.empty()) throw DomainError("checkpoint spec '" + spec + "' selects no x values");
  return xs;
}

std::vector<races::TeamSpec> parse_teams(const std::string& spec, std::uint32_t q) {
  std::vector<races::TeamSpec> teams;
  if (spec == "squares:nonsquares" || spec == "S:N") {
    const auto classes = races::squares_mod(q);
    teams = {{"S", classes.squares}, {"N", classes.nonsquares}};
  } else {
    for (auto group : text::split(spec, ':')) {
      races::TeamSpec team;
      for (auto r : text::split(group, ',')) {
        const std::uint64_t v = parse_count(std::string(r));
        if (v >= q) throw DomainError("residue " + std::to_string(v) + " is not below the modulus");
        team.residues.push_back(static_cast<std::uint32_t>(v));
        team.label += (team.label.empty() ? "" : "+") + std::to_string(v);
      }
      teams.push_back(std::move(team));
    }
  }
  races::validate_teams(q, teams);
  return teams;
}

}  // namespace prime_race::cli
