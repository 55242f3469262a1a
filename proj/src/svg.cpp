#include "prime_race/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "prime_race/errors.hpp"
#include "prime_race/text.hpp"

namespace prime_race::svg {

namespace {

constexpr double kWidth = 800, kHeight = 400;
constexpr double kLeft = 70, kRight = 150, kTop = 30, kBottom = 50;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) { return text::format_fixed(v, 2); }

std::string tick_label(double v) {
  if (v != 0 && (std::fabs(v) >= 1e5 || std::fabs(v) < 1e-3)) {
    std::ostringstream os;
    os.precision(2);
    os << v;
    return os.str();
  }
  std::string s = text::format_fixed(v, 3);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return s == "-0" ? "0" : s;
}

}  // namespace

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

Series thin(const Series& s, std::size_t max_points) {
  if (s.xs.size() != s.ys.size()) throw DomainError("series lengths differ");
  if (max_points < 2 || s.xs.size() <= max_points) return s;
  const std::size_t step = (s.xs.size() + max_points - 2) / (max_points - 1);
  Series out{s.name, {}, {}};
  for (std::size_t i = 0; i < s.xs.size(); i += step) {
    out.xs.push_back(s.xs[i]);
    out.ys.push_back(s.ys[i]);
  }
  if (out.xs.back() != s.xs.back()) {
    out.xs.push_back(s.xs.back());
    out.ys.push_back(s.ys.back());
  }
  return out;
}

std::string Chart::render() const {
  double x_lo = INFINITY, x_hi = -INFINITY, y_lo = INFINITY, y_hi = -INFINITY;
  auto fx = [&](double x) { return log_x ? std::log10(x) : x; };
  for (const auto& s : series) {
    if (s.xs.size() != s.ys.size()) throw DomainError("series '" + s.name + "' lengths differ");
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i])) continue;
      if (log_x && !(s.xs[i] > 0)) throw DomainError("log axis needs positive x");
      x_lo = std::min(x_lo, fx(s.xs[i]));
      x_hi = std::max(x_hi, fx(s.xs[i]));
      y_lo = std::min(y_lo, s.ys[i]);
      y_hi = std::max(y_hi, s.ys[i]);
    }
  }
  if (!(x_lo <= x_hi)) x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
  if (x_hi == x_lo) x_lo -= 0.5, x_hi += 0.5;
  if (y_hi == y_lo) y_lo -= 0.5, y_hi += 0.5;
  const double pad = 0.05 * (y_hi - y_lo);
  y_lo -= pad;
  y_hi += pad;

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (fx(x) - x_lo) / (x_hi - x_lo) * pw; };
  auto py = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 400\" width=\"800\" height=\"400\" "
        "font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"400\" fill=\"white\"/>\n";
  os << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">"
     << escape(title) << "</text>\n";
  os << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw) << "\" height=\""
     << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 4; ++i) {
    const double yv = y_lo + (y_hi - y_lo) * i / 4;
    const double xv = x_lo + (x_hi - x_lo) * i / 4;
    const double xpix = kLeft + pw * i / 4;
    os << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(py(yv) + 4) << "\" text-anchor=\"end\">"
       << tick_label(yv) << "</text>\n";
    os << "<text x=\"" << num(xpix) << "\" y=\"" << num(kTop + ph + 16) << "\" text-anchor=\"middle\">"
       << tick_label(log_x ? std::pow(10.0, xv) : xv) << "</text>\n";
  }
  if (y_lo < 0 && y_hi > 0) {
    os << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(py(0)) << "\" x2=\"" << num(kLeft + pw) << "\" y2=\""
       << num(py(0)) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  }
  for (double m : markers_x) {
    if (!std::isfinite(m) || (log_x && m <= 0)) continue;
    const double mx = fx(m);
    if (mx < x_lo || mx > x_hi) continue;
    os << "<line x1=\"" << num(px(m)) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(px(m)) << "\" y2=\""
       << num(kTop + ph) << "\" stroke=\"#bbb\"/>\n";
  }
  os << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 12) << "\" text-anchor=\"middle\">"
     << escape(x_label) << (log_x ? " (log scale)" : "") << "</text>\n";
  os << "<text x=\"16\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << num(kTop + ph / 2) << ")\">" << escape(y_label) << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* colour = kPalette[k % std::size(kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.2\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i])) continue;
      if (!first) os << ' ';
      os << num(px(s.xs[i])) << ',' << num(py(s.ys[i]));
      first = false;
    }
    os << "\"/>\n";
    const double ly = kTop + 12 + 16 * static_cast<double>(k);
    os << "<line x1=\"" << num(kLeft + pw + 10) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(kLeft + pw + 30)
       << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << num(kLeft + pw + 34) << "\" y=\"" << num(ly) << "\">" << escape(s.name) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace prime_race::svg
