// svg.hpp
// Self-contained SVG line charts on a fixed 800x400 viewBox.

#pragma once

#include <string>
#include <vector>

namespace prime_race::svg {

struct Series {
  std::string name;
  std::vector<double> xs;
  std::vector<double> ys;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  std::vector<Series> series;
  std::vector<double> markers_x;  // vertical guide lines

  // Non-finite points are skipped. DomainError on mismatched lengths or, with
  // log_x, nonpositive x.
  std::string render() const;
};

// Every k-th point so at most max_points remain (first and last kept).
Series thin(const Series& s, std::size_t max_points);

std::string escape(const std::string& text);

}  // namespace prime_race::svg
