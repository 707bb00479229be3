#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gripkit::report {

// %.6g
std::string fmt(double v);
std::string csv_row(std::initializer_list<double> values);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Bare line chart with axis ticks; enough to eyeball a sweep.
std::string svg_plot(std::string_view title, std::string_view x_label, std::string_view y_label,
                     std::span<const Series> series);

// Writes text to path, or to stdout for "-". Throws kMalformedInput on failure.
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace gripkit::report
