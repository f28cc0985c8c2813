#pragma once

#include <string>
#include <vector>

namespace legcs {

// Minimal deterministic SVG line plot: inline styles, no timestamps, fixed
// number formatting, so equal input gives byte-identical output.
struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct SvgPlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<SvgSeries> series;
  bool log_y = false;
  int width = 640;
  int height = 420;
};

std::string render_svg(const SvgPlot& plot);
void write_svg(const SvgPlot& plot, const std::string& path);

}  // namespace legcs
