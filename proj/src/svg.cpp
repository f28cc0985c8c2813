#include "legcs/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace legcs {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string render_svg(const SvgPlot& plot) {
  const double ml = 62, mr = 16, mt = 30, mb = 46;
  const double pw = plot.width - ml - mr;
  const double ph = plot.height - mt - mb;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : plot.series) {
    for (double v : s.x) {
      xmin = std::min(xmin, v);
      xmax = std::max(xmax, v);
    }
    for (double v : s.y) {
      const double t = plot.log_y ? std::log10(std::max(v, 1e-16)) : v;
      ymin = std::min(ymin, t);
      ymax = std::max(ymax, t);
    }
  }
  if (!(xmin < xmax)) {
    xmin -= 1;
    xmax += 1;
  }
  if (!(ymin < ymax)) {
    ymin -= 1;
    ymax += 1;
  }
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) {
    const double t = plot.log_y ? std::log10(std::max(y, 1e-16)) : y;
    return mt + ph - (t - ymin) / (ymax - ymin) * ph;
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << plot.width << "\" height=\""
     << plot.height << "\" viewBox=\"0 0 " << plot.width << " " << plot.height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << fmt(ml + pw / 2) << "\" y=\"18\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"14\">"
     << plot.title << "</text>\n";

  // Axes box and ticks.
  os << "<rect x=\"" << fmt(ml) << "\" y=\"" << fmt(mt) << "\" width=\"" << fmt(pw)
     << "\" height=\"" << fmt(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  const int nticks = 5;
  for (int i = 0; i <= nticks; ++i) {
    const double fx = xmin + (xmax - xmin) * i / nticks;
    const double gx = px(fx);
    os << "<line x1=\"" << fmt(gx) << "\" y1=\"" << fmt(mt + ph) << "\" x2=\"" << fmt(gx)
       << "\" y2=\"" << fmt(mt + ph + 4) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fmt(gx) << "\" y=\"" << fmt(mt + ph + 18)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(fx)
       << "</text>\n";
    const double fy = ymin + (ymax - ymin) * i / nticks;
    const double gy = mt + ph - (fy - ymin) / (ymax - ymin) * ph;
    os << "<line x1=\"" << fmt(ml - 4) << "\" y1=\"" << fmt(gy) << "\" x2=\"" << fmt(ml)
       << "\" y2=\"" << fmt(gy) << "\" stroke=\"black\"/>\n";
    const double label = plot.log_y ? std::pow(10.0, fy) : fy;
    os << "<text x=\"" << fmt(ml - 7) << "\" y=\"" << fmt(gy + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
       << (plot.log_y ? ("1e" + fmt(std::round(std::log10(label) * 100) / 100)) : fmt(label))
       << "</text>\n";
  }
  os << "<text x=\"" << fmt(ml + pw / 2) << "\" y=\"" << fmt(plot.height - 8.0)
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << plot.x_label
     << "</text>\n";
  os << "<text x=\"14\" y=\"" << fmt(mt + ph / 2)
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 14 "
     << fmt(mt + ph / 2) << ")\">" << plot.y_label << "</text>\n";

  for (std::size_t si = 0; si < plot.series.size(); ++si) {
    const auto& s = plot.series[si];
    const char* color = kPalette[si % 8];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i) os << ' ';
      os << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i]));
    }
    os << "\"/>\n";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      os << "<circle cx=\"" << fmt(px(s.x[i])) << "\" cy=\"" << fmt(py(s.y[i]))
         << "\" r=\"2.4\" fill=\"" << color << "\"/>\n";
    const double lx = ml + pw - 150, ly = mt + 16 + 16 * si;
    os << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\"" << fmt(lx + 22)
       << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    os << "<text x=\"" << fmt(lx + 27) << "\" y=\"" << fmt(ly)
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_svg(const SvgPlot& plot, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_svg: cannot open " + path);
  f << render_svg(plot);
}

}  // namespace legcs
