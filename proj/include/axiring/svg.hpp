#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace axiring {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Self-contained SVG line chart; no renderer dependencies. In log-log mode
// every coordinate must be strictly positive.
inline std::string render_line_chart(std::span<const PlotSeries> series,
                                     const std::string& x_label,
                                     const std::string& title, bool loglog) {
  constexpr double kW = 800, kH = 520;
  constexpr double kL = 70, kR = 20, kT = 40, kB = 50;
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                  "#9467bd", "#ff7f0e", "#8c564b"};

  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size() || s.x.empty())
      throw std::runtime_error("render_line_chart: empty or ragged series");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      double xv = s.x[i], yv = s.y[i];
      if (loglog && (!(xv > 0.0) || !(yv > 0.0)))
        throw std::domain_error(
            "render_line_chart: log-log mode requires positive values");
      if (loglog) {
        xv = std::log10(xv);
        yv = std::log10(yv);
      }
      x_lo = std::min(x_lo, xv);
      x_hi = std::max(x_hi, xv);
      y_lo = std::min(y_lo, yv);
      y_hi = std::max(y_hi, yv);
    }
  }
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  if (y_hi <= y_lo) y_hi = y_lo + (y_lo == 0.0 ? 1.0 : std::abs(y_lo) * 0.1 + 1e-12);

  auto px = [&](double v) {
    if (loglog) v = std::log10(v);
    return kL + (v - x_lo) / (x_hi - x_lo) * (kW - kL - kR);
  };
  auto py = [&](double v) {
    if (loglog) v = std::log10(v);
    return kH - kB - (v - y_lo) / (y_hi - y_lo) * (kH - kT - kB);
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
      << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << " " << kH
      << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">"
      << title << (loglog ? " (log-log)" : "") << "</text>\n";

  // frame and ticks
  svg << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\""
      << kW - kL - kR << "\" height=\"" << kH - kT - kB
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  const int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = x_lo + (x_hi - x_lo) * i / kTicks;
    const double fy = y_lo + (y_hi - y_lo) * i / kTicks;
    const double gx = kL + (kW - kL - kR) * i / kTicks;
    const double gy = kH - kB - (kH - kT - kB) * i / kTicks;
    const double vx = loglog ? std::pow(10.0, fx) : fx;
    const double vy = loglog ? std::pow(10.0, fy) : fy;
    std::ostringstream lx, ly;
    lx.precision(4);
    ly.precision(4);
    lx << vx;
    ly << vy;
    svg << "<line x1=\"" << gx << "\" y1=\"" << kH - kB << "\" x2=\"" << gx
        << "\" y2=\"" << kH - kB + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << gx << "\" y=\"" << kH - kB + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << lx.str() << "</text>\n"
        << "<line x1=\"" << kL - 5 << "\" y1=\"" << gy << "\" x2=\"" << kL
        << "\" y2=\"" << gy << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << kL - 8 << "\" y=\"" << gy + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << ly.str() << "</text>\n";
  }
  svg << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << x_label << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kColors[si % 6];
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      svg << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
    svg << "\"/>\n";
    svg << "<text x=\"" << kW - kR - 8 << "\" y=\"" << kT + 18 + 16 * si
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"12\" fill=\""
        << color << "\">" << s.label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace axiring
