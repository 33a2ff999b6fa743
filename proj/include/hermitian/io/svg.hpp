#pragma once

// Minimal SVG 1.1 line plots. Every plot has a CSV twin holding exactly the
// plotted samples.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "hermitian/error.hpp"
#include "hermitian/io/csv.hpp"

namespace hermitian {

struct PlotSeries {
  std::string name;
  std::vector<double> y;
};

/// Several series over one shared abscissa.
struct PlotSpec {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::vector<double> x;
  std::vector<PlotSeries> series;
};

namespace detail {

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
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

/// 1, 2 or 5 times a power of ten, close to span/target.
inline double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  return (r < 1.5 ? 1.0 : r < 3.5 ? 2.0 : r < 7.5 ? 5.0 : 10.0) * mag;
}

inline std::string fmt(double v, const char* spec = "%.6g") {
  char buf[40];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace detail

inline void validate(const PlotSpec& p) {
  if (p.x.size() < 2) throw Error(ErrorKind::Domain, "plot needs at least two samples");
  if (p.series.empty()) throw Error(ErrorKind::Domain, "plot has no series");
  for (const auto& s : p.series) {
    if (s.y.size() != p.x.size()) throw Error(ErrorKind::Domain, "series '" + s.name + "' has the wrong length");
  }
}

inline CsvTable plot_csv(const PlotSpec& p) {
  validate(p);
  CsvTable t;
  t.header.push_back(p.xlabel);
  for (const auto& s : p.series) t.header.push_back(s.name);
  for (std::size_t i = 0; i < p.x.size(); ++i) {
    std::vector<double> row{p.x[i]};
    for (const auto& s : p.series) row.push_back(s.y[i]);
    t.add_row(std::move(row));
  }
  return t;
}

inline std::string render_svg(const PlotSpec& p) {
  validate(p);
  constexpr double W = 720, H = 450, L = 80, R = 160, T = 40, B = 60;
  const double pw = W - L - R, ph = H - T - B;

  double x0 = *std::min_element(p.x.begin(), p.x.end());
  double x1 = *std::max_element(p.x.begin(), p.x.end());
  double y0 = std::numeric_limits<double>::infinity(), y1 = -y0;
  for (const auto& s : p.series)
    for (double v : s.y)
      if (std::isfinite(v)) {
        y0 = std::min(y0, v);
        y1 = std::max(y1, v);
      }
  if (!std::isfinite(y0)) throw Error(ErrorKind::Domain, "plot has no finite values");
  if (x1 == x0) x1 = x0 + 1.0;
  // Flat curves get a visible band around them.
  const double pad = y1 > y0 ? 0.05 * (y1 - y0) : std::max(1e-12, 0.05 * std::abs(y0) + 1e-3);
  y0 -= pad;
  y1 += pad;

  auto sx = [&](double x) { return L + (x - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return T + (y1 - y) / (y1 - y0) * ph; };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::ostringstream os;
  os << R"(<?xml version="1.0" encoding="UTF-8"?>)" << "\n"
     << R"(<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width=")" << W << R"(" height=")" << H
     << R"(" viewBox="0 0 )" << W << " " << H << R"(" font-family="sans-serif" font-size="12">)" << "\n"
     << R"(<rect width="100%" height="100%" fill="white"/>)" << "\n"
     << R"(<text x=")" << L + pw / 2 << R"(" y="24" text-anchor="middle" font-size="15">)"
     << detail::xml_escape(p.title) << "</text>\n";

  // Grid and ticks.
  const double xs = detail::nice_step(x1 - x0, 8), ys = detail::nice_step(y1 - y0, 6);
  for (double v = std::ceil(x0 / xs) * xs; v <= x1 + 1e-9 * xs; v += xs) {
    const double X = sx(v);
    os << R"(<line x1=")" << X << R"(" y1=")" << T << R"(" x2=")" << X << R"(" y2=")" << T + ph
       << R"(" stroke="#e0e0e0"/>)" << "\n"
       << R"(<text x=")" << X << R"(" y=")" << T + ph + 18 << R"(" text-anchor="middle">)"
       << detail::fmt(std::abs(v) < 1e-12 * xs ? 0.0 : v) << "</text>\n";
  }
  for (double v = std::ceil(y0 / ys) * ys; v <= y1 + 1e-9 * ys; v += ys) {
    const double Y = sy(v);
    os << R"(<line x1=")" << L << R"(" y1=")" << Y << R"(" x2=")" << L + pw << R"(" y2=")" << Y
       << R"(" stroke="#e0e0e0"/>)" << "\n"
       << R"(<text x=")" << L - 6 << R"(" y=")" << Y + 4 << R"(" text-anchor="end">)"
       << detail::fmt(std::abs(v) < 1e-12 * ys ? 0.0 : v) << "</text>\n";
  }
  if (y0 < 0.0 && y1 > 0.0) {
    os << R"(<line x1=")" << L << R"(" y1=")" << sy(0.0) << R"(" x2=")" << L + pw << R"(" y2=")" << sy(0.0)
       << R"(" stroke="#808080"/>)" << "\n";
  }
  os << R"(<rect x=")" << L << R"(" y=")" << T << R"(" width=")" << pw << R"(" height=")" << ph
     << R"(" fill="none" stroke="black"/>)" << "\n"
     << R"(<text x=")" << L + pw / 2 << R"(" y=")" << H - 16 << R"(" text-anchor="middle">)"
     << detail::xml_escape(p.xlabel) << "</text>\n"
     << R"(<text x="18" y=")" << T + ph / 2 << R"(" text-anchor="middle" transform="rotate(-90 18 )"
     << T + ph / 2 << R"lit()">)lit" << detail::xml_escape(p.ylabel) << "</text>\n";

  for (std::size_t k = 0; k < p.series.size(); ++k) {
    const char* color = colors[k % std::size(colors)];
    os << R"(<polyline fill="none" stroke=")" << color << R"(" stroke-width="1.5" points=")";
    bool first = true;
    for (std::size_t i = 0; i < p.x.size(); ++i) {
      const double v = p.series[k].y[i];
      if (!std::isfinite(v)) continue;
      os << (first ? "" : " ") << detail::fmt(sx(p.x[i]), "%.2f") << "," << detail::fmt(sy(v), "%.2f");
      first = false;
    }
    os << R"("/>)" << "\n";
    const double ly = T + 14 + 18.0 * static_cast<double>(k);
    os << R"(<line x1=")" << L + pw + 12 << R"(" y1=")" << ly << R"(" x2=")" << L + pw + 36 << R"(" y2=")" << ly
       << R"(" stroke=")" << color << R"(" stroke-width="2"/>)" << "\n"
       << R"(<text x=")" << L + pw + 42 << R"(" y=")" << ly + 4 << R"(">)" << detail::xml_escape(p.series[k].name)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace hermitian
