#pragma once

// Planar SVG rendering of a polygonal path split into convex pieces.

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "convexsplit/crossing.hpp"
#include "convexsplit/errors.hpp"

namespace convexsplit::cli {

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

} // namespace detail

/// Pieces alternate between a solid and a dashed stroke; the shared vertex
/// of consecutive pieces gets a marker.  Without pieces the path is one piece.
inline std::string render_svg(const PolyPath& path, const std::vector<Piece>& pieces,
                              const std::string& title = {}) {
  const auto& seq = path.vertices();
  if (seq.dim() != 2) throw DimensionError("SVG output needs planar points");
  const double size = 640, margin = 24;

  std::vector<std::pair<double, double>> xy;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& p : seq.points()) {
    double x = p[0].get_d(), y = p[1].get_d();
    xy.emplace_back(x, y);
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
  double scale = (size - 2 * margin) / span;
  auto sx = [&](double x) { return margin + (x - xmin) * scale; };
  // SVG y grows downwards
  auto sy = [&](double y) { return size - margin - (y - ymin) * scale; };

  std::vector<Piece> ps = pieces;
  if (ps.empty()) ps.push_back(Piece{0, seq.size() - 1, std::nullopt});

  std::string out =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
      "viewBox=\"0 0 640 640\">\n";
  if (!title.empty()) out += "  <title>" + title + "</title>\n";
  out += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  static const char* colors[] = {"#1f77b4", "#d62728"};
  for (std::size_t j = 0; j < ps.size(); ++j) {
    out += "  <polyline class=\"piece\" data-piece=\"" + std::to_string(j) +
           "\" fill=\"none\" stroke-width=\"2\" stroke=\"" + colors[j % 2] + "\"";
    if (j % 2) out += " stroke-dasharray=\"6 3\"";
    out += " points=\"";
    for (std::size_t i = ps[j].first; i <= ps[j].last; ++i) {
      out += (i == ps[j].first ? "" : " ") + detail::fmt(sx(xy[i].first)) + "," +
             detail::fmt(sy(xy[i].second));
    }
    out += "\"/>\n";
  }
  for (std::size_t j = 0; j + 1 < ps.size(); ++j) {
    const auto& v = xy[ps[j].last];
    out += "  <circle class=\"cut\" cx=\"" + detail::fmt(sx(v.first)) + "\" cy=\"" +
           detail::fmt(sy(v.second)) + "\" r=\"4\" fill=\"black\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

} // namespace convexsplit::cli
