// Copyright 2026 The wgsc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Standalone SVG 1.1 heatmaps for 2-axis sweep tables: linear color scale,
// axis labels from the parameter names, and a color bar annotated with the
// value range.

#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "wgsc/harness.hpp"

namespace wgsc {

namespace detail {

struct Rgb {
  int r, g, b;
};

// Linear interpolation through a fixed set of gradient stops (dark blue to
// yellow), t in [0, 1].
inline Rgb heat_color(double t) {
  static const Rgb stops[] = {
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
  constexpr int n = 5;
  t = std::clamp(t, 0.0, 1.0);
  const double scaled = t * (n - 1);
  const int k = std::min(static_cast<int>(scaled), n - 2);
  const double f = scaled - k;
  auto mix = [&](int a, int b) { return static_cast<int>(a + (b - a) * f + 0.5); };
  return {mix(stops[k].r, stops[k + 1].r), mix(stops[k].g, stops[k + 1].g),
          mix(stops[k].b, stops[k + 1].b)};
}

inline std::string fill_attr(const Rgb& c) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "rgb(%d,%d,%d)", c.r, c.g, c.b);
  return buf;
}

}  // namespace detail

// Renders the named value column of a 2-axis table. Axis 1 runs along x,
// axis 2 along y (increasing upward).
inline void emit_svg_heatmap(const Table& table, const std::string& value_column,
                             std::ostream& out) {
  if (table.axes.size() != 2) {
    throw std::invalid_argument("emit_svg_heatmap: table must have exactly 2 axes");
  }
  const auto col_it =
      std::find(table.columns.begin(), table.columns.end(), value_column);
  if (col_it == table.columns.end()) {
    throw std::invalid_argument("emit_svg_heatmap: no column named '" + value_column + "'");
  }
  const std::size_t col = col_it - table.columns.begin();

  const int nx = table.axes[0].count;
  const int ny = table.axes[1].count;
  double vmin = table.rows[0][col], vmax = vmin;
  for (const auto& row : table.rows) {
    vmin = std::min(vmin, row[col]);
    vmax = std::max(vmax, row[col]);
  }
  const double span = vmax - vmin;

  const int cell = std::max(4, 480 / std::max(nx, ny));
  const int plot_w = nx * cell;
  const int plot_h = ny * cell;
  const int margin_left = 70, margin_bottom = 50, margin_top = 30;
  const int bar_w = 18, bar_gap = 30, bar_label_w = 80;
  const int width = margin_left + plot_w + bar_gap + bar_w + bar_label_w;
  const int height = margin_top + plot_h + margin_bottom;

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
      << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";

  // cells; row index i runs along axis 1 (x), j along axis 2 (y, upward)
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      const double v = table.rows[static_cast<std::size_t>(i) * ny + j][col];
      const double t = span > 0 ? (v - vmin) / span : 0.5;
      const int x = margin_left + i * cell;
      const int y = margin_top + (ny - 1 - j) * cell;
      out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell
          << "\" height=\"" << cell << "\" fill=\""
          << detail::fill_attr(detail::heat_color(t)) << "\"/>\n";
    }
  }

  out << "<rect x=\"" << margin_left << "\" y=\"" << margin_top << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

  // axis labels and ranges
  const auto& ax = table.axes[0];
  const auto& ay = table.axes[1];
  out << "<text x=\"" << margin_left + plot_w / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-size=\"14\">" << ax.name << "</text>\n";
  out << "<text x=\"" << margin_left << "\" y=\"" << margin_top + plot_h + 16
      << "\" text-anchor=\"middle\" font-size=\"11\">" << format_value(ax.start)
      << "</text>\n";
  out << "<text x=\"" << margin_left + plot_w << "\" y=\"" << margin_top + plot_h + 16
      << "\" text-anchor=\"middle\" font-size=\"11\">" << format_value(ax.stop)
      << "</text>\n";
  out << "<text x=\"" << 18 << "\" y=\"" << margin_top + plot_h / 2
      << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 "
      << margin_top + plot_h / 2 << ")\">" << ay.name << "</text>\n";
  out << "<text x=\"" << margin_left - 6 << "\" y=\"" << margin_top + plot_h
      << "\" text-anchor=\"end\" font-size=\"11\">" << format_value(ay.start)
      << "</text>\n";
  out << "<text x=\"" << margin_left - 6 << "\" y=\"" << margin_top + 10
      << "\" text-anchor=\"end\" font-size=\"11\">" << format_value(ay.stop)
      << "</text>\n";

  // color bar (drawn as horizontal slices, max value on top)
  const int bar_x = margin_left + plot_w + bar_gap;
  const int slices = 64;
  for (int s = 0; s < slices; ++s) {
    const double t = 1.0 - (s + 0.5) / slices;
    const int y0 = margin_top + s * plot_h / slices;
    const int y1 = margin_top + (s + 1) * plot_h / slices;
    out << "<rect x=\"" << bar_x << "\" y=\"" << y0 << "\" width=\"" << bar_w
        << "\" height=\"" << y1 - y0 << "\" fill=\""
        << detail::fill_attr(detail::heat_color(t)) << "\"/>\n";
  }
  out << "<rect x=\"" << bar_x << "\" y=\"" << margin_top << "\" width=\"" << bar_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << bar_x + bar_w + 6 << "\" y=\"" << margin_top + 10
      << "\" font-size=\"11\">" << format_value(vmax) << "</text>\n";
  out << "<text x=\"" << bar_x + bar_w + 6 << "\" y=\"" << margin_top + plot_h
      << "\" font-size=\"11\">" << format_value(vmin) << "</text>\n";
  out << "<text x=\"" << bar_x + bar_w / 2 << "\" y=\"" << margin_top - 8
      << "\" text-anchor=\"middle\" font-size=\"12\">" << value_column << "</text>\n";

  out << "</svg>\n";
}

inline void emit_svg_heatmap(const Table& table, const std::string& value_column,
                             const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  emit_svg_heatmap(table, value_column, out);
}

}  // namespace wgsc
