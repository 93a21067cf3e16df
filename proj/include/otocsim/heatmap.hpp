// Copyright 2026 The otocsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Static SVG heatmaps of a surface column: time index ell left to right, probe
// site j bottom to top.
//
// Color scale: piecewise-linear through five anchors spaced evenly over
// [lo, hi] (default [0, 4], the full range of C):
//
//     #440154  #3b528b  #21918c  #5ec962  #fde725
//
// Values are clamped to [lo, hi]; missing values are drawn #cccccc.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>

#include "otocsim/errors.hpp"
#include "otocsim/experiment.hpp"
#include "otocsim/surface_io.hpp"

namespace otocsim {

struct HeatmapOptions {
    double lo = 0.0;
    double hi = 4.0;
    std::string title;
};

namespace detail {

inline constexpr std::array<std::array<int, 3>, 5> kHeatmapAnchors = {{
    {0x44, 0x01, 0x54},
    {0x3b, 0x52, 0x8b},
    {0x21, 0x91, 0x8c},
    {0x5e, 0xc9, 0x62},
    {0xfd, 0xe7, 0x25},
}};

inline std::string hex_color(int r, int g, int b) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

}  // namespace detail

inline std::string heatmap_color(double v, double lo, double hi) {
    if (!std::isfinite(v)) {
        return "#cccccc";
    }
    const double x = std::clamp((v - lo) / (hi - lo), 0.0, 1.0) * 4.0;
    const int seg = std::min(3, static_cast<int>(x));
    const double f = x - seg;
    const auto &a = detail::kHeatmapAnchors[static_cast<std::size_t>(seg)];
    const auto &b = detail::kHeatmapAnchors[static_cast<std::size_t>(seg + 1)];
    auto mix = [&](int k) { return static_cast<int>(std::lround(a[k] + f * (b[k] - a[k]))); };
    return detail::hex_color(mix(0), mix(1), mix(2));
}

inline std::string render_heatmap(const SurfaceFile &surface, Column column, const HeatmapOptions &opts = {}) {
    if (!(opts.hi > opts.lo)) {
        throw ConfigError("range", "heatmap range must satisfy lo < hi");
    }
    if (surface.rows.empty()) {
        throw ConfigError("surface", "cannot render an empty surface");
    }
    int n = 0, ell_max = 0;
    std::map<std::pair<int, int>, std::optional<double>> grid;
    for (const auto &p : surface.rows) {
        n = std::max(n, p.j);
        ell_max = std::max(ell_max, p.ell);
        grid[{p.j, p.ell}] = column_value(p, column);
    }

    const int cols = ell_max + 1;
    const int cell_w = std::max(4, 600 / cols);
    const int cell_h = 40;
    const int left = 50, top = 40, bottom = 50, right = 90;
    const int plot_w = cols * cell_w;
    const int plot_h = n * cell_h;
    const int width = left + plot_w + right;
    const int height = top + plot_h + bottom;

    std::string out;
    char buf[256];
    std::snprintf(
        buf, sizeof buf,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" viewBox=\"0 0 %d %d\">\n", width, height,
        width, height);
    out += buf;
    out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(width) + "\" height=\"" + std::to_string(height) +
           "\" fill=\"#ffffff\"/>\n";
    const std::string title = opts.title.empty() ? std::string(column_name(column)) : opts.title;
    std::snprintf(
        buf, sizeof buf, "<text x=\"%d\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">%s</text>\n", left,
        title.c_str());
    out += buf;

    for (int j = 1; j <= n; ++j) {
        const int y = top + (n - j) * cell_h;
        for (int ell = 0; ell <= ell_max; ++ell) {
            const auto it = grid.find({j, ell});
            const double v = (it != grid.end() && it->second) ? *it->second : std::nan("");
            std::snprintf(
                buf, sizeof buf, "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"%s\"/>\n",
                left + ell * cell_w, y, cell_w, cell_h, heatmap_color(v, opts.lo, opts.hi).c_str());
            out += buf;
        }
        std::snprintf(
            buf, sizeof buf,
            "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">%d</text>\n",
            left - 6, y + cell_h / 2 + 4, j);
        out += buf;
    }

    const int tick_every = std::max(1, cols / 6);
    for (int ell = 0; ell <= ell_max; ell += tick_every) {
        std::snprintf(
            buf, sizeof buf,
            "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">%d</text>\n",
            left + ell * cell_w + cell_w / 2, top + plot_h + 16, ell);
        out += buf;
    }
    std::snprintf(
        buf, sizeof buf,
        "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">time index</text>\n",
        left + plot_w / 2, top + plot_h + 38);
    out += buf;
    std::snprintf(
        buf, sizeof buf,
        "<text x=\"16\" y=\"%d\" font-family=\"sans-serif\" font-size=\"12\" "
        "transform=\"rotate(-90 16 %d)\" text-anchor=\"middle\">site j</text>\n",
        top + plot_h / 2, top + plot_h / 2);
    out += buf;

    // Color bar.
    const int bar_x = left + plot_w + 20;
    const int steps = 40;
    for (int s = 0; s < steps; ++s) {
        const double v = opts.lo + (opts.hi - opts.lo) * (s + 0.5) / steps;
        const int y = top + plot_h - (s + 1) * plot_h / steps;
        const int h = (s + 1) * plot_h / steps - s * plot_h / steps;
        std::snprintf(
            buf, sizeof buf, "<rect x=\"%d\" y=\"%d\" width=\"16\" height=\"%d\" fill=\"%s\"/>\n", bar_x, y, h,
            heatmap_color(v, opts.lo, opts.hi).c_str());
        out += buf;
    }
    for (int k = 0; k <= 4; ++k) {
        const double v = opts.lo + (opts.hi - opts.lo) * k / 4.0;
        std::snprintf(
            buf, sizeof buf, "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"11\">%s</text>\n",
            bar_x + 22, top + plot_h - k * plot_h / 4 + 4, format_number(v).c_str());
        out += buf;
    }
    out += "</svg>\n";
    return out;
}

}  // namespace otocsim
