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

#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "otocsim/errors.hpp"
#include "otocsim/experiment.hpp"
#include "otocsim/heatmap.hpp"
#include "otocsim/surface_io.hpp"

namespace otocsim {

inline void write_text_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write '" + path.string() + "'");
    }
    out << text;
}

// Writes <name>.csv, <name>.json and one <name>_<column>.svg per commutator
// column present. Returns the paths written.
inline std::vector<std::filesystem::path> write_surface_outputs(
    const SpreadSurface &surface, const std::filesystem::path &dir) {
    std::filesystem::create_directories(dir);
    const std::string &name = surface.config.name;
    std::vector<std::filesystem::path> written;

    const auto csv_path = dir / (name + ".csv");
    write_text_file(csv_path, write_csv(surface.points));
    written.push_back(csv_path);

    const auto meta_path = dir / (name + ".json");
    write_text_file(meta_path, surface_metadata(surface).dump(2) + "\n");
    written.push_back(meta_path);

    const SurfaceFile file{surface.points};
    for (auto c : {Column::C_raw, Column::C_tmem, Column::C_zne, Column::C_corr, Column::C_exact}) {
        const bool present = std::any_of(
            surface.points.begin(), surface.points.end(), [&](const SurfacePoint &p) { return column_value(p, c).has_value(); });
        if (!present) {
            continue;
        }
        HeatmapOptions opts;
        opts.title = name + " " + std::string(column_name(c));
        const auto svg_path = dir / (name + "_" + std::string(column_name(c)) + ".svg");
        write_text_file(svg_path, render_heatmap(file, c, opts));
        written.push_back(svg_path);
    }
    return written;
}

}  // namespace otocsim
