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

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "otocsim/otocsim.hpp"

#ifndef OTOCSIM_PRESET_DIR
#define OTOCSIM_PRESET_DIR "presets"
#endif

namespace fs = std::filesystem;

namespace {

fs::path preset_dir() {
    if (const char *env = std::getenv("OTOCSIM_PRESET_DIR")) {
        return env;
    }
    return OTOCSIM_PRESET_DIR;
}

fs::path default_output_dir() {
    if (const char *env = std::getenv("OTOCSIM_OUTPUT_DIR")) {
        return env;
    }
    return "otocsim-out";
}

void emit(const std::string &text, const std::string &output) {
    if (output.empty() || output == "-") {
        std::cout << text;
    } else {
        otocsim::write_text_file(output, text);
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Operator-spreading surfaces of the Ising chain: weaved Trotter circuits, fixed-node OTOCs, noise "
                 "and error mitigation."};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(otocsim::kVersion));

    auto *run = app.add_subcommand("run", "Run an experiment config and write CSV, JSON metadata and SVG heatmaps");
    std::string run_config;
    std::optional<std::uint64_t> seed;
    std::string output_dir;
    unsigned jobs = 1;
    run->add_option("config", run_config, "Config file (JSON)")->required();
    run->add_option("--seed", seed, "Override the config seed");
    run->add_option("--output-dir", output_dir, "Output directory (default: config, then $OTOCSIM_OUTPUT_DIR)");
    run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    auto *check = app.add_subcommand("validate", "Parse a config and print it with all defaults resolved");
    std::string check_config;
    check->add_option("config", check_config, "Config file (JSON)")->required();

    auto *render = app.add_subcommand("render", "Render one column of a surface CSV as an SVG heatmap");
    std::string render_csv, variant, render_out;
    double lo = 0.0, hi = 4.0;
    render->add_option("surface", render_csv, "Surface CSV")->required();
    render->add_option("--variant", variant, "Column to render (C_raw, C_tmem, C_zne, C_corr, C_exact)")->required();
    render->add_option("--output,-o", render_out, "SVG path (default: stdout)");
    render->add_option("--min", lo, "Color scale minimum");
    render->add_option("--max", hi, "Color scale maximum");

    auto *diff = app.add_subcommand("diff", "Pointwise difference a[column] - b[column-b] of two surfaces");
    std::string diff_a, diff_b, column, column_b, diff_out;
    diff->add_option("a", diff_a, "Surface CSV")->required();
    diff->add_option("b", diff_b, "Surface CSV")->required();
    diff->add_option("--column", column, "Column of a (and of b unless --column-b)")->required();
    diff->add_option("--column-b", column_b, "Column of b");
    diff->add_option("--output,-o", diff_out, "CSV path (default: stdout)");

    auto *presets = app.add_subcommand("presets", "Bundled figure presets");
    presets->require_subcommand(1);
    auto *presets_list = presets->add_subcommand("list", "List preset names and paths");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            auto config = otocsim::validate_config(run_config);
            if (seed) {
                config.seed = *seed;
            }
            fs::path dir = !output_dir.empty()          ? fs::path(output_dir)
                           : !config.output_dir.empty() ? fs::path(config.output_dir)
                                                        : default_output_dir();
            const auto surface = otocsim::build_surface(config, jobs);
            for (const auto &p : otocsim::write_surface_outputs(surface, dir)) {
                std::cout << p.string() << "\n";
            }
        } else if (*check) {
            std::cout << otocsim::config_to_json(otocsim::validate_config(check_config)).dump(2) << "\n";
        } else if (*render) {
            const auto surface = otocsim::read_csv_file(render_csv);
            otocsim::HeatmapOptions opts{lo, hi, ""};
            emit(otocsim::render_heatmap(surface, otocsim::require_column(variant), opts), render_out);
        } else if (*diff) {
            const auto a = otocsim::read_csv_file(diff_a);
            const auto b = otocsim::read_csv_file(diff_b);
            const auto ca = otocsim::require_column(column);
            const auto cb = column_b.empty() ? ca : otocsim::require_column(column_b);
            emit(otocsim::write_csv(otocsim::diff_surfaces(a, b, ca, cb).rows), diff_out);
        } else if (*presets_list) {
            std::vector<fs::path> files;
            if (fs::is_directory(preset_dir())) {
                for (const auto &e : fs::directory_iterator(preset_dir())) {
                    if (e.path().extension() == ".json") {
                        files.push_back(e.path());
                    }
                }
            }
            std::sort(files.begin(), files.end());
            for (const auto &f : files) {
                std::cout << f.stem().string() << "\t" << f.string() << "\n";
            }
        }
    } catch (const otocsim::ConfigError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
