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

// Surface CSV files:
//
//     j,ell,t,C_raw,C_tmem,C_zne,C_corr,C_exact,F_abs,F_phase
//
// UTF-8, LF line endings, 12 significant digits, empty field for a variant the
// pipeline did not produce. A JSON sidecar carries the resolved config.

#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "otocsim/config.hpp"
#include "otocsim/errors.hpp"
#include "otocsim/experiment.hpp"

namespace otocsim {

inline constexpr std::string_view kCsvHeader = "j,ell,t,C_raw,C_tmem,C_zne,C_corr,C_exact,F_abs,F_phase";

struct SurfaceFile {
    std::vector<SurfacePoint> rows;
};

inline std::string format_number(double v) {
    if (v == 0.0) {
        return "0";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    std::string s(buf);
    if (s == "-0") {
        return "0";
    }
    return s;
}

inline std::string write_csv(const std::vector<SurfacePoint> &rows) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto &p : rows) {
        out += std::to_string(p.j);
        out += ',';
        out += std::to_string(p.ell);
        out += ',';
        out += format_number(p.t);
        for (auto c : kAllColumns) {
            out += ',';
            if (const auto &v = column_value(p, c)) {
                out += format_number(*v);
            }
        }
        out += '\n';
    }
    return out;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

inline double parse_double(const std::string &s, std::size_t line_no, const char *column) {
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw ConfigError(
            column, "line " + std::to_string(line_no) + ": cannot parse '" + s + "' as a number");
    }
    return v;
}

}  // namespace detail

inline SurfaceFile read_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || detail::split_csv_line(line) != detail::split_csv_line(std::string(kCsvHeader))) {
        throw ConfigError("header", "surface CSV must start with '" + std::string(kCsvHeader) + "'");
    }
    SurfaceFile f;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto fields = detail::split_csv_line(line);
        if (fields.size() != 10) {
            throw ConfigError("row", "line " + std::to_string(line_no) + ": expected 10 fields");
        }
        SurfacePoint p;
        p.j = static_cast<int>(detail::parse_double(fields[0], line_no, "j"));
        p.ell = static_cast<int>(detail::parse_double(fields[1], line_no, "ell"));
        p.t = detail::parse_double(fields[2], line_no, "t");
        for (std::size_t k = 0; k < std::size(kAllColumns); ++k) {
            const auto &s = fields[3 + k];
            if (!s.empty()) {
                const auto name = std::string(column_name(kAllColumns[k]));
                column_value(p, kAllColumns[k]) = detail::parse_double(s, line_no, name.c_str());
            }
        }
        f.rows.push_back(p);
    }
    return f;
}

inline SurfaceFile read_csv_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("", "cannot open surface file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return read_csv(buf.str());
}

inline Column require_column(const std::string &name) {
    const auto c = parse_column(name);
    if (!c) {
        throw ConfigError("column", "unknown variant column '" + name + "'");
    }
    return *c;
}

// Pointwise a[col_a] - b[col_b]; the result carries the difference in col_a.
inline SurfaceFile diff_surfaces(const SurfaceFile &a, const SurfaceFile &b, Column col_a, Column col_b) {
    if (a.rows.size() != b.rows.size()) {
        throw ConfigError("grid", "surfaces have different row counts");
    }
    SurfaceFile out;
    out.rows.reserve(a.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const auto &ra = a.rows[i];
        const auto &rb = b.rows[i];
        if (ra.j != rb.j || ra.ell != rb.ell) {
            throw ConfigError(
                "grid", "row " + std::to_string(i + 1) + ": (j, ell) = (" + std::to_string(ra.j) + ", " +
                            std::to_string(ra.ell) + ") vs (" + std::to_string(rb.j) + ", " + std::to_string(rb.ell) +
                            ")");
        }
        SurfacePoint d;
        d.j = ra.j;
        d.ell = ra.ell;
        d.t = ra.t;
        const auto &va = column_value(ra, col_a);
        const auto &vb = column_value(rb, col_b);
        if (va && vb) {
            column_value(d, col_a) = *va - *vb;
        }
        out.rows.push_back(d);
    }
    return out;
}

inline SurfaceFile diff_surfaces(const SurfaceFile &a, const SurfaceFile &b, Column column) {
    return diff_surfaces(a, b, column, column);
}

inline nlohmann::json surface_metadata(const SpreadSurface &s) {
    nlohmann::json m;
    m["config"] = config_to_json(s.config);
    m["code_version"] = std::string(kVersion);
    m["seed"] = s.config.seed;
    m["rows"] = s.points.size();
    nlohmann::json cols = nlohmann::json::array();
    for (auto c : kAllColumns) {
        const bool present =
            std::any_of(s.points.begin(), s.points.end(), [&](const SurfacePoint &p) { return column_value(p, c).has_value(); });
        if (present) {
            cols.push_back(std::string(column_name(c)));
        }
    }
    m["columns_present"] = cols;
    nlohmann::json d = nlohmann::json::object();
    const auto &diag = s.diagnostics;
    if (diag.tmem_condition_number) {
        d["tmem_condition_number"] = *diag.tmem_condition_number;
        d["tmem_max_iterations"] = diag.tmem_max_iterations;
        d["tmem_all_converged"] = diag.tmem_all_converged;
    }
    if (s.config.pipeline == Pipeline::mitigated && s.config.mitigation.zne) {
        d["zne_projections"] = diag.zne_projections;
    }
    if (diag.order_difference) {
        d["mitigation_order_max_difference"] = *diag.order_difference;
    }
    m["diagnostics"] = d;
    return m;
}

}  // namespace otocsim
