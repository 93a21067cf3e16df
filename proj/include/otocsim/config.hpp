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

// JSON experiment configuration. Every field is optional; see README for the
// full list and defaults. Unknown keys are rejected.

#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"
#include "otocsim/errors.hpp"
#include "otocsim/experiment.hpp"

namespace otocsim {

namespace detail {

using json = nlohmann::json;

inline void reject_unknown_keys(const json &obj, const std::set<std::string> &allowed, const std::string &prefix) {
    for (const auto &[key, _] : obj.items()) {
        if (!allowed.contains(key)) {
            throw ConfigError(prefix + key, "unknown field");
        }
    }
}

template <typename T>
T get_field(const json &obj, const std::string &key, const std::string &path, T fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json &v = obj.at(key);
    if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) throw ConfigError(path, "expected true or false");
        return v.get<bool>();
    } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) throw ConfigError(path, "expected a string");
        return v.get<std::string>();
    } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
        if constexpr (std::is_unsigned_v<T>) {
            if (v.get<long long>() < 0) throw ConfigError(path, "must be non-negative");
        }
        return v.get<T>();
    } else {
        if (!v.is_number()) throw ConfigError(path, "expected a number");
        return v.get<T>();
    }
}

inline std::vector<double> number_list(const json &v, const std::string &path, std::size_t expected) {
    if (v.is_number()) {
        return std::vector<double>(expected, v.get<double>());
    }
    if (!v.is_array()) {
        throw ConfigError(path, "expected a number or a list of numbers");
    }
    if (v.size() != expected) {
        throw ConfigError(path, "expected " + std::to_string(expected) + " entries, got " + std::to_string(v.size()));
    }
    std::vector<double> out;
    for (const auto &e : v) {
        if (!e.is_number()) throw ConfigError(path, "expected numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

}  // namespace detail

inline ExperimentConfig config_from_json(const nlohmann::json &j) {
    using detail::get_field;
    if (!j.is_object()) {
        throw ConfigError("", "configuration must be a JSON object");
    }
    detail::reject_unknown_keys(
        j,
        {"name", "regime", "n", "tau", "k", "ell_max", "magic", "magic_override", "cell_first", "pipeline", "state",
         "probe", "shots", "noise", "mitigation", "seed", "output_dir"},
        "");

    ExperimentConfig c;
    c.name = get_field<std::string>(j, "name", "name", c.name);
    const int n = get_field<int>(j, "n", "n", 4);

    if (!j.contains("regime")) {
        throw ConfigError("regime", "required (\"integrable\", \"chaotic\" or {J, B_x, B_z})");
    }
    const auto &r = j.at("regime");
    if (r.is_string()) {
        const auto regime = parse_regime(r.get<std::string>());
        if (!regime) {
            throw ConfigError("regime", "unknown preset '" + r.get<std::string>() + "'");
        }
        c.regime_label = std::string(regime_name(*regime));
        c.params = regime_preset(*regime, n).params;
    } else if (r.is_object()) {
        detail::reject_unknown_keys(r, {"J", "B_x", "B_z"}, "regime.");
        c.regime_label = "custom";
        c.params = IsingParams{
            n, get_field<double>(r, "J", "regime.J", -1.0), get_field<double>(r, "B_x", "regime.B_x", 0.0),
            get_field<double>(r, "B_z", "regime.B_z", 1.0)};
    } else {
        throw ConfigError("regime", "expected a preset name or an object {J, B_x, B_z}");
    }
    if (n < 3) {
        throw ConfigError("n", "must be >= 3");
    }

    auto &s = c.schedule;
    s.k = get_field<int>(j, "k", "k", 1);
    s.ell_max = get_field<int>(j, "ell_max", "ell_max", 24);
    s.magic = get_field<bool>(j, "magic", "magic", false);
    s.magic_override = get_field<bool>(j, "magic_override", "magic_override", false);
    s.cell_first = get_field<bool>(j, "cell_first", "cell_first", false);
    if (j.contains("tau") && j.at("tau").is_string()) {
        if (j.at("tau").get<std::string>() != "magic") {
            throw ConfigError("tau", "expected a number or \"magic\"");
        }
        if (s.k < 1) {
            throw ConfigError("k", "must be >= 1");
        }
        s.tau = magic_tau(c.params, s.k);
    } else {
        s.tau = get_field<double>(j, "tau", "tau", 0.06);
    }

    const auto pipeline = get_field<std::string>(j, "pipeline", "pipeline", "exact");
    if (auto p = parse_pipeline(pipeline)) {
        c.pipeline = *p;
    } else {
        throw ConfigError("pipeline", "unknown pipeline '" + pipeline + "'");
    }
    const auto state = get_field<std::string>(j, "state", "state", "zeros");
    if (auto st = parse_state(state)) {
        c.state = *st;
    } else {
        throw ConfigError("state", "expected zeros, plus or maximally_mixed");
    }
    const auto probe = get_field<std::string>(j, "probe", "probe", "X");
    if (auto pr = parse_probe(probe)) {
        c.probe = *pr;
    } else {
        throw ConfigError("probe", "expected X or Y");
    }

    if (j.contains("shots")) {
        const auto &v = j.at("shots");
        if (!v.is_number_integer() || v.get<long long>() < 1) {
            throw ConfigError("shots", "must be an integer >= 1");
        }
        c.shots = v.get<std::uint64_t>();
    }
    c.seed = get_field<std::uint64_t>(j, "seed", "seed", c.seed);
    c.output_dir = get_field<std::string>(j, "output_dir", "output_dir", "");

    const auto nq = static_cast<std::size_t>(n);
    c.noise = NoiseModel::calibrated(nq);
    c.calibration_shots = c.shots;
    if (j.contains("noise")) {
        const auto &nz = j.at("noise");
        if (!nz.is_object()) {
            throw ConfigError("noise", "expected an object");
        }
        detail::reject_unknown_keys(
            nz, {"cnot_error", "spam", "t1_given_0", "t0_given_1", "calibration", "calibration_shots"}, "noise.");
        if (nz.contains("cnot_error")) {
            const auto &v = nz.at("cnot_error");
            if (v.is_number()) {
                c.noise.set_uniform_cnot_error(v.get<double>());
            } else {
                const auto edges = detail::number_list(v, "noise.cnot_error", nq - 1);
                c.noise.cnot_errors.clear();
                for (std::size_t e = 0; e < edges.size(); ++e) {
                    c.noise.cnot_errors[{e, e + 1}] = edges[e];
                }
                c.noise.default_cnot_error = edges.front();
            }
        }
        if (nz.contains("spam")) {
            const auto eps = detail::number_list(nz.at("spam"), "noise.spam", nq);
            c.noise.t1_given_0 = eps;
            c.noise.t0_given_1 = eps;
        }
        if (nz.contains("t1_given_0")) {
            c.noise.t1_given_0 = detail::number_list(nz.at("t1_given_0"), "noise.t1_given_0", nq);
        }
        if (nz.contains("t0_given_1")) {
            c.noise.t0_given_1 = detail::number_list(nz.at("t0_given_1"), "noise.t0_given_1", nq);
        }
        const auto cal = get_field<std::string>(nz, "calibration", "noise.calibration", "analytic");
        if (cal == "analytic") {
            c.calibration = Calibration::analytic;
        } else if (cal == "empirical") {
            c.calibration = Calibration::empirical;
        } else {
            throw ConfigError("noise.calibration", "expected analytic or empirical");
        }
        c.calibration_shots =
            get_field<std::uint64_t>(nz, "calibration_shots", "noise.calibration_shots", c.calibration_shots);
    }

    if (c.pipeline == Pipeline::mitigated) {
        c.mitigation = MitigationSettings{};
    } else {
        c.mitigation = MitigationSettings{false, false, MitigationOrder::tmem_then_zne};
    }
    if (j.contains("mitigation")) {
        const auto &m = j.at("mitigation");
        if (!m.is_object()) {
            throw ConfigError("mitigation", "expected an object");
        }
        detail::reject_unknown_keys(m, {"tmem", "zne", "order"}, "mitigation.");
        c.mitigation.tmem = get_field<bool>(m, "tmem", "mitigation.tmem", c.mitigation.tmem);
        c.mitigation.zne = get_field<bool>(m, "zne", "mitigation.zne", c.mitigation.zne);
        const auto order = get_field<std::string>(m, "order", "mitigation.order", "tmem_then_zne");
        if (order == "tmem_then_zne") {
            c.mitigation.order = MitigationOrder::tmem_then_zne;
        } else if (order == "zne_then_tmem") {
            c.mitigation.order = MitigationOrder::zne_then_tmem;
        } else {
            throw ConfigError("mitigation.order", "expected tmem_then_zne or zne_then_tmem");
        }
    }

    validate(c);
    return c;
}

inline ExperimentConfig parse_config(const std::string &text, const std::string &source = "config") {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ConfigError("", source + ": " + e.what());
    }
    return config_from_json(j);
}

inline ExperimentConfig validate_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("", "cannot open config file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

// Resolved configuration, every default filled in.
inline nlohmann::json config_to_json(const ExperimentConfig &c) {
    nlohmann::json j;
    j["name"] = c.name;
    j["regime"] = c.regime_label;
    j["params"] = {{"J", c.params.J}, {"B_x", c.params.B_x}, {"B_z", c.params.B_z}};
    j["n"] = c.params.n;
    j["tau"] = c.schedule.tau;
    j["k"] = c.schedule.k;
    j["ell_max"] = c.schedule.ell_max;
    j["magic"] = c.schedule.magic;
    j["magic_override"] = c.schedule.magic_override;
    j["cell_first"] = c.schedule.cell_first;
    j["pipeline"] = std::string(pipeline_name(c.pipeline));
    j["state"] = std::string(state_name(c.state));
    j["probe"] = std::string(probe_name(c.probe));
    j["shots"] = c.shots;
    j["seed"] = c.seed;
    j["output_dir"] = c.output_dir;
    nlohmann::json edges = nlohmann::json::array();
    for (std::size_t e = 0; e + 1 < c.noise.n_qubits; ++e) {
        edges.push_back(c.noise.cnot_error(e, e + 1));
    }
    j["noise"] = {
        {"cnot_error", edges},
        {"t1_given_0", c.noise.t1_given_0},
        {"t0_given_1", c.noise.t0_given_1},
        {"calibration", c.calibration == Calibration::analytic ? "analytic" : "empirical"},
        {"calibration_shots", c.calibration_shots}};
    j["mitigation"] = {
        {"tmem", c.mitigation.tmem}, {"zne", c.mitigation.zne}, {"order", std::string(order_name(c.mitigation.order))}};
    return j;
}

}  // namespace otocsim
