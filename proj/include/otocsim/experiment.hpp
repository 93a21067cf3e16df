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

// Spreading-surface experiments: evaluate C_1j at every (j, ell) of a grid with
// one of several pipelines and keep every mitigation variant per point.
//
//   exact          e^{-iHt}, |F| from the exact OTOC
//   trotter_exact  weave circuits, |F| from the noiseless return amplitude
//   sampled        weave circuits, finite shots, no noise
//   noisy          weave circuits, CNOT depolarizing + readout error, finite shots
//   mitigated      noisy, plus TMEM / ZNE corrected variants

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "otocsim/errors.hpp"
#include "otocsim/ising.hpp"
#include "otocsim/mitigation.hpp"
#include "otocsim/noise.hpp"
#include "otocsim/otoc.hpp"
#include "otocsim/qsim.hpp"
#include "otocsim/trotter_weave.hpp"

namespace otocsim {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Pipeline { exact, trotter_exact, sampled, noisy, mitigated };
enum class MitigationOrder { tmem_then_zne, zne_then_tmem };
enum class Calibration { analytic, empirical };

constexpr std::string_view pipeline_name(Pipeline p) {
    switch (p) {
        case Pipeline::exact: return "exact";
        case Pipeline::trotter_exact: return "trotter_exact";
        case Pipeline::sampled: return "sampled";
        case Pipeline::noisy: return "noisy";
        case Pipeline::mitigated: return "mitigated";
    }
    return "?";
}

inline std::optional<Pipeline> parse_pipeline(std::string_view s) {
    for (auto p : {Pipeline::exact, Pipeline::trotter_exact, Pipeline::sampled, Pipeline::noisy, Pipeline::mitigated}) {
        if (pipeline_name(p) == s) {
            return p;
        }
    }
    return std::nullopt;
}

constexpr std::string_view order_name(MitigationOrder o) {
    return o == MitigationOrder::tmem_then_zne ? "tmem_then_zne" : "zne_then_tmem";
}

struct MitigationSettings {
    bool tmem = true;
    bool zne = true;
    MitigationOrder order = MitigationOrder::tmem_then_zne;
};

struct ExperimentConfig {
    std::string name = "surface";
    // "integrable", "chaotic" or "custom".
    std::string regime_label = "integrable";
    IsingParams params = regime_preset(Regime::integrable, 4).params;
    WeaveSchedule schedule;
    Pipeline pipeline = Pipeline::exact;
    ReferenceState state = ReferenceState::zeros;
    Probe probe = Probe::X;
    std::uint64_t shots = 8192;
    NoiseModel noise = NoiseModel::calibrated(4);
    Calibration calibration = Calibration::analytic;
    std::uint64_t calibration_shots = 8192;
    MitigationSettings mitigation;
    std::uint64_t seed = 1;
    std::string output_dir;
};

inline bool uses_circuits(Pipeline p) {
    return p != Pipeline::exact;
}

inline bool uses_noise(Pipeline p) {
    return p == Pipeline::noisy || p == Pipeline::mitigated;
}

// The fixed-node phase is only known for X_1 probed by X_j on |0...0>.
inline bool fixed_node_applicable(const ExperimentConfig &c) {
    return c.state == ReferenceState::zeros && c.probe == Probe::X;
}

inline void validate(const ExperimentConfig &c) {
    validate(c.params);
    validate(c.params, c.schedule);
    if (c.shots < 1) {
        throw ConfigError("shots", "must be >= 1");
    }
    if (uses_circuits(c.pipeline) && !fixed_node_applicable(c)) {
        throw ConfigError("state", "circuit pipelines measure X_1 / X_j on |0...0> only; use pipeline exact");
    }
    if (c.pipeline == Pipeline::exact && c.params.n > kMaxOtocSites) {
        throw CapacityError("exact pipeline limited to n <= " + std::to_string(kMaxOtocSites));
    }
    if (uses_noise(c.pipeline)) {
        if (c.params.n > static_cast<int>(kMaxDensityQubits)) {
            throw CapacityError(
                "noisy pipelines limited to n <= " + std::to_string(kMaxDensityQubits) + " (density matrix)");
        }
        if (c.noise.n_qubits != static_cast<std::size_t>(c.params.n)) {
            throw ConfigError("noise", "noise model width does not match n");
        }
        c.noise.validate();
        if (c.calibration_shots < 1) {
            throw ConfigError("noise.calibration_shots", "must be >= 1");
        }
    }
}

struct SurfacePoint {
    int j = 1;
    int ell = 0;
    double t = 0.0;
    std::optional<double> C_raw, C_tmem, C_zne, C_corr, C_exact, F_abs, F_phase;
};

enum class Column { C_raw, C_tmem, C_zne, C_corr, C_exact, F_abs, F_phase };

inline constexpr Column kAllColumns[] = {
    Column::C_raw, Column::C_tmem, Column::C_zne, Column::C_corr, Column::C_exact, Column::F_abs, Column::F_phase};

constexpr std::string_view column_name(Column c) {
    switch (c) {
        case Column::C_raw: return "C_raw";
        case Column::C_tmem: return "C_tmem";
        case Column::C_zne: return "C_zne";
        case Column::C_corr: return "C_corr";
        case Column::C_exact: return "C_exact";
        case Column::F_abs: return "F_abs";
        case Column::F_phase: return "F_phase";
    }
    return "?";
}

inline std::optional<Column> parse_column(std::string_view s) {
    for (auto c : kAllColumns) {
        if (column_name(c) == s) {
            return c;
        }
    }
    return std::nullopt;
}

inline std::optional<double> &column_value(SurfacePoint &p, Column c) {
    switch (c) {
        case Column::C_raw: return p.C_raw;
        case Column::C_tmem: return p.C_tmem;
        case Column::C_zne: return p.C_zne;
        case Column::C_corr: return p.C_corr;
        case Column::C_exact: return p.C_exact;
        case Column::F_abs: return p.F_abs;
        case Column::F_phase: return p.F_phase;
    }
    throw ConfigError("column", "unknown column");
}

inline const std::optional<double> &column_value(const SurfacePoint &p, Column c) {
    return column_value(const_cast<SurfacePoint &>(p), c);
}

struct SurfaceDiagnostics {
    std::optional<double> tmem_condition_number;
    int tmem_max_iterations = 0;
    bool tmem_all_converged = true;
    int zne_projections = 0;
    // max |C_corr(configured order) - C_corr(other order)| over the grid.
    std::optional<double> order_difference;
};

struct SpreadSurface {
    ExperimentConfig config;
    int n = 0;
    int ell_max = 0;
    // Row-major over (j, ell): index (j - 1) * (ell_max + 1) + ell.
    std::vector<SurfacePoint> points;
    SurfaceDiagnostics diagnostics;

    const SurfacePoint &at(int j, int ell) const {
        if (j < 1 || j > n || ell < 0 || ell > ell_max) {
            throw IndexOutOfRangeError("surface point (" + std::to_string(j) + ", " + std::to_string(ell) + ")");
        }
        return points[static_cast<std::size_t>((j - 1) * (ell_max + 1) + ell)];
    }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent of evaluation order and worker count.
inline std::uint64_t point_seed(std::uint64_t seed, int j, int ell, std::uint64_t stream) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ static_cast<std::uint64_t>(j));
    h = splitmix64(h ^ (static_cast<std::uint64_t>(ell) << 20));
    return splitmix64(h ^ (stream << 40));
}

struct ColumnStats {
    double tmem_condition = 0.0;
    int tmem_iterations = 0;
    bool tmem_converged = true;
    int zne_projections = 0;
    double order_difference = 0.0;
};

class SurfaceBuilder {
   public:
    explicit SurfaceBuilder(const ExperimentConfig &c) : config_(c) {
        validate(c);
        const auto &p = c.params;
        if (p.n <= kMaxOtocSites) {
            exact_.emplace(p);
        }
        if (uses_circuits(c.pipeline)) {
            weave_ = weave_operators(p, c.schedule);
        }
        if (c.pipeline == Pipeline::mitigated && c.mitigation.tmem) {
            transition_ = c.calibration == Calibration::analytic
                              ? build_confusion_matrix(c.noise)
                              : estimate_confusion_matrix(c.noise, c.calibration_shots, splitmix64(c.seed ^ 0xca11b8ULL));
        }
    }

    // Fills every j for one time index.
    ColumnStats evaluate_column(int ell, std::vector<SurfacePoint> &points) const {
        const auto &c = config_;
        const auto &p = c.params;
        const double t = ell * c.schedule.tau;
        ColumnStats stats;

        std::optional<Eigen::MatrixXcd> u_exact;
        if (exact_) {
            u_exact = exact_->unitary(t);
        }
        std::optional<Circuit> u_weave;
        if (uses_circuits(c.pipeline)) {
            u_weave = weave_circuit(weave_, c.schedule, ell);
        }

        for (int j = 1; j <= p.n; ++j) {
            SurfacePoint &pt = points[static_cast<std::size_t>((j - 1) * (c.schedule.ell_max + 1) + ell)];
            pt.j = j;
            pt.ell = ell;
            pt.t = t;

            std::optional<complex> f_exact;
            if (u_exact) {
                f_exact = otoc_from_unitary(*u_exact, p.n, 1, j, c.state, c.probe);
                pt.C_exact = 2.0 - 2.0 * f_exact->real();
            }

            auto fixed_node = [&](double p_zero) {
                return fixed_node_commutator(std::min(1.0, fabs_from_return_probability(p_zero)), p, j, t);
            };

            if (c.pipeline == Pipeline::exact) {
                if (fixed_node_applicable(c)) {
                    const double f_abs = std::min(1.0, std::abs(*f_exact));
                    pt.F_abs = f_abs;
                    pt.F_phase = std::arg(classical_otoc(p, j, t));
                    pt.C_raw = fixed_node_commutator(f_abs, p, j, t);
                } else {
                    pt.F_abs = std::abs(*f_exact);
                    pt.F_phase = std::arg(*f_exact);
                }
                continue;
            }

            const Circuit circuit = fabs_measurement_circuit(*u_weave, 1, j);
            pt.F_phase = std::arg(classical_otoc(p, j, t));
            const std::uint64_t s1 = point_seed(c.seed, j, ell, 1);
            const std::uint64_t s3 = point_seed(c.seed, j, ell, 3);

            if (c.pipeline == Pipeline::trotter_exact || c.pipeline == Pipeline::sampled) {
                const auto dist = measurement_distribution(apply_circuit(StateVector(circuit.n_qubits()), circuit));
                const double p_zero =
                    c.pipeline == Pipeline::trotter_exact ? dist[0] : sample_counts(dist, c.shots, s1).to_distribution()[0];
                pt.F_abs = std::min(1.0, fabs_from_return_probability(p_zero));
                pt.C_raw = fixed_node(p_zero);
                continue;
            }

            const auto p1 = sample_counts(simulate_noisy(circuit, c.noise), c.shots, s1).to_distribution();
            pt.F_abs = std::min(1.0, fabs_from_return_probability(p1[0]));
            pt.C_raw = fixed_node(p1[0]);
            if (c.pipeline != Pipeline::mitigated) {
                continue;
            }

            std::optional<BitstringDistribution> p3;
            if (c.mitigation.zne) {
                p3 = sample_counts(simulate_noisy(fold_cnots(circuit, 3), c.noise), c.shots, s3).to_distribution();
                const auto raw = zne_extrapolate(p1, *p3);
                if (std::any_of(raw.begin(), raw.end(), [](double v) { return v < 0.0 || v > 1.0; })) {
                    ++stats.zne_projections;
                }
                pt.C_zne = fixed_node(zne_correct(p1, *p3)[0]);
            }
            auto tmem = [&](const BitstringDistribution &d) {
                auto r = tmem_correct(*transition_, d);
                stats.tmem_condition = r.condition_number;
                stats.tmem_iterations = std::max(stats.tmem_iterations, r.iterations);
                stats.tmem_converged = stats.tmem_converged && r.converged;
                return r.corrected;
            };
            if (c.mitigation.tmem) {
                const auto p1_tmem = tmem(p1);
                pt.C_tmem = fixed_node(p1_tmem[0]);
                if (c.mitigation.zne) {
                    const auto p3_tmem = tmem(*p3);
                    const double a = fixed_node(zne_correct(p1_tmem, p3_tmem)[0]);
                    const double b = fixed_node(tmem(zne_correct(p1, *p3))[0]);
                    pt.C_corr = c.mitigation.order == MitigationOrder::tmem_then_zne ? a : b;
                    stats.order_difference = std::max(stats.order_difference, std::abs(a - b));
                }
            }
        }
        return stats;
    }

   private:
    const ExperimentConfig &config_;
    std::optional<ExactOtoc> exact_;
    std::vector<Circuit> weave_;
    std::optional<Eigen::MatrixXd> transition_;
};

}  // namespace detail

// Evaluates the grid j = 1..n, ell = 0..ell_max. Time indices are distributed
// over `jobs` worker threads; every point writes only its own slot.
inline SpreadSurface build_surface(const ExperimentConfig &config, unsigned jobs = 1) {
    detail::SurfaceBuilder builder(config);
    SpreadSurface s;
    s.config = config;
    s.n = config.params.n;
    s.ell_max = config.schedule.ell_max;
    s.points.resize(static_cast<std::size_t>(s.n * (s.ell_max + 1)));

    const int columns = s.ell_max + 1;
    std::vector<detail::ColumnStats> stats(static_cast<std::size_t>(columns));
    jobs = std::max(1u, std::min(jobs, static_cast<unsigned>(columns)));
    if (jobs == 1) {
        for (int ell = 0; ell < columns; ++ell) {
            stats[static_cast<std::size_t>(ell)] = builder.evaluate_column(ell, s.points);
        }
    } else {
        std::vector<std::exception_ptr> errors(jobs);
        {
            std::vector<std::jthread> workers;
            for (unsigned w = 0; w < jobs; ++w) {
                workers.emplace_back([&, w] {
                    try {
                        for (int ell = static_cast<int>(w); ell < columns; ell += static_cast<int>(jobs)) {
                            stats[static_cast<std::size_t>(ell)] = builder.evaluate_column(ell, s.points);
                        }
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
        }
        for (const auto &e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    if (config.pipeline == Pipeline::mitigated) {
        auto &d = s.diagnostics;
        for (const auto &st : stats) {
            d.tmem_max_iterations = std::max(d.tmem_max_iterations, st.tmem_iterations);
            d.tmem_all_converged = d.tmem_all_converged && st.tmem_converged;
            d.zne_projections += st.zne_projections;
        }
        if (config.mitigation.tmem) {
            d.tmem_condition_number = stats.front().tmem_condition;
        }
        if (config.mitigation.tmem && config.mitigation.zne) {
            double m = 0.0;
            for (const auto &st : stats) {
                m = std::max(m, st.order_difference);
            }
            d.order_difference = m;
        }
    }
    return s;
}

}  // namespace otocsim
