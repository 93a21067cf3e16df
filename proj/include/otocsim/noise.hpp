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

// Device noise: two-qubit depolarizing after every CNOT plus a per-qubit
// readout confusion matrix, and finite-shot sampling.

#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "otocsim/errors.hpp"
#include "otocsim/qsim.hpp"

namespace otocsim {

// Calibration of the 4-qubit chain the defaults are modelled on: averaged SPAM
// error per qubit and randomized-benchmarking CNOT error per edge.
inline constexpr std::array<double, 4> kCalibratedSpamError = {0.043, 0.015, 0.017, 0.017};
inline constexpr std::array<double, 3> kCalibratedCnotError = {7.67e-3, 7.00e-3, 7.68e-3};

struct NoiseModel {
    std::size_t n_qubits = 4;
    // Per qubit: T(1|0) is P(read 1 | prepared 0), T(0|1) is P(read 0 | prepared 1).
    std::vector<double> t1_given_0;
    std::vector<double> t0_given_1;
    // Depolarizing strength for CNOTs on an unordered qubit pair; pairs absent
    // from the map use default_cnot_error.
    std::map<std::pair<std::size_t, std::size_t>, double> cnot_errors;
    double default_cnot_error = 0.0;
    std::uint64_t seed = 0;

    static NoiseModel ideal(std::size_t n) {
        NoiseModel m;
        m.n_qubits = n;
        m.t1_given_0.assign(n, 0.0);
        m.t0_given_1.assign(n, 0.0);
        return m;
    }

    // Calibrated defaults. n = 4 reproduces the table exactly; other widths use
    // the table means uniformly.
    static NoiseModel calibrated(std::size_t n) {
        NoiseModel m = ideal(n);
        if (n == kCalibratedSpamError.size()) {
            for (std::size_t q = 0; q < n; ++q) {
                m.t1_given_0[q] = m.t0_given_1[q] = kCalibratedSpamError[q];
            }
            for (std::size_t e = 0; e < kCalibratedCnotError.size(); ++e) {
                m.cnot_errors[{e, e + 1}] = kCalibratedCnotError[e];
            }
            m.default_cnot_error = kCalibratedCnotError[0];
        } else {
            double spam = 0, cnot = 0;
            for (double v : kCalibratedSpamError) spam += v;
            for (double v : kCalibratedCnotError) cnot += v;
            spam /= kCalibratedSpamError.size();
            cnot /= kCalibratedCnotError.size();
            m.t1_given_0.assign(n, spam);
            m.t0_given_1.assign(n, spam);
            m.default_cnot_error = cnot;
        }
        return m;
    }

    double cnot_error(std::size_t a, std::size_t b) const {
        const auto it = cnot_errors.find({std::min(a, b), std::max(a, b)});
        return it == cnot_errors.end() ? default_cnot_error : it->second;
    }

    // Same error on every CNOT.
    void set_uniform_cnot_error(double p) {
        cnot_errors.clear();
        default_cnot_error = p;
    }

    // Column-stochastic [[1 - T(1|0), T(0|1)], [T(1|0), 1 - T(0|1)]], rows = observed.
    Eigen::Matrix2d confusion(std::size_t q) const {
        Eigen::Matrix2d m;
        m << 1.0 - t1_given_0[q], t0_given_1[q], t1_given_0[q], 1.0 - t0_given_1[q];
        return m;
    }

    void validate() const {
        if (t1_given_0.size() != n_qubits || t0_given_1.size() != n_qubits) {
            throw ConfigError("noise", "readout error lists must have one entry per qubit");
        }
        auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
        for (std::size_t q = 0; q < n_qubits; ++q) {
            if (!in_unit(t1_given_0[q]) || !in_unit(t0_given_1[q])) {
                throw ConfigError("noise.spam", "readout error probabilities must lie in [0, 1]");
            }
        }
        if (!in_unit(default_cnot_error)) {
            throw ConfigError("noise.cnot_error", "must lie in [0, 1]");
        }
        for (const auto &[edge, p] : cnot_errors) {
            if (!in_unit(p)) {
                throw ConfigError("noise.cnot_error", "must lie in [0, 1]");
            }
            if (edge.second >= n_qubits) {
                throw ConfigError("noise.cnot_error", "edge outside the register");
            }
        }
    }
};

// rho -> (1 - 15p/16) rho + (p/16) sum_{P != II} P rho P
//      = (1 - p) rho + p (I/4 (x) tr_ab rho).
inline std::vector<Eigen::MatrixXcd> depolarizing_kraus(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidChannelError("depolarizing strength must lie in [0, 1]");
    }
    std::array<Eigen::Matrix2cd, 4> paulis;
    paulis[0] = Eigen::Matrix2cd::Identity();
    paulis[1] = gate_matrix(Gate::single(GateKind::X, 0));
    paulis[2] = gate_matrix(Gate::single(GateKind::Y, 0));
    paulis[3] = gate_matrix(Gate::single(GateKind::Z, 0));
    std::vector<Eigen::MatrixXcd> ks;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const double w = (a == 0 && b == 0) ? 1.0 - 15.0 * p / 16.0 : p / 16.0;
            Eigen::MatrixXcd k(4, 4);
            for (int r = 0; r < 4; ++r) {
                for (int c = 0; c < 4; ++c) {
                    k(r, c) = std::sqrt(w) * paulis[a](r / 2, c / 2) * paulis[b](r % 2, c % 2);
                }
            }
            ks.push_back(std::move(k));
        }
    }
    return ks;
}

// Same channel as depolarizing_kraus, applied through the partial-trace form in O(4^n).
inline void depolarize_pair_in_place(DensityMatrix &dm, std::size_t qa, std::size_t qb, double p) {
    if (p == 0.0) {
        return;
    }
    const std::size_t n = dm.n_qubits();
    const std::size_t d = dm.dim();
    const std::size_t ma = detail::bit_of(n, qa);
    const std::size_t mb = detail::bit_of(n, qb);
    const std::size_t mask = ma | mb;
    const std::array<std::size_t, 4> local = {0, mb, ma, mask};
    auto &e = dm.raw();
    for (std::size_t r0 = 0; r0 < d; ++r0) {
        if (r0 & mask) {
            continue;
        }
        for (std::size_t c0 = 0; c0 < d; ++c0) {
            if (c0 & mask) {
                continue;
            }
            complex reduced{};
            for (auto o : local) {
                reduced += e[(r0 | o) * d + (c0 | o)];
            }
            for (auto ro : local) {
                for (auto co : local) {
                    complex &v = e[(r0 | ro) * d + (c0 | co)];
                    v *= (1.0 - p);
                    if (ro == co) {
                        v += p * reduced / 4.0;
                    }
                }
            }
        }
    }
}

// Applies the tensor-product confusion matrix to an ideal distribution.
inline BitstringDistribution apply_readout_confusion(const NoiseModel &nm, BitstringDistribution d) {
    for (std::size_t q = 0; q < d.n_qubits; ++q) {
        const Eigen::Matrix2d m = nm.confusion(q);
        const std::size_t q_local[1] = {q};
        detail::apply_local<double>(std::span<double>(d.probabilities), d.n_qubits, q_local, m);
    }
    for (auto &p : d.probabilities) {
        p = std::max(0.0, p);
    }
    return d;
}

inline Eigen::MatrixXd build_confusion_matrix(const NoiseModel &nm) {
    nm.validate();
    Eigen::MatrixXd t = Eigen::MatrixXd::Ones(1, 1);
    for (std::size_t q = 0; q < nm.n_qubits; ++q) {
        const Eigen::Matrix2d m = nm.confusion(q);
        Eigen::MatrixXd next(t.rows() * 2, t.cols() * 2);
        for (Eigen::Index r = 0; r < t.rows(); ++r) {
            for (Eigen::Index c = 0; c < t.cols(); ++c) {
                next.block(2 * r, 2 * c, 2, 2) = t(r, c) * m;
            }
        }
        t = std::move(next);
    }
    return t;
}

// Density-matrix run from |0...0> with depolarizing noise after each CNOT and
// readout confusion on the final distribution. Single-qubit gates are noiseless.
inline BitstringDistribution simulate_noisy(const Circuit &c, const NoiseModel &nm) {
    if (c.n_qubits() > kMaxDensityQubits) {
        throw CapacityError(
            "noisy simulation limited to n <= " + std::to_string(kMaxDensityQubits) + ", got n=" +
            std::to_string(c.n_qubits()));
    }
    if (nm.n_qubits != c.n_qubits()) {
        throw ConfigError("noise", "noise model width does not match the circuit");
    }
    nm.validate();
    DensityMatrix dm = DensityMatrix::zeros(c.n_qubits());
    for (const auto &g : c.gates()) {
        dm.apply_in_place(g);
        if (g.kind == GateKind::CNOT) {
            depolarize_pair_in_place(dm, g.qubits[0], g.qubits[1], nm.cnot_error(g.qubits[0], g.qubits[1]));
        }
    }
    dm.symmetrize();
    return apply_readout_confusion(nm, measurement_distribution(dm));
}

struct ShotResult {
    std::size_t n_qubits = 0;
    std::uint64_t shots = 0;
    // Indexed by basis state x.
    std::vector<std::uint64_t> counts;

    BitstringDistribution to_distribution() const {
        BitstringDistribution d{n_qubits, std::vector<double>(counts.size())};
        for (std::size_t x = 0; x < counts.size(); ++x) {
            d.probabilities[x] = static_cast<double>(counts[x]) / static_cast<double>(shots);
        }
        return d;
    }

    std::map<std::string, std::uint64_t> by_bitstring() const {
        std::map<std::string, std::uint64_t> m;
        for (std::size_t x = 0; x < counts.size(); ++x) {
            if (counts[x] > 0) {
                m[bitstring(x, n_qubits)] = counts[x];
            }
        }
        return m;
    }
};

// Multinomial draw by sequential conditional binomials; deterministic in the seed.
inline ShotResult sample_counts(const BitstringDistribution &d, std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) {
        throw ConfigError("shots", "must be >= 1");
    }
    std::mt19937_64 rng(seed);
    ShotResult r{d.n_qubits, shots, std::vector<std::uint64_t>(d.probabilities.size(), 0)};
    std::uint64_t remaining = shots;
    double mass_left = 1.0;
    for (std::size_t x = 0; x < d.probabilities.size() && remaining > 0; ++x) {
        const double p = std::max(0.0, d.probabilities[x]);
        if (x + 1 == d.probabilities.size() || p >= mass_left) {
            r.counts[x] = remaining;
            remaining = 0;
            break;
        }
        const double cond = std::clamp(p / mass_left, 0.0, 1.0);
        std::binomial_distribution<std::uint64_t> draw(remaining, cond);
        r.counts[x] = draw(rng);
        remaining -= r.counts[x];
        mass_left -= p;
        if (mass_left <= 0.0) {
            break;
        }
    }
    if (remaining > 0) {
        // Rounding left probability mass unassigned; give it to the most likely outcome.
        const auto it = std::max_element(d.probabilities.begin(), d.probabilities.end());
        r.counts[static_cast<std::size_t>(it - d.probabilities.begin())] += remaining;
    }
    return r;
}

// Replaces every CNOT with m copies of itself (m odd, so the unitary is unchanged).
inline Circuit fold_cnots(const Circuit &c, int m) {
    if (m < 1 || m % 2 == 0) {
        throw ConfigError("m", "fold factor must be a positive odd integer, got " + std::to_string(m));
    }
    Circuit r(c.n_qubits());
    for (const auto &g : c.gates()) {
        const int copies = g.kind == GateKind::CNOT ? m : 1;
        for (int i = 0; i < copies; ++i) {
            r.push(g);
        }
    }
    return r;
}

// Estimates the confusion matrix column by column from finite-shot runs of the
// 2^n basis-state preparations.
inline Eigen::MatrixXd estimate_confusion_matrix(const NoiseModel &nm, std::uint64_t shots, std::uint64_t seed) {
    nm.validate();
    const std::size_t d = std::size_t{1} << nm.n_qubits;
    Eigen::MatrixXd t(d, d);
    std::seed_seq seq{seed, std::uint64_t{0x63616c6962}};
    std::mt19937_64 seeder(seq);
    for (std::size_t x = 0; x < d; ++x) {
        BitstringDistribution ideal{nm.n_qubits, std::vector<double>(d, 0.0)};
        ideal.probabilities[x] = 1.0;
        const auto noisy = apply_readout_confusion(nm, ideal);
        const auto est = sample_counts(noisy, shots, seeder()).to_distribution();
        for (std::size_t y = 0; y < d; ++y) {
            t(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) = est[y];
        }
    }
    return t;
}

}  // namespace otocsim
