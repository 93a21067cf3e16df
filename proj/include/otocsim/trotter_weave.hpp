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

// Trotter circuits for the Ising chain and the k-weave scheduler.
//
// A k-weave is the set {U(tau), U(2 tau), ..., U(k tau)} of symmetric Trotter
// steps. Time index ell is reached with one shift U((ell mod k) tau) plus
// floor(ell / k) applications of the cell U(k tau), so circuit depth grows as
// ell / k instead of ell.
//
// When |2 J k tau| = pi/2 the cell is "magic": each ZZ rotation becomes
// S_i S_j CZ_ij (up to phase), costing one CNOT instead of two.

#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "otocsim/errors.hpp"
#include "otocsim/ising.hpp"
#include "otocsim/qsim.hpp"

namespace otocsim {

inline constexpr double kMagicTolerance = 1e-9;

struct WeaveSchedule {
    double tau = 0.06;
    int k = 1;
    int ell_max = 24;
    bool magic = false;
    // Accept a magic schedule whose cell angle is not +-pi/2. The cell still uses
    // S S CZ, i.e. RZZ(+-pi/2), in place of RZZ(2 J k tau).
    bool magic_override = false;
    // Apply the cells before the shift instead of after it.
    bool cell_first = false;
};

struct WeaveDecomposition {
    int cell_applications = 0;
    int shift_duration_steps = 0;

    bool operator==(const WeaveDecomposition &) const = default;
};

inline WeaveDecomposition decompose_time_index(int ell, int k) {
    if (k < 1) {
        throw ConfigError("k", "weave modulus must be >= 1");
    }
    if (ell < 0) {
        throw IndexOutOfRangeError("time index must be non-negative");
    }
    return {(ell - ell % k) / k, ell % k};
}

// ZZ angle of the cell operator, 2 J k tau.
inline double cell_zz_angle(const IsingParams &p, const WeaveSchedule &s) {
    return 2.0 * p.J * s.k * s.tau;
}

inline bool magic_constraint_holds(const IsingParams &p, const WeaveSchedule &s) {
    return std::abs(std::abs(cell_zz_angle(p, s)) - std::numbers::pi / 2) <= kMagicTolerance;
}

// Time resolution that makes the k-cell magic: k tau = pi / (4 |J|).
inline double magic_tau(const IsingParams &p, int k) {
    if (p.J == 0.0) {
        throw ConfigError("tau", "magic cell undefined for J = 0");
    }
    return std::numbers::pi / (4.0 * std::abs(p.J) * k);
}

inline void validate(const IsingParams &p, const WeaveSchedule &s) {
    if (!(s.tau > 0.0) || !std::isfinite(s.tau)) {
        throw ConfigError("tau", "must be a positive finite number");
    }
    if (s.k < 1) {
        throw ConfigError("k", "weave modulus must be >= 1");
    }
    if (s.ell_max < 0) {
        throw ConfigError("ell_max", "must be >= 0");
    }
    if (s.magic && p.J == 0.0) {
        throw ConfigError("magic", "magic cell undefined for J = 0");
    }
    if (s.magic && !s.magic_override && !magic_constraint_holds(p, s)) {
        throw ConfigError(
            "magic", "magic cell requires |2 J k tau| = pi/2 (k tau = " + std::to_string(s.k * s.tau) +
                         ", need " + std::to_string(std::numbers::pi / (4.0 * std::abs(p.J))) +
                         "); set magic_override to run anyway");
    }
}

// CNOT_ij PZ(theta)_j CNOT_ij = e^{i theta/2} RZZ(theta)_ij. The phase gate sits
// on the target: on the control it would commute through both CNOTs.
inline Circuit rzz_decomposition(double theta, std::size_t i, std::size_t j) {
    if (i == j) {
        throw MalformedGateError("rzz_decomposition needs distinct qubits");
    }
    Circuit c(std::max(i, j) + 1);
    c.push(Gate::cnot(i, j));
    c.push(Gate::pz(j, theta));
    c.push(Gate::cnot(i, j));
    return c;
}

// S_i S_j CZ_ij = e^{i pi/4} RZZ(pi/2)_ij for sign = +1, daggered for sign = -1.
// CZ is emitted as H_j CNOT_ij H_j.
inline Circuit magic_rzz(std::size_t i, std::size_t j, int sign) {
    if (i == j) {
        throw MalformedGateError("magic_rzz needs distinct qubits");
    }
    if (sign != 1 && sign != -1) {
        throw ConfigError("sign", "must be +1 or -1");
    }
    const GateKind phase = sign > 0 ? GateKind::S : GateKind::SDG;
    Circuit c(std::max(i, j) + 1);
    c.push(Gate::single(phase, i));
    c.push(Gate::single(phase, j));
    c.push(Gate::single(GateKind::H, j));
    c.push(Gate::cnot(i, j));
    c.push(Gate::single(GateKind::H, j));
    return c;
}

namespace detail {

// magic_sign = 0 selects the two-CNOT ZZ decomposition.
inline Circuit trotter_step_impl(const IsingParams &p, double dt, int magic_sign) {
    const auto n = static_cast<std::size_t>(p.n);
    Circuit c(n);
    for (std::size_t q = 0; q < n; ++q) {
        c.push(Gate::rx(q, p.B_x * dt));
    }
    for (std::size_t q = 0; q + 1 < n; ++q) {
        c.append(magic_sign == 0 ? rzz_decomposition(2.0 * p.J * dt, q, q + 1) : magic_rzz(q, q + 1, magic_sign));
    }
    for (std::size_t q = 0; q < n; ++q) {
        c.push(Gate::pz(q, 2.0 * p.B_z * dt));
    }
    for (std::size_t q = 0; q < n; ++q) {
        c.push(Gate::rx(q, p.B_x * dt));
    }
    return c;
}

}  // namespace detail

// Symmetric step RX(B_x dt) . RZZ(2J dt) . PZ(2 B_z dt) . RX(B_x dt) approximating e^{-iH dt}.
inline Circuit trotter_step(const IsingParams &p, double dt) {
    validate(p);
    if (!std::isfinite(dt)) {
        throw ConfigError("dt", "must be finite");
    }
    return detail::trotter_step_impl(p, dt, 0);
}

// Element m-1 is U(m tau), m = 1..k.
inline std::vector<Circuit> weave_operators(const IsingParams &p, const WeaveSchedule &s) {
    validate(p);
    validate(p, s);
    std::vector<Circuit> ops;
    ops.reserve(static_cast<std::size_t>(s.k));
    for (int m = 1; m <= s.k; ++m) {
        const double dt = m * s.tau;
        int magic_sign = 0;
        if (m == s.k && s.magic) {
            magic_sign = cell_zz_angle(p, s) > 0 ? 1 : -1;
        }
        ops.push_back(detail::trotter_step_impl(p, dt, magic_sign));
    }
    return ops;
}

// Builds the circuit for time index ell from precomputed weave operators.
inline Circuit weave_circuit(const std::vector<Circuit> &ops, const WeaveSchedule &s, int ell) {
    if (ell < 0 || ell > s.ell_max) {
        throw IndexOutOfRangeError(
            "time index " + std::to_string(ell) + " outside 0.." + std::to_string(s.ell_max));
    }
    const auto parts = decompose_time_index(ell, s.k);
    Circuit c(ops.front().n_qubits());
    auto add_shift = [&] {
        if (parts.shift_duration_steps > 0) {
            c.append(ops[static_cast<std::size_t>(parts.shift_duration_steps - 1)]);
        }
    };
    if (!s.cell_first) {
        add_shift();
    }
    for (int a = 0; a < parts.cell_applications; ++a) {
        c.append(ops.back());
    }
    if (s.cell_first) {
        add_shift();
    }
    return c;
}

inline Circuit weave_circuit(const IsingParams &p, const WeaveSchedule &s, int ell) {
    return weave_circuit(weave_operators(p, s), s, ell);
}

}  // namespace otocsim
