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

// Out-of-time-ordered correlators F_ij(t) = tr[rho X_i(t) V_j X_i(t) V_j] with
// X_i(t) = U^dagger X_i U, and the squared commutator C_ij = 2 - 2 Re F_ij.
//
// The fixed-node OTOC keeps a measured |F_ij| and borrows the phase of the
// classical-chain OTOC F^0_ij, giving C_ij = 2 - 2 |F_ij| cos(arg F^0_ij).

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <optional>
#include <string_view>

#include "otocsim/errors.hpp"
#include "otocsim/ising.hpp"
#include "otocsim/qsim.hpp"

namespace otocsim {

enum class ReferenceState { zeros, plus, maximally_mixed };
enum class Probe { X, Y };

constexpr std::string_view state_name(ReferenceState s) {
    switch (s) {
        case ReferenceState::zeros: return "zeros";
        case ReferenceState::plus: return "plus";
        case ReferenceState::maximally_mixed: return "maximally_mixed";
    }
    return "?";
}

inline std::optional<ReferenceState> parse_state(std::string_view s) {
    if (s == "zeros") return ReferenceState::zeros;
    if (s == "plus") return ReferenceState::plus;
    if (s == "maximally_mixed") return ReferenceState::maximally_mixed;
    return std::nullopt;
}

constexpr std::string_view probe_name(Probe p) {
    return p == Probe::X ? "X" : "Y";
}

inline std::optional<Probe> parse_probe(std::string_view s) {
    if (s == "X") return Probe::X;
    if (s == "Y") return Probe::Y;
    return std::nullopt;
}

inline constexpr int kMaxOtocSites = 10;

namespace detail {

// Matrix element P[row, row ^ mask] of a single-qubit X or Y on the flipped qubit.
inline complex pauli_entry(Probe probe, bool row_bit_set) {
    if (probe == Probe::X) {
        return 1.0;
    }
    return row_bit_set ? complex{0.0, 1.0} : complex{0.0, -1.0};
}

inline Eigen::VectorXcd apply_pauli(const Eigen::VectorXcd &v, std::size_t mask, Probe probe) {
    Eigen::VectorXcd out(v.size());
    for (Eigen::Index r = 0; r < v.size(); ++r) {
        const auto ru = static_cast<std::size_t>(r);
        out(r) = pauli_entry(probe, (ru & mask) != 0) * v(static_cast<Eigen::Index>(ru ^ mask));
    }
    return out;
}

}  // namespace detail

// OTOC with X_i(t) = u^dagger X_i u for an arbitrary n-qubit unitary u.
inline complex otoc_from_unitary(
    const Eigen::MatrixXcd &u, int n, int i, int j, ReferenceState state, Probe probe = Probe::X) {
    const auto nq = static_cast<std::size_t>(n);
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << nq);
    if (u.rows() != d || u.cols() != d) {
        throw ConfigError("unitary", "dimension does not match the site count");
    }
    if (i < 1 || i > n || j < 1 || j > n) {
        throw IndexOutOfRangeError("site outside 1.." + std::to_string(n));
    }
    const std::size_t mi = detail::bit_of(nq, static_cast<std::size_t>(i - 1));
    const std::size_t mj = detail::bit_of(nq, static_cast<std::size_t>(j - 1));

    if (state == ReferenceState::maximally_mixed) {
        // A = X_i(t); F = tr(A V A V) / d.
        Eigen::MatrixXcd xu(d, d);
        for (Eigen::Index r = 0; r < d; ++r) {
            xu.row(r) = u.row(static_cast<Eigen::Index>(static_cast<std::size_t>(r) ^ mi));
        }
        const Eigen::MatrixXcd a = u.adjoint() * xu;
        complex f{};
        for (Eigen::Index c = 0; c < d; ++c) {
            const auto cu = static_cast<std::size_t>(c);
            const complex vc = detail::pauli_entry(probe, ((cu ^ mj) & mj) != 0);
            for (Eigen::Index r = 0; r < d; ++r) {
                const auto ru = static_cast<std::size_t>(r);
                // (V A V)[r, c] = V[r, r^m] A[r^m, c^m] V[c^m, c]
                const complex vav = detail::pauli_entry(probe, (ru & mj) != 0) *
                                    a(static_cast<Eigen::Index>(ru ^ mj), static_cast<Eigen::Index>(cu ^ mj)) * vc;
                f += a(c, r) * vav;
            }
        }
        return f / static_cast<double>(d);
    }

    Eigen::VectorXcd psi;
    if (state == ReferenceState::zeros) {
        psi = Eigen::VectorXcd::Zero(d);
        psi(0) = 1.0;
    } else {
        psi = Eigen::VectorXcd::Constant(d, complex{1.0 / std::sqrt(static_cast<double>(d)), 0.0});
    }
    const Eigen::MatrixXcd ud = u.adjoint();
    Eigen::VectorXcd v = psi;
    for (int rep = 0; rep < 2; ++rep) {
        v = detail::apply_pauli(v, mj, probe);
        v = u * v;
        v = detail::apply_pauli(v, mi, Probe::X);
        v = ud * v;
    }
    return psi.dot(v);
}

// Exact OTOC evaluator for one Hamiltonian; the eigendecomposition is reused across t.
class ExactOtoc {
   public:
    explicit ExactOtoc(const IsingParams &p) : params_(p), propagator_(checked_hamiltonian(p)) {
    }

    const IsingParams &params() const {
        return params_;
    }

    Eigen::MatrixXcd unitary(double t) const {
        return propagator_.unitary(t);
    }

    complex otoc(int i, int j, double t, ReferenceState state, Probe probe = Probe::X) const {
        return otoc_from_unitary(unitary(t), params_.n, i, j, state, probe);
    }

    double commutator(int i, int j, double t, ReferenceState state, Probe probe = Probe::X) const {
        return 2.0 - 2.0 * otoc(i, j, t, state, probe).real();
    }

   private:
    static Eigen::MatrixXd checked_hamiltonian(const IsingParams &p) {
        validate(p);
        if (p.n > kMaxOtocSites) {
            throw CapacityError(
                "exact OTOC limited to n <= " + std::to_string(kMaxOtocSites) + ", got n=" + std::to_string(p.n));
        }
        return build_hamiltonian(p);
    }

    IsingParams params_;
    ExactPropagator propagator_;
};

inline complex otoc_exact(const IsingParams &p, int i, int j, double t, ReferenceState state) {
    return ExactOtoc(p).otoc(i, j, t, state);
}

inline double commutator_exact(const IsingParams &p, int i, int j, double t, ReferenceState state) {
    return ExactOtoc(p).commutator(i, j, t, state);
}

// tr(rho |[X_i(t), Y_j]|^2) on |0...0>.
inline double commutator_xy_exact(const IsingParams &p, int i, int j, double t) {
    return ExactOtoc(p).commutator(i, j, t, ReferenceState::zeros, Probe::Y);
}

// Gates in time order: X_j, U, X_i, U^dagger, X_j, U, X_i, U^dagger. Acting on
// |0...0>, the final all-zeros amplitude is F_ij with U standing in for e^{-iHt},
// so the return probability is |F_ij|^2. Sites are 1-based.
inline Circuit fabs_measurement_circuit(const Circuit &u, int i, int j) {
    const auto n = static_cast<int>(u.n_qubits());
    if (i < 1 || i > n || j < 1 || j > n) {
        throw IndexOutOfRangeError("site outside 1.." + std::to_string(n));
    }
    const auto qi = static_cast<std::size_t>(i - 1);
    const auto qj = static_cast<std::size_t>(j - 1);
    const Circuit ud = dagger(u);
    Circuit c(u.n_qubits());
    for (int rep = 0; rep < 2; ++rep) {
        c.push(Gate::single(GateKind::X, qj));
        c.append(u);
        c.push(Gate::single(GateKind::X, qi));
        c.append(ud);
    }
    return c;
}

inline double fabs_from_return_probability(double p_zero) {
    return std::sqrt(std::max(0.0, p_zero));
}

inline void check_modulus(double f_abs) {
    if (!(f_abs >= 0.0 && f_abs <= 1.0 + 1e-9)) {
        throw ConfigError("F_abs", "OTOC modulus must lie in [0, 1], got " + std::to_string(f_abs));
    }
}

// |F| combined with arg F^0_{1j}(t).
inline complex fixed_node_otoc(double f_abs, const IsingParams &p, int j, double t) {
    check_modulus(f_abs);
    return std::polar(f_abs, std::arg(classical_otoc(p, j, t)));
}

inline double fixed_node_commutator(double f_abs, const IsingParams &p, int j, double t) {
    check_modulus(f_abs);
    return 2.0 - 2.0 * f_abs * std::cos(std::arg(classical_otoc(p, j, t)));
}

}  // namespace otocsim
