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

// Dense statevector and density-matrix simulation.
//
// Bit ordering: qubit 0 is the leftmost character of a bitstring and the most
// significant bit of the vector index, so |q0 q1 ... q_{n-1}> lives at index
// q0 * 2^{n-1} + ... + q_{n-1}.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "otocsim/errors.hpp"

namespace otocsim {

using complex = std::complex<double>;

inline constexpr std::size_t kMaxStateQubits = 14;

enum class GateKind { RX, PZ, RZZ, CNOT, CZ, S, SDG, H, X, Y, Z };

constexpr std::string_view gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::RX: return "RX";
        case GateKind::PZ: return "PZ";
        case GateKind::RZZ: return "RZZ";
        case GateKind::CNOT: return "CNOT";
        case GateKind::CZ: return "CZ";
        case GateKind::S: return "S";
        case GateKind::SDG: return "SDG";
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
    }
    return "?";
}

constexpr bool gate_takes_angle(GateKind kind) {
    return kind == GateKind::RX || kind == GateKind::PZ || kind == GateKind::RZZ;
}

constexpr std::size_t gate_arity(GateKind kind) {
    return (kind == GateKind::RZZ || kind == GateKind::CNOT || kind == GateKind::CZ) ? 2 : 1;
}

struct Gate {
    GateKind kind;
    std::vector<std::size_t> qubits;
    std::optional<double> angle;

    static Gate rx(std::size_t q, double theta) {
        return {GateKind::RX, {q}, theta};
    }
    static Gate pz(std::size_t q, double phi) {
        return {GateKind::PZ, {q}, phi};
    }
    static Gate rzz(std::size_t a, std::size_t b, double theta) {
        return {GateKind::RZZ, {a, b}, theta};
    }
    static Gate cnot(std::size_t control, std::size_t target) {
        return {GateKind::CNOT, {control, target}, std::nullopt};
    }
    static Gate cz(std::size_t a, std::size_t b) {
        return {GateKind::CZ, {a, b}, std::nullopt};
    }
    static Gate single(GateKind kind, std::size_t q) {
        return {kind, {q}, std::nullopt};
    }

    bool operator==(const Gate &) const = default;
};

// Throws MalformedGateError unless arity, angle presence and index distinctness hold.
inline void check_well_formed(const Gate &g) {
    const std::string name(gate_name(g.kind));
    if (g.qubits.size() != gate_arity(g.kind)) {
        throw MalformedGateError(
            name + " expects " + std::to_string(gate_arity(g.kind)) + " qubit(s), got " +
            std::to_string(g.qubits.size()));
    }
    if (gate_takes_angle(g.kind) && !g.angle.has_value()) {
        throw MalformedGateError(name + " requires an angle");
    }
    if (!gate_takes_angle(g.kind) && g.angle.has_value()) {
        throw MalformedGateError(name + " takes no angle");
    }
    if (g.qubits.size() == 2 && g.qubits[0] == g.qubits[1]) {
        throw MalformedGateError(name + " qubit indices must be distinct");
    }
}

inline Gate inverse(const Gate &g) {
    Gate r = g;
    switch (g.kind) {
        case GateKind::RX:
        case GateKind::PZ:
        case GateKind::RZZ:
            if (r.angle) {
                r.angle = -*r.angle;
            }
            break;
        case GateKind::S: r.kind = GateKind::SDG; break;
        case GateKind::SDG: r.kind = GateKind::S; break;
        default: break;
    }
    return r;
}

// 2x2 or 4x4 unitary. For two-qubit gates the first listed qubit is the high bit.
inline Eigen::MatrixXcd gate_matrix(const Gate &g) {
    check_well_formed(g);
    const complex I{0.0, 1.0};
    switch (g.kind) {
        case GateKind::RX: {
            const double h = *g.angle / 2;
            Eigen::Matrix2cd m;
            m << std::cos(h), -I * std::sin(h), -I * std::sin(h), std::cos(h);
            return m;
        }
        case GateKind::PZ: {
            Eigen::Matrix2cd m;
            m << 1, 0, 0, std::exp(I * *g.angle);
            return m;
        }
        case GateKind::RZZ: {
            const double h = *g.angle / 2;
            Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
            m(0, 0) = std::exp(-I * h);
            m(1, 1) = std::exp(I * h);
            m(2, 2) = std::exp(I * h);
            m(3, 3) = std::exp(-I * h);
            return m;
        }
        case GateKind::CNOT: {
            Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
            m(0, 0) = m(1, 1) = 1;
            m(2, 3) = m(3, 2) = 1;
            return m;
        }
        case GateKind::CZ: {
            Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
            m(3, 3) = -1;
            return m;
        }
        case GateKind::S: {
            Eigen::Matrix2cd m;
            m << 1, 0, 0, I;
            return m;
        }
        case GateKind::SDG: {
            Eigen::Matrix2cd m;
            m << 1, 0, 0, -I;
            return m;
        }
        case GateKind::H: {
            const double r = std::numbers::sqrt2 / 2;
            Eigen::Matrix2cd m;
            m << r, r, r, -r;
            return m;
        }
        case GateKind::X: {
            Eigen::Matrix2cd m;
            m << 0, 1, 1, 0;
            return m;
        }
        case GateKind::Y: {
            Eigen::Matrix2cd m;
            m << 0, -I, I, 0;
            return m;
        }
        case GateKind::Z: {
            Eigen::Matrix2cd m;
            m << 1, 0, 0, -1;
            return m;
        }
    }
    throw MalformedGateError("unknown gate kind");
}

class Circuit {
   public:
    explicit Circuit(std::size_t n_qubits) : n_qubits_(n_qubits) {
        if (n_qubits == 0) {
            throw ConfigError("n_qubits", "must be positive");
        }
    }

    std::size_t n_qubits() const noexcept {
        return n_qubits_;
    }
    const std::vector<Gate> &gates() const noexcept {
        return gates_;
    }
    std::size_t size() const noexcept {
        return gates_.size();
    }
    bool empty() const noexcept {
        return gates_.empty();
    }

    Circuit &push(Gate g) {
        check_well_formed(g);
        for (auto q : g.qubits) {
            if (q >= n_qubits_) {
                throw IndexOutOfRangeError(
                    std::string(gate_name(g.kind)) + " qubit " + std::to_string(q) + " outside a " +
                    std::to_string(n_qubits_) + "-qubit circuit");
            }
        }
        gates_.push_back(std::move(g));
        return *this;
    }

    // Appends every gate of `other`, which may act on fewer qubits than this circuit.
    Circuit &append(const Circuit &other) {
        if (other.n_qubits_ > n_qubits_) {
            throw IndexOutOfRangeError("appended circuit is wider than the target circuit");
        }
        gates_.reserve(gates_.size() + other.gates_.size());
        for (const auto &g : other.gates_) {
            gates_.push_back(g);
        }
        return *this;
    }

    bool operator==(const Circuit &) const = default;

   private:
    std::size_t n_qubits_;
    std::vector<Gate> gates_;
};

inline Circuit dagger(const Circuit &c) {
    Circuit r(c.n_qubits());
    for (auto it = c.gates().rbegin(); it != c.gates().rend(); ++it) {
        r.push(inverse(*it));
    }
    return r;
}

inline std::size_t count_gates(const Circuit &c, GateKind kind) {
    return static_cast<std::size_t>(
        std::count_if(c.gates().begin(), c.gates().end(), [&](const Gate &g) { return g.kind == kind; }));
}

namespace detail {

inline std::size_t bit_of(std::size_t n, std::size_t q) {
    return std::size_t{1} << (n - 1 - q);
}

// Applies a 2^k x 2^k matrix (k = 1 or 2) to the listed qubits of an n-qubit register.
template <typename Scalar, typename Matrix>
void apply_local(std::span<Scalar> amps, std::size_t n, std::span<const std::size_t> qubits, const Matrix &m) {
    if (qubits.size() == 1) {
        const std::size_t stride = bit_of(n, qubits[0]);
        const Scalar m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
        for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
            for (std::size_t i0 = base; i0 < base + stride; ++i0) {
                const Scalar a0 = amps[i0];
                const Scalar a1 = amps[i0 + stride];
                amps[i0] = m00 * a0 + m01 * a1;
                amps[i0 + stride] = m10 * a0 + m11 * a1;
            }
        }
        return;
    }
    const std::size_t hi = bit_of(n, qubits[0]);
    const std::size_t lo = bit_of(n, qubits[1]);
    const std::size_t mask = hi | lo;
    Scalar in[4];
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & mask) {
            continue;
        }
        const std::size_t idx[4] = {i, i | lo, i | hi, i | mask};
        for (int r = 0; r < 4; ++r) {
            in[r] = amps[idx[r]];
        }
        for (int r = 0; r < 4; ++r) {
            amps[idx[r]] = m(r, 0) * in[0] + m(r, 1) * in[1] + m(r, 2) * in[2] + m(r, 3) * in[3];
        }
    }
}

inline void check_qubits(std::span<const std::size_t> qubits, std::size_t n) {
    for (auto q : qubits) {
        if (q >= n) {
            throw IndexOutOfRangeError(
                "qubit " + std::to_string(q) + " out of range for " + std::to_string(n) + " qubits");
        }
    }
}

}  // namespace detail

class StateVector {
   public:
    // |0...0>.
    explicit StateVector(std::size_t n_qubits) : StateVector(n_qubits, 0) {
    }

    StateVector(std::size_t n_qubits, std::size_t basis_index) : n_qubits_(n_qubits) {
        check_size(n_qubits);
        amplitudes_.assign(std::size_t{1} << n_qubits, complex{});
        if (basis_index >= amplitudes_.size()) {
            throw IndexOutOfRangeError("basis index " + std::to_string(basis_index) + " out of range");
        }
        amplitudes_[basis_index] = 1.0;
    }

    StateVector(std::size_t n_qubits, std::vector<complex> amplitudes)
        : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
        check_size(n_qubits);
        if (amplitudes_.size() != (std::size_t{1} << n_qubits)) {
            throw ConfigError("amplitudes", "length must be 2^n_qubits");
        }
    }

    // |+>^n.
    static StateVector plus(std::size_t n_qubits) {
        const double a = 1.0 / std::sqrt(static_cast<double>(std::size_t{1} << n_qubits));
        return StateVector(n_qubits, std::vector<complex>(std::size_t{1} << n_qubits, complex{a, 0.0}));
    }

    std::size_t n_qubits() const noexcept {
        return n_qubits_;
    }
    std::size_t dim() const noexcept {
        return amplitudes_.size();
    }
    const std::vector<complex> &amplitudes() const noexcept {
        return amplitudes_;
    }
    std::span<complex> mutable_amplitudes() noexcept {
        return amplitudes_;
    }
    const complex &operator[](std::size_t i) const {
        return amplitudes_[i];
    }

    double norm() const {
        double s = 0;
        for (const auto &a : amplitudes_) {
            s += std::norm(a);
        }
        return std::sqrt(s);
    }

    Eigen::VectorXcd to_eigen() const {
        return Eigen::Map<const Eigen::VectorXcd>(amplitudes_.data(), static_cast<Eigen::Index>(dim()));
    }

    void apply_in_place(const Gate &g) {
        const auto m = gate_matrix(g);
        detail::check_qubits(g.qubits, n_qubits_);
        detail::apply_local<complex>(std::span<complex>(amplitudes_), n_qubits_, g.qubits, m);
    }

   private:
    static void check_size(std::size_t n) {
        if (n == 0) {
            throw ConfigError("n_qubits", "must be positive");
        }
        if (n > kMaxStateQubits) {
            throw CapacityError(
                "n_qubits=" + std::to_string(n) + " exceeds the dense limit of " +
                std::to_string(kMaxStateQubits));
        }
    }

    std::size_t n_qubits_;
    std::vector<complex> amplitudes_;
};

inline StateVector apply_gate(StateVector state, const Gate &g) {
    state.apply_in_place(g);
    return state;
}

inline StateVector apply_circuit(StateVector state, const Circuit &c) {
    if (c.n_qubits() > state.n_qubits()) {
        throw IndexOutOfRangeError("circuit is wider than the state");
    }
    for (const auto &g : c.gates()) {
        state.apply_in_place(g);
    }
    return state;
}

// Dense 2^n x 2^n unitary of a circuit, built column by column.
inline Eigen::MatrixXcd circuit_unitary(const Circuit &c) {
    const std::size_t dim = std::size_t{1} << c.n_qubits();
    Eigen::MatrixXcd u(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        const auto out = apply_circuit(StateVector(c.n_qubits(), col), c);
        for (std::size_t row = 0; row < dim; ++row) {
            u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = out[row];
        }
    }
    return u;
}

struct BitstringDistribution {
    std::size_t n_qubits = 0;
    std::vector<double> probabilities;

    double operator[](std::size_t x) const {
        return probabilities[x];
    }
    double total() const {
        double s = 0;
        for (double p : probabilities) {
            s += p;
        }
        return s;
    }
};

inline BitstringDistribution measurement_distribution(const StateVector &state) {
    BitstringDistribution d{state.n_qubits(), std::vector<double>(state.dim())};
    for (std::size_t x = 0; x < state.dim(); ++x) {
        d.probabilities[x] = std::norm(state[x]);
    }
    return d;
}

// Bitstring label of index x, qubit 0 first.
inline std::string bitstring(std::size_t x, std::size_t n_qubits) {
    std::string s(n_qubits, '0');
    for (std::size_t q = 0; q < n_qubits; ++q) {
        if (x & detail::bit_of(n_qubits, q)) {
            s[q] = '1';
        }
    }
    return s;
}

inline constexpr std::size_t kMaxDensityQubits = 8;

// Row-major 2^n x 2^n matrix. Internally treated as a 2n-qubit register whose
// first n qubits index rows and last n index columns, so left multiplication by
// K on qubit q and right multiplication by K^dagger are both local kernels.
class DensityMatrix {
   public:
    explicit DensityMatrix(const StateVector &pure) : n_qubits_(pure.n_qubits()) {
        check_size(n_qubits_);
        const std::size_t d = pure.dim();
        entries_.resize(d * d);
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                entries_[r * d + c] = pure[r] * std::conj(pure[c]);
            }
        }
    }

    static DensityMatrix zeros(std::size_t n_qubits) {
        return DensityMatrix(StateVector(n_qubits));
    }

    static DensityMatrix maximally_mixed(std::size_t n_qubits) {
        DensityMatrix dm = zeros(n_qubits);
        const std::size_t d = dm.dim();
        std::fill(dm.entries_.begin(), dm.entries_.end(), complex{});
        for (std::size_t i = 0; i < d; ++i) {
            dm.entries_[i * d + i] = 1.0 / static_cast<double>(d);
        }
        return dm;
    }

    std::size_t n_qubits() const noexcept {
        return n_qubits_;
    }
    std::size_t dim() const noexcept {
        return std::size_t{1} << n_qubits_;
    }
    complex operator()(std::size_t r, std::size_t c) const {
        return entries_[r * dim() + c];
    }

    complex trace() const {
        complex s{};
        for (std::size_t i = 0; i < dim(); ++i) {
            s += (*this)(i, i);
        }
        return s;
    }

    Eigen::MatrixXcd to_eigen() const {
        const auto d = static_cast<Eigen::Index>(dim());
        Eigen::MatrixXcd m(d, d);
        for (Eigen::Index r = 0; r < d; ++r) {
            for (Eigen::Index c = 0; c < d; ++c) {
                m(r, c) = entries_[static_cast<std::size_t>(r * d + c)];
            }
        }
        return m;
    }

    // rho -> K rho K^dagger for a local (1- or 2-qubit) matrix K.
    void conjugate_in_place(std::span<const std::size_t> qubits, const Eigen::MatrixXcd &k) {
        detail::check_qubits(qubits, n_qubits_);
        std::vector<std::size_t> cols(qubits.begin(), qubits.end());
        for (auto &q : cols) {
            q += n_qubits_;
        }
        const Eigen::MatrixXcd kc = k.conjugate();
        std::span<complex> data(entries_);
        detail::apply_local<complex>(data, 2 * n_qubits_, qubits, k);
        detail::apply_local<complex>(data, 2 * n_qubits_, cols, kc);
    }

    void apply_in_place(const Gate &g) {
        conjugate_in_place(g.qubits, gate_matrix(g));
    }

    // Replaces rho by (rho + rho^dagger) / 2.
    void symmetrize() {
        const std::size_t d = dim();
        for (std::size_t r = 0; r < d; ++r) {
            entries_[r * d + r] = complex{entries_[r * d + r].real(), 0.0};
            for (std::size_t c = r + 1; c < d; ++c) {
                const complex avg = 0.5 * (entries_[r * d + c] + std::conj(entries_[c * d + r]));
                entries_[r * d + c] = avg;
                entries_[c * d + r] = std::conj(avg);
            }
        }
    }

    std::vector<complex> &raw() noexcept {
        return entries_;
    }
    const std::vector<complex> &raw() const noexcept {
        return entries_;
    }

   private:
    static void check_size(std::size_t n) {
        if (n > kMaxDensityQubits) {
            throw CapacityError(
                "density-matrix simulation limited to n_qubits <= " + std::to_string(kMaxDensityQubits) +
                ", got " + std::to_string(n));
        }
    }

    std::size_t n_qubits_;
    std::vector<complex> entries_;
};

inline DensityMatrix apply_gate(DensityMatrix dm, const Gate &g) {
    dm.apply_in_place(g);
    return dm;
}

inline DensityMatrix apply_channel(
    const DensityMatrix &dm, const std::vector<Eigen::MatrixXcd> &kraus, std::span<const std::size_t> qubits) {
    if (qubits.empty() || qubits.size() > 2) {
        throw InvalidChannelError("channels act on one or two qubits");
    }
    if (qubits.size() == 2 && qubits[0] == qubits[1]) {
        throw InvalidChannelError("channel qubits must be distinct");
    }
    detail::check_qubits(qubits, dm.n_qubits());
    const auto k_dim = static_cast<Eigen::Index>(std::size_t{1} << qubits.size());
    if (kraus.empty()) {
        throw InvalidChannelError("empty Kraus set");
    }
    Eigen::MatrixXcd completeness = Eigen::MatrixXcd::Zero(k_dim, k_dim);
    for (const auto &k : kraus) {
        if (k.rows() != k_dim || k.cols() != k_dim) {
            throw InvalidChannelError("Kraus operator dimension does not match the qubit count");
        }
        completeness += k.adjoint() * k;
    }
    const double defect = (completeness - Eigen::MatrixXcd::Identity(k_dim, k_dim)).cwiseAbs().maxCoeff();
    if (defect > 1e-10) {
        throw InvalidChannelError("Kraus completeness violated by " + std::to_string(defect));
    }

    DensityMatrix out = dm;
    std::fill(out.raw().begin(), out.raw().end(), complex{});
    for (const auto &k : kraus) {
        DensityMatrix term = dm;
        term.conjugate_in_place(qubits, k);
        for (std::size_t i = 0; i < out.raw().size(); ++i) {
            out.raw()[i] += term.raw()[i];
        }
    }
    out.symmetrize();
    return out;
}

inline BitstringDistribution measurement_distribution(const DensityMatrix &dm) {
    BitstringDistribution d{dm.n_qubits(), std::vector<double>(dm.dim())};
    for (std::size_t x = 0; x < dm.dim(); ++x) {
        d.probabilities[x] = std::max(0.0, dm(x, x).real());
    }
    return d;
}

inline double max_abs_diff(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

// Multiplies `candidate` by the global phase that makes its entry at the
// largest-magnitude position of `reference` agree in phase with `reference`.
inline Eigen::MatrixXcd align_global_phase(const Eigen::MatrixXcd &reference, const Eigen::MatrixXcd &candidate) {
    Eigen::Index r = 0, c = 0;
    reference.cwiseAbs().maxCoeff(&r, &c);
    if (std::abs(candidate(r, c)) == 0.0) {
        return candidate;
    }
    const complex phase = reference(r, c) / candidate(r, c);
    return candidate * (phase / std::abs(phase));
}

inline double phase_aligned_error(const Eigen::MatrixXcd &reference, const Eigen::MatrixXcd &candidate) {
    return max_abs_diff(reference, align_global_phase(reference, candidate));
}

}  // namespace otocsim
