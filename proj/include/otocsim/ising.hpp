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

// Open Ising chain
//
//     H = J sum_{i<n} Z_i Z_{i+1} + B_z sum_i Z_i + B_x sum_i X_i
//
// with its exact propagator and the closed-form OTOC of the classical part
// (B_x = 0) for a flip on site 1.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include "otocsim/errors.hpp"
#include "otocsim/qsim.hpp"

namespace otocsim {

// Sites are 1-based (site j lives on qubit j - 1).
struct IsingParams {
    int n = 4;
    double J = -1.0;
    double B_x = 0.0;
    double B_z = 1.0;

    bool operator==(const IsingParams &) const = default;
};

enum class Regime { integrable, chaotic };

constexpr std::string_view regime_name(Regime r) {
    return r == Regime::integrable ? "integrable" : "chaotic";
}

inline std::optional<Regime> parse_regime(std::string_view name) {
    if (name == "integrable") {
        return Regime::integrable;
    }
    if (name == "chaotic") {
        return Regime::chaotic;
    }
    return std::nullopt;
}

struct RegimePreset {
    Regime name;
    IsingParams params;
};

inline RegimePreset regime_preset(Regime r, int n) {
    if (r == Regime::integrable) {
        return {r, IsingParams{n, -1.0, 0.0, 1.0}};
    }
    return {r, IsingParams{n, -1.0, 0.7, 1.5}};
}

inline constexpr int kMaxHamiltonianSites = 14;

inline void validate(const IsingParams &p) {
    if (p.n < 3) {
        throw ConfigError("n", "Ising chain needs at least 3 sites, got " + std::to_string(p.n));
    }
    if (p.n > kMaxHamiltonianSites) {
        throw CapacityError(
            "n=" + std::to_string(p.n) + " exceeds the dense Hamiltonian limit of " +
            std::to_string(kMaxHamiltonianSites));
    }
    if (!std::isfinite(p.J) || !std::isfinite(p.B_x) || !std::isfinite(p.B_z)) {
        throw ConfigError("regime", "couplings must be finite");
    }
}

inline void check_site(const IsingParams &p, int site, const char *what) {
    if (site < 1 || site > p.n) {
        throw IndexOutOfRangeError(
            std::string(what) + "=" + std::to_string(site) + " outside sites 1.." + std::to_string(p.n));
    }
}

namespace detail {

// Classical energy of basis state x (Z eigenvalue +1 on |0>).
inline double classical_energy(const IsingParams &p, std::size_t x) {
    const auto n = static_cast<std::size_t>(p.n);
    auto z = [&](std::size_t q) { return (x & bit_of(n, q)) ? -1.0 : 1.0; };
    double e = 0;
    for (std::size_t q = 0; q + 1 < n; ++q) {
        e += p.J * z(q) * z(q + 1);
    }
    for (std::size_t q = 0; q < n; ++q) {
        e += p.B_z * z(q);
    }
    return e;
}

}  // namespace detail

inline Eigen::MatrixXd build_classical_hamiltonian(const IsingParams &p) {
    validate(p);
    const auto dim = Eigen::Index{1} << p.n;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index x = 0; x < dim; ++x) {
        h(x, x) = detail::classical_energy(p, static_cast<std::size_t>(x));
    }
    return h;
}

inline Eigen::MatrixXd build_hamiltonian(const IsingParams &p) {
    Eigen::MatrixXd h = build_classical_hamiltonian(p);
    const auto n = static_cast<std::size_t>(p.n);
    for (Eigen::Index x = 0; x < h.rows(); ++x) {
        for (std::size_t q = 0; q < n; ++q) {
            const auto y = static_cast<Eigen::Index>(static_cast<std::size_t>(x) ^ detail::bit_of(n, q));
            h(y, x) += p.B_x;
        }
    }
    return h;
}

// e^{-iHt} for a fixed real symmetric H, decomposed once and exponentiated per t.
class ExactPropagator {
   public:
    explicit ExactPropagator(const Eigen::MatrixXd &h) {
        if (h.rows() != h.cols()) {
            throw NotHermitianError("Hamiltonian must be square");
        }
        const double asym = (h - h.transpose()).cwiseAbs().maxCoeff();
        if (asym > 1e-10) {
            throw NotHermitianError("Hamiltonian is not symmetric (max asymmetry " + std::to_string(asym) + ")");
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
        eigenvalues_ = solver.eigenvalues();
        eigenvectors_ = solver.eigenvectors();
    }

    Eigen::MatrixXcd unitary(double t) const {
        const Eigen::Index d = eigenvalues_.size();
        Eigen::MatrixXcd scaled(d, d);
        for (Eigen::Index k = 0; k < d; ++k) {
            const complex phase = std::polar(1.0, -eigenvalues_(k) * t);
            scaled.col(k) = eigenvectors_.col(k).cast<complex>() * phase;
        }
        return scaled * eigenvectors_.transpose().cast<complex>();
    }

    Eigen::Index dim() const {
        return eigenvalues_.size();
    }

   private:
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXd eigenvectors_;
};

inline Eigen::MatrixXcd exact_unitary(const Eigen::MatrixXd &h, double t) {
    return ExactPropagator(h).unitary(t);
}

// Closed-form F^0_{1j}(t) of the classical chain for W = X_1, V = X_j on |0...0>.
inline complex classical_otoc(const IsingParams &p, int j, double t) {
    validate(p);
    check_site(p, j, "j");
    double phase = 0.0;
    if (j == 1) {
        phase = 4.0 * (p.J + p.B_z) * t;
    } else if (j == 2) {
        phase = 4.0 * p.J * t;
    }
    return std::polar(1.0, phase);
}

inline constexpr int kMaxBruteforceSites = 10;

// <0|X_i(t) X_j X_i(t) X_j|0> under H^0 using dense matrices.
inline complex classical_otoc_bruteforce(const IsingParams &p, int i, int j, double t) {
    validate(p);
    if (p.n > kMaxBruteforceSites) {
        throw CapacityError("classical_otoc_bruteforce limited to n <= " + std::to_string(kMaxBruteforceSites));
    }
    check_site(p, i, "i");
    check_site(p, j, "j");
    const auto n = static_cast<std::size_t>(p.n);
    const Eigen::MatrixXd h0 = build_classical_hamiltonian(p);
    const Eigen::Index d = h0.rows();

    auto dense_x = [&](int site) {
        Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(d, d);
        const std::size_t m = detail::bit_of(n, static_cast<std::size_t>(site - 1));
        for (Eigen::Index c = 0; c < d; ++c) {
            x(static_cast<Eigen::Index>(static_cast<std::size_t>(c) ^ m), c) = 1.0;
        }
        return x;
    };
    Eigen::VectorXcd fwd(d), bwd(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        fwd(k) = std::polar(1.0, -h0(k, k) * t);
        bwd(k) = std::conj(fwd(k));
    }
    const Eigen::MatrixXcd xi_t = bwd.asDiagonal() * dense_x(i) * fwd.asDiagonal();
    const Eigen::MatrixXcd xj = dense_x(j);

    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
    v(0) = 1.0;
    const Eigen::VectorXcd out = xi_t * (xj * (xi_t * (xj * v)));
    return out(0);
}

}  // namespace otocsim
