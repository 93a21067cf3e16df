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


#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "otocsim/ising.hpp"

using namespace otocsim;

namespace {

// Basis index of a bitstring, leftmost character = qubit 0.
Eigen::Index idx(const char *bits) {
    return static_cast<Eigen::Index>(std::stoul(bits, nullptr, 2));
}

}  // namespace

TEST(regime_preset, table_values) {
    const auto integ = regime_preset(Regime::integrable, 4).params;
    EXPECT_EQ(integ, (IsingParams{4, -1.0, 0.0, 1.0}));
    const auto chaos = regime_preset(Regime::chaotic, 6).params;
    EXPECT_EQ(chaos, (IsingParams{6, -1.0, 0.7, 1.5}));
    EXPECT_EQ(parse_regime("chaotic"), Regime::chaotic);
    EXPECT_FALSE(parse_regime("ergodic"));
}

TEST(build_hamiltonian, zz_chain_ground_entry) {
    const auto h = build_hamiltonian(IsingParams{3, 1.0, 0.0, 0.0});
    EXPECT_EQ(h(0, 0), 2.0);
    EXPECT_TRUE(h.isDiagonal());
}

TEST(build_hamiltonian, chaotic_all_zeros_energy) {
    const auto h = build_hamiltonian(regime_preset(Regime::chaotic, 4).params);
    EXPECT_DOUBLE_EQ(h(0, 0), 3.0);
    EXPECT_EQ((h - h.transpose()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(build_hamiltonian, matches_pauli_string_sum) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int n = 3; n <= 6; ++n) {
        const IsingParams p{n, u(rng), u(rng), u(rng)};
        const Eigen::MatrixXcd h = build_hamiltonian(p).cast<complex>();
        EXPECT_LT(max_abs_diff(h, oracle::ising_hamiltonian(n, p.J, p.B_x, p.B_z)), 1e-14);
        Eigen::MatrixXcd sx = Eigen::MatrixXcd::Zero(h.rows(), h.cols());
        for (int q = 0; q < n; ++q) sx += oracle::pauli_on('X', q, n);
        const Eigen::MatrixXcd h0 = build_classical_hamiltonian(p).cast<complex>();
        EXPECT_LT(max_abs_diff(h, h0 + p.B_x * sx), 1e-14);
    }
}

TEST(build_classical_hamiltonian, single_flip_energies) {
    const auto p = regime_preset(Regime::integrable, 4).params;
    const auto h0 = build_classical_hamiltonian(p);
    EXPECT_TRUE(h0.isDiagonal());
    EXPECT_EQ(h0, build_hamiltonian(IsingParams{4, p.J, 0.0, p.B_z}));
    const double e0 = (p.n - 1) * p.J + p.n * p.B_z;
    EXPECT_DOUBLE_EQ(h0(0, 0), e0);
    EXPECT_DOUBLE_EQ(h0(idx("1000"), idx("1000")), e0 - 2 * p.J - 2 * p.B_z);
    EXPECT_DOUBLE_EQ(h0(idx("0001"), idx("0001")), e0 - 2 * p.J - 2 * p.B_z);
    EXPECT_DOUBLE_EQ(h0(idx("0100"), idx("0100")), e0 - 4 * p.J - 2 * p.B_z);
}

TEST(build_hamiltonian, limits) {
    EXPECT_THROW(build_hamiltonian(IsingParams{15, -1, 0, 1}), CapacityError);
    EXPECT_THROW(build_hamiltonian(IsingParams{2, -1, 0, 1}), ConfigError);
}

TEST(exact_unitary, identity_at_zero_and_group_property) {
    const auto h = build_hamiltonian(regime_preset(Regime::chaotic, 4).params);
    const ExactPropagator prop(h);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(16, 16);
    EXPECT_LT(max_abs_diff(prop.unitary(0.0), id), 1e-12);
    EXPECT_LT(max_abs_diff(prop.unitary(0.7) * prop.unitary(-0.7), id), 1e-9);
    EXPECT_LT(max_abs_diff(prop.unitary(0.3) * prop.unitary(1.1), prop.unitary(1.4)), 1e-9);
    const auto u = prop.unitary(2.5);
    EXPECT_LT(max_abs_diff(u.adjoint() * u, id), 1e-9);
}

TEST(exact_unitary, matches_independent_exponentials) {
    const auto p = regime_preset(Regime::chaotic, 4).params;
    const Eigen::MatrixXcd h = oracle::ising_hamiltonian(4, p.J, p.B_x, p.B_z);
    const auto u = exact_unitary(build_hamiltonian(p), 0.37);
    EXPECT_LT(max_abs_diff(u, oracle::expm_hermitian(h, 0.37)), 1e-10);
    EXPECT_LT(max_abs_diff(u, oracle::expm_series(-oracle::I1 * 0.37 * h)), 1e-10);
}

TEST(exact_unitary, two_site_zz) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(4, 4);
    h.diagonal() << 1, -1, -1, 1;
    const double t = 0.8;
    Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(4, 4);
    expect.diagonal() << std::polar(1.0, -t), std::polar(1.0, t), std::polar(1.0, t), std::polar(1.0, -t);
    EXPECT_LT(max_abs_diff(exact_unitary(h, t), expect), 1e-12);
}

TEST(exact_unitary, rejects_non_hermitian) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2, 2);
    h(0, 1) = 1.0;
    EXPECT_THROW(ExactPropagator{h}, NotHermitianError);
}

TEST(classical_otoc, closed_form_examples) {
    const auto integ = regime_preset(Regime::integrable, 4).params;
    const auto chaos = regime_preset(Regime::chaotic, 4).params;
    for (double t : {0.0, 0.3, 1.7, 10.0}) {
        EXPECT_EQ(classical_otoc(chaos, 3, t), complex(1.0));
        EXPECT_EQ(classical_otoc(chaos, 4, t), complex(1.0));
        EXPECT_LT(std::abs(classical_otoc(integ, 1, t) - 1.0), 1e-15);
        EXPECT_EQ(std::abs(classical_otoc(chaos, 1, t)), 1.0);
    }
    EXPECT_LT(std::abs(classical_otoc(chaos, 2, 0.03) - std::exp(complex{0, -0.12})), 1e-15);
    EXPECT_THROW(classical_otoc(chaos, 5, 0.1), IndexOutOfRangeError);
    EXPECT_THROW(classical_otoc(chaos, 0, 0.1), IndexOutOfRangeError);
}

TEST(classical_otoc, matches_bruteforce_sweep) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> t_d(-5, 5), c_d(-2, 2);
    for (int n = 3; n <= 6; ++n) {
        for (auto r : {Regime::integrable, Regime::chaotic}) {
            auto p = regime_preset(r, n).params;
            for (int j = 1; j <= n; ++j) {
                for (int rep = 0; rep < 20; ++rep) {
                    const double t = t_d(rng);
                    const complex brute = classical_otoc_bruteforce(p, 1, j, t);
                    EXPECT_LT(std::abs(classical_otoc(p, j, t) - brute), 1e-10) << n << " " << j << " " << t;
                    EXPECT_NEAR(std::abs(brute), 1.0, 1e-12);
                }
            }
        }
        // Random couplings: the closed form depends only on J and B_z.
        const IsingParams p{n, c_d(rng), 0.0, c_d(rng)};
        for (int j = 1; j <= n; ++j) {
            const double t = t_d(rng);
            EXPECT_LT(std::abs(classical_otoc(p, j, t) - classical_otoc_bruteforce(p, 1, j, t)), 1e-10);
        }
    }
}

TEST(classical_otoc_bruteforce, equal_time_and_capacity) {
    const auto p = regime_preset(Regime::chaotic, 5).params;
    for (int i = 1; i <= 5; ++i)
        for (int j = 1; j <= 5; ++j) EXPECT_LT(std::abs(classical_otoc_bruteforce(p, i, j, 0.0) - 1.0), 1e-15);
    EXPECT_THROW(classical_otoc_bruteforce(IsingParams{11, -1, 0, 1}, 1, 1, 0.1), CapacityError);
}

TEST(classical_otoc_bruteforce, ignores_transverse_field) {
    // Only H^0 enters the classical OTOC.
    const auto p = regime_preset(Regime::chaotic, 4).params;
    const IsingParams p0{4, p.J, 0.0, p.B_z};
    EXPECT_LT(std::abs(classical_otoc_bruteforce(p, 1, 2, 0.4) - classical_otoc_bruteforce(p0, 1, 2, 0.4)), 1e-15);
}
