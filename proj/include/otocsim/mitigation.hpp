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

// Readout correction by constrained least squares over the probability simplex
// (transition-matrix error mitigation, TMEM) and two-point zero-noise
// extrapolation from CNOT-folded circuits (ZNE).

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "otocsim/errors.hpp"
#include "otocsim/qsim.hpp"

namespace otocsim {

// Euclidean projection onto {p : p >= 0, sum p = 1} by sort-and-threshold.
inline std::vector<double> project_simplex(const std::vector<double> &v) {
    if (v.empty()) {
        return {};
    }
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw ConfigError("v", "simplex projection needs finite entries");
        }
    }
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    double running = 0.0;
    double theta = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        running += u[k];
        const double candidate = (running - 1.0) / static_cast<double>(k + 1);
        if (u[k] - candidate > 0.0) {
            theta = candidate;
        }
    }
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = std::max(v[i] - theta, 0.0);
    }
    return out;
}

struct TmemOptions {
    double tolerance = 1e-10;
    int max_iterations = 100000;
};

struct TmemResult {
    BitstringDistribution corrected;
    int iterations = 0;
    bool converged = false;
    double objective = 0.0;
    // Objective evaluated at the uncorrected distribution.
    double initial_objective = 0.0;
    double condition_number = 0.0;
};

inline void check_transition_matrix(const Eigen::MatrixXd &t, std::size_t dim) {
    if (t.rows() != static_cast<Eigen::Index>(dim) || t.cols() != static_cast<Eigen::Index>(dim)) {
        throw ConfigError("T", "transition matrix dimension does not match the distribution");
    }
    for (Eigen::Index c = 0; c < t.cols(); ++c) {
        if (std::abs(t.col(c).sum() - 1.0) > 1e-9) {
            throw ConfigError("T", "column " + std::to_string(c) + " does not sum to 1");
        }
    }
}

inline double condition_number(const Eigen::MatrixXd &t) {
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(t);
    const auto &s = svd.singularValues();
    const double smallest = s(s.size() - 1);
    return smallest > 0.0 ? s(0) / smallest : std::numeric_limits<double>::infinity();
}

// argmin ||T p - p_noisy||^2 over the simplex by projected gradient with step 1 / ||T^T T||_2.
inline TmemResult tmem_correct(
    const Eigen::MatrixXd &t, const BitstringDistribution &p_noisy, const TmemOptions &opts = {}) {
    const std::size_t dim = p_noisy.probabilities.size();
    check_transition_matrix(t, dim);
    const Eigen::VectorXd q = Eigen::Map<const Eigen::VectorXd>(p_noisy.probabilities.data(), static_cast<Eigen::Index>(dim));
    const Eigen::MatrixXd gram = t.transpose() * t;
    const Eigen::VectorXd tq = t.transpose() * q;
    const double lipschitz = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();

    auto objective = [&](const std::vector<double> &p) {
        const Eigen::VectorXd pv = Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size()));
        return (t * pv - q).squaredNorm();
    };

    TmemResult res;
    res.condition_number = condition_number(t);
    res.initial_objective = objective(p_noisy.probabilities);

    std::vector<double> p = project_simplex(p_noisy.probabilities);
    if (lipschitz > 0.0) {
        const double step = 1.0 / lipschitz;
        std::vector<double> trial(dim);
        for (res.iterations = 1; res.iterations <= opts.max_iterations; ++res.iterations) {
            const Eigen::VectorXd pv = Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(dim));
            const Eigen::VectorXd grad = gram * pv - tq;
            for (std::size_t i = 0; i < dim; ++i) {
                trial[i] = p[i] - step * grad(static_cast<Eigen::Index>(i));
            }
            std::vector<double> next = project_simplex(trial);
            double change = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                change = std::max(change, std::abs(next[i] - p[i]));
            }
            p = std::move(next);
            if (change < opts.tolerance) {
                res.converged = true;
                break;
            }
        }
        res.iterations = std::min(res.iterations, opts.max_iterations);
    }
    res.objective = objective(p);
    res.corrected = BitstringDistribution{p_noisy.n_qubits, std::move(p)};
    return res;
}

// Linear intercept (3 Pr(x|1) - Pr(x|3)) / 2 of the CNOT-count extrapolation.
inline std::vector<double> zne_extrapolate(const BitstringDistribution &p1, const BitstringDistribution &p3) {
    if (p1.probabilities.size() != p3.probabilities.size()) {
        throw ConfigError("p3", "ZNE inputs must have the same dimension");
    }
    std::vector<double> out(p1.probabilities.size());
    for (std::size_t x = 0; x < out.size(); ++x) {
        out[x] = (3.0 * p1[x] - p3[x]) / 2.0;
    }
    return out;
}

// Accepts the intercept when every entry lies in [0, 1], otherwise returns the
// closest distribution in Euclidean distance.
inline BitstringDistribution zne_correct(const BitstringDistribution &p1, const BitstringDistribution &p3) {
    auto raw = zne_extrapolate(p1, p3);
    const bool physical = std::all_of(raw.begin(), raw.end(), [](double v) { return v >= 0.0 && v <= 1.0; });
    return BitstringDistribution{p1.n_qubits, physical ? std::move(raw) : project_simplex(raw)};
}

}  // namespace otocsim
