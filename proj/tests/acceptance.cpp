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


// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "otocsim/otocsim.hpp"

using namespace otocsim;

namespace {

const std::filesystem::path kPresets = OTOCSIM_TEST_PRESET_DIR;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void note(const std::string &what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

ExperimentConfig preset(const std::string &name) {
    return validate_config((kPresets / (name + ".json")).string());
}

// Earliest ell with C > 0.2 for each j, -1 if never.
std::vector<int> front(const SpreadSurface &s, const std::function<double(const SurfacePoint &)> &value) {
    std::vector<int> first;
    for (int j = 1; j <= s.n; ++j) {
        int f = -1;
        for (int ell = 0; ell <= s.ell_max; ++ell) {
            if (value(s.at(j, ell)) > 0.2) {
                f = ell;
                break;
            }
        }
        first.push_back(f);
    }
    return first;
}

std::string front_text(const std::vector<int> &f, int upto) {
    std::string s = "front(j=1..";
    s += std::to_string(upto) + ")=";
    for (int j = 0; j < upto; ++j) s += (j ? "," : "") + std::to_string(f[static_cast<std::size_t>(j)]);
    return s;
}

bool strictly_increasing(const std::vector<int> &f, int upto) {
    for (int j = 0; j < upto; ++j)
        if (f[static_cast<std::size_t>(j)] < 0) return false;
    for (int j = 1; j < upto; ++j)
        if (f[static_cast<std::size_t>(j)] <= f[static_cast<std::size_t>(j - 1)]) return false;
    return true;
}

Eigen::MatrixXcd dense_unitary(const Circuit &c) {
    const int n = static_cast<int>(c.n_qubits());
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
    for (const auto &g : c.gates()) {
        std::vector<int> qs(g.qubits.begin(), g.qubits.end());
        u = oracle::embed(gate_matrix(g), qs, n) * u;
    }
    return u;
}

complex dense_otoc(const Eigen::MatrixXcd &u, const Eigen::MatrixXcd &rho, int i, int j, char probe, int n) {
    const Eigen::MatrixXcd w = u.adjoint() * oracle::pauli_on('X', i - 1, n) * u;
    const Eigen::MatrixXcd v = oracle::pauli_on(probe, j - 1, n);
    return (rho * w * v * w * v).trace();
}

Outcome criterion1() {
    Outcome o;
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> t_d(-10.0, 10.0), c_d(-2.0, 2.0);
    double worst = 0.0;
    int checks = 0;
    for (int n = 3; n <= 6; ++n) {
        std::vector<IsingParams> params = {regime_preset(Regime::integrable, n).params, regime_preset(Regime::chaotic, n).params,
                                           IsingParams{n, c_d(rng), 0.0, c_d(rng)}};
        for (const auto &p : params)
            for (int j = 1; j <= n; ++j)
                for (int rep = 0; rep < 50; ++rep) {
                    const double t = t_d(rng);
                    worst = std::max(worst, std::abs(classical_otoc(p, j, t) - classical_otoc_bruteforce(p, 1, j, t)));
                    ++checks;
                }
    }
    o.require(worst <= 1e-10, "max deviation " + fmt("%.3g", worst));
    o.note(std::to_string(checks) + " points, max deviation " + fmt("%.3g", worst));
    return o;
}

Outcome criterion2() {
    Outcome o;
    const auto c = preset("fig1a");
    o.require(c.params == regime_preset(Regime::integrable, 6).params && c.schedule.tau == 0.06 && c.schedule.ell_max == 24,
              "fig1a parameters");
    const auto s = build_surface(c);
    double far = 0.0, pair = 0.0;
    for (const auto &p : s.points) {
        for (double v : {*p.C_exact, *p.C_raw}) {
            if (p.j >= 3) far = std::max(far, std::abs(v));
            if (p.j == 2) pair = std::max(pair, std::abs(v - (2.0 - 2.0 * std::cos(4.0 * p.t))));
        }
    }
    o.require(far <= 1e-10, "j>=3 max |C| " + fmt("%.3g", far));
    o.require(pair <= 1e-10, "j=2 deviation " + fmt("%.3g", pair));
    o.note("max |C(j>=3)| " + fmt("%.2g", far) + ", max |C12 - (2-2cos4t)| " + fmt("%.2g", pair));
    return o;
}

Outcome criterion3() {
    Outcome o;
    auto c = preset("fig1b");
    o.require(c.params == regime_preset(Regime::chaotic, 6).params && c.schedule.tau == 0.03 && c.schedule.ell_max == 72,
              "fig1b parameters");
    const auto s = build_surface(c);
    const auto f = front(s, [](const SurfacePoint &p) { return *p.C_exact; });
    o.require(strictly_increasing(f, 4), "front not strictly increasing: " + front_text(f, 4));
    int compared = 0, outside = 0;
    double worst_low = 0.0, worst_high = 0.0;
    for (const auto &p : s.points) {
        const double e = *p.C_exact;
        const double diff = std::abs(*p.C_raw - e);
        if (e <= 0.1) {
            worst_low = std::max(worst_low, diff);
        } else if (e >= 1.9) {
            worst_high = std::max(worst_high, diff);
        } else {
            continue;
        }
        ++compared;
        if (diff > 0.05) ++outside;
    }
    o.require(outside == 0, std::to_string(outside) + "/" + std::to_string(compared) + " fixed-node points off by > 0.05");
    o.note(front_text(f, 4) + ", fixed-node max diff " + fmt("%.3g", worst_low) + " (C<=0.1), " + fmt("%.3g", worst_high) +
           " (C>=1.9)");
    return o;
}

Outcome criterion4() {
    Outcome o;
    const auto p = regime_preset(Regime::chaotic, 4).params;
    const double t = 24 * 0.06;
    const auto ref = exact_unitary(build_hamiltonian(p), t);
    const std::vector<double> taus = {0.12, 0.06, 0.03};
    std::vector<double> errs;
    for (double tau : taus) {
        const int ell = static_cast<int>(std::lround(t / tau));
        const WeaveSchedule s{tau, 6, ell};
        errs.push_back(phase_aligned_error(circuit_unitary(weave_circuit(p, s, ell)), ref));
    }
    // Least-squares slope of log err against log tau.
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < 3; ++k) {
        mx += std::log(taus[k]) / 3;
        my += std::log(errs[k]) / 3;
    }
    double sxy = 0, sxx = 0;
    for (std::size_t k = 0; k < 3; ++k) {
        sxy += (std::log(taus[k]) - mx) * (std::log(errs[k]) - my);
        sxx += (std::log(taus[k]) - mx) * (std::log(taus[k]) - mx);
    }
    const double order = sxy / sxx;
    o.require(errs[0] > errs[1] && errs[1] > errs[2], "error not monotone");
    o.require(order >= 1.8, "order " + fmt("%.3f", order));
    o.note("errors " + fmt("%.3g", errs[0]) + ", " + fmt("%.3g", errs[1]) + ", " + fmt("%.3g", errs[2]) + "; order " +
           fmt("%.3f", order));
    return o;
}

Outcome criterion5() {
    Outcome o;
    std::mt19937_64 rng(105);
    std::uniform_real_distribution<double> a(-2 * std::numbers::pi, 2 * std::numbers::pi);
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        const double th = a(rng);
        worst = std::max(worst, phase_aligned_error(gate_matrix(Gate::rzz(0, 1, th)), dense_unitary(rzz_decomposition(th, 0, 1))));
    }
    for (int sign : {1, -1})
        worst = std::max(
            worst, phase_aligned_error(gate_matrix(Gate::rzz(0, 1, sign * std::numbers::pi / 2)), dense_unitary(magic_rzz(0, 1, sign))));
    o.require(worst <= 1e-12, "identity error " + fmt("%.3g", worst));
    for (int n = 3; n <= 8; ++n) {
        const auto p = regime_preset(Regime::chaotic, n).params;
        o.require(count_gates(trotter_step(p, 0.1), GateKind::CNOT) == static_cast<std::size_t>(2 * (n - 1)), "standard step CNOTs");
        const WeaveSchedule m{magic_tau(p, 4), 4, 8, true};
        o.require(count_gates(weave_operators(p, m).back(), GateKind::CNOT) == static_cast<std::size_t>(n - 1), "magic cell CNOTs");
    }
    const auto p = regime_preset(Regime::chaotic, 4).params;
    const WeaveSchedule s{0.06, 6, 24};
    const auto ops = weave_operators(p, s);
    std::size_t total = 0;
    for (int ell = 7; ell <= 11; ++ell) {
        total = count_gates(fabs_measurement_circuit(weave_circuit(ops, s, ell), 1, 2), GateKind::CNOT);
        o.require(total == 48, "OTOC circuit at ell=" + std::to_string(ell) + " has " + std::to_string(total) + " CNOTs");
    }
    o.note("max identity error " + fmt("%.2g", worst) + ", OTOC circuit CNOTs " + std::to_string(total));
    return o;
}

Outcome criterion6() {
    Outcome o;
    const auto p = regime_preset(Regime::chaotic, 4).params;
    const WeaveSchedule s{0.06, 6, 24};
    const auto ops = weave_operators(p, s);
    std::mt19937_64 rng(106);
    std::uniform_int_distribution<int> j_d(1, 4), l_d(0, 24);
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        const int j = j_d(rng), ell = l_d(rng);
        const auto u = weave_circuit(ops, s, ell);
        const double p0 = measurement_distribution(apply_circuit(StateVector(4), fabs_measurement_circuit(u, 1, j)))[0];
        const complex f = dense_otoc(dense_unitary(u), oracle::projector_zeros(4), 1, j, 'X', 4);
        worst = std::max(worst, std::abs(std::sqrt(p0) - std::abs(f)));
    }
    o.require(worst <= 1e-9, "max deviation " + fmt("%.3g", worst));
    o.note("20 points, max | sqrt(P0) - |F| | " + fmt("%.2g", worst));
    return o;
}

Outcome criterion7() {
    Outcome o;
    const auto nm = NoiseModel::calibrated(4);
    const auto t = build_confusion_matrix(nm);
    const Eigen::MatrixXd tinv = t.inverse();
    std::mt19937_64 rng(107);
    std::uniform_real_distribution<double> u(0.2, 1.0);
    double worst = 0.0, worst_sigma = 0.0;
    bool simplex = true;
    for (int rep = 0; rep < 40; ++rep) {
        std::vector<double> truth(16);
        double sum = 0;
        for (auto &x : truth) sum += (x = u(rng));
        for (auto &x : truth) x /= sum;
        const Eigen::VectorXd noisy_v = t * Eigen::Map<const Eigen::VectorXd>(truth.data(), 16);
        const BitstringDistribution noisy{4, std::vector<double>(noisy_v.data(), noisy_v.data() + 16)};
        const auto exact = tmem_correct(t, noisy);
        const auto sampled = tmem_correct(t, sample_counts(noisy, 8192, 5000 + rep).to_distribution());
        for (const auto *r : {&exact, &sampled}) {
            double s = 0;
            for (double x : r->corrected.probabilities) {
                simplex = simplex && x >= 0.0;
                s += x;
            }
            simplex = simplex && std::abs(s - 1.0) < 1e-12;
        }
        for (std::size_t x = 0; x < 16; ++x) {
            worst = std::max(worst, std::abs(exact.corrected[x] - truth[x]));
            double var = 0;
            for (std::size_t y = 0; y < 16; ++y) {
                const double w = tinv(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
                var += w * w * noisy[y];
            }
            worst_sigma = std::max(worst_sigma, std::abs(sampled.corrected[x] - truth[x]) / std::sqrt(var / 8192.0));
        }
    }
    o.require(worst <= 1e-7, "exact recovery error " + fmt("%.3g", worst));
    o.require(simplex, "left the simplex");
    o.require(worst_sigma <= 5.0, "finite-shot deviation " + fmt("%.2f", worst_sigma) + " sigma");
    o.note("exact recovery " + fmt("%.2g", worst) + ", finite shots max " + fmt("%.2f", worst_sigma) + " sigma");
    return o;
}

Outcome criterion8() {
    Outcome o;
    auto nm = NoiseModel::ideal(4);
    nm.set_uniform_cnot_error(1e-3);
    std::mt19937_64 rng(108);
    std::uniform_int_distribution<int> j_d(1, 4), l_d(1, 24);
    int better = 0;
    const int total = 40;
    for (int rep = 0; rep < total; ++rep) {
        const auto regime = rep % 2 ? Regime::chaotic : Regime::integrable;
        const auto p = regime_preset(regime, 4).params;
        const WeaveSchedule s{0.06, 6, 24};
        const auto c = fabs_measurement_circuit(weave_circuit(p, s, l_d(rng)), 1, j_d(rng));
        const double ideal = measurement_distribution(apply_circuit(StateVector(4), c))[0];
        const auto p1 = simulate_noisy(c, nm);
        const auto p3 = simulate_noisy(fold_cnots(c, 3), nm);
        const double zne = zne_correct(p1, p3)[0];
        if (std::abs(zne - ideal) < std::abs(p1[0] - ideal)) ++better;
    }
    o.require(better >= 38, std::to_string(better) + "/40 improved");
    const auto a = zne_correct({1, {0.9, 0.1}}, {1, {0.7, 0.3}});
    const auto b = zne_correct({1, {0.95, 0.05}}, {1, {0.6, 0.4}});
    const auto same = zne_correct({1, {0.6, 0.4}}, {1, {0.6, 0.4}});
    o.require(std::abs(a[0] - 1.0) < 1e-15 && std::abs(a[1]) < 1e-15, "accepted example");
    o.require(b[0] == 1.0 && b[1] == 0.0, "projected example");
    o.require(std::abs(same[0] - 0.6) < 1e-15, "zero-slope example");
    o.note(std::to_string(better) + "/40 circuits closer after ZNE; 2-point examples exact");
    return o;
}

std::string read_all(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome criterion9() {
    Outcome o;
    std::string fronts;
    for (const char *name : {"fig4", "fig5", "fig6a", "fig6b"}) {
        auto c = preset(name);
        c.pipeline = Pipeline::trotter_exact;
        const auto s = build_surface(c);
        const auto f = front(s, [](const SurfacePoint &p) { return *p.C_raw; });
        if (c.regime_label == "integrable") {
            double far = 0;
            for (const auto &p : s.points)
                if (p.j >= 3) far = std::max(far, std::abs(*p.C_raw));
            o.require(far <= 1e-10, std::string(name) + " not localized (" + fmt("%.3g", far) + ")");
            fronts += std::string(fronts.empty() ? "" : ", ") + name + " max C(j>=3) " + fmt("%.1g", far);
        } else {
            o.require(strictly_increasing(f, 4), std::string(name) + " " + front_text(f, 4));
            fronts += std::string(fronts.empty() ? "" : ", ") + name + " " + front_text(f, 4);
        }
        const auto svg = render_heatmap(SurfaceFile{s.points}, Column::C_raw);
        o.require(svg == render_heatmap(SurfaceFile{s.points}, Column::C_raw), std::string(name) + " SVG not deterministic");
    }
    // Full preset runs twice, byte-compared.
    const auto root = std::filesystem::temp_directory_path() / "otocsim_acceptance";
    std::filesystem::remove_all(root);
    std::size_t files = 0;
    for (const char *name : {"fig4", "fig5", "fig6a", "fig6b"}) {
        const auto c = preset(name);
        const auto a = write_surface_outputs(build_surface(c), root / "a");
        const auto b = write_surface_outputs(build_surface(c, 2), root / "b");
        for (std::size_t k = 0; k < a.size(); ++k) {
            ++files;
            o.require(k < b.size() && read_all(a[k]) == read_all(b[k]), a[k].filename().string() + " differs");
        }
    }
    std::filesystem::remove_all(root);
    o.note(fronts + "; " + std::to_string(files) + " output files byte-identical");
    return o;
}

Outcome criterion10() {
    Outcome o;
    double worst = 0.0;
    for (auto r : {Regime::integrable, Regime::chaotic}) {
        const auto p = regime_preset(r, 4).params;
        const Eigen::MatrixXcd h = oracle::ising_hamiltonian(4, p.J, p.B_x, p.B_z);
        struct Variant {
            const char *name;
            const char *state;
            const char *probe;
            Eigen::MatrixXcd rho;
            char ch;
        };
        const std::vector<Variant> variants = {{"I/d", "maximally_mixed", "X", oracle::identity_over_d(4), 'X'},
                                               {"J/d", "plus", "X", oracle::all_ones_over_d(4), 'X'},
                                               {"XY", "zeros", "Y", oracle::projector_zeros(4), 'Y'}};
        for (const auto &v : variants) {
            const auto s = build_surface(parse_config(std::string(R"({"regime": ")") + std::string(regime_name(r)) +
                                                      R"(", "n": 4, "tau": 0.06, "ell_max": 24, "state": ")" + v.state +
                                                      R"(", "probe": ")" + v.probe + "\"}"));
            for (const auto &pt : s.points) {
                const auto u = oracle::expm_hermitian(h, pt.t);
                const double ref = oracle::squared_commutator(u, v.rho, 1, pt.j, v.ch, 4);
                worst = std::max(worst, std::abs(*pt.C_exact - ref));
            }
        }
    }
    o.require(worst <= 1e-10, "max deviation " + fmt("%.3g", worst));
    double xy = 0;
    for (int i = 1; i <= 4; ++i) {
        xy = commutator_xy_exact(regime_preset(Regime::chaotic, 4).params, i, i, 0.0);
        o.require(std::abs(xy - 4.0) < 1e-12, "XY commutator at t=0, i=j is " + fmt("%.12g", xy));
    }
    o.note("max deviation from dense oracle " + fmt("%.2g", worst) + ", XY(t=0,i=j) = " + fmt("%.12g", xy));
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char *name;
        std::function<Outcome()> run;
        double limit_s;  // 0: no runtime bound
    };
    const std::vector<Criterion> criteria = {
        {"1  analytic classical OTOC", criterion1, 10},
        {"2  integrable localization", criterion2, 30},
        {"3  chaotic spreading front", criterion3, 120},
        {"4  Trotter-weave convergence", criterion4, 60},
        {"5  decomposition identities", criterion5, 0},
        {"6  |F| protocol", criterion6, 30},
        {"7  TMEM recovery", criterion7, 0},
        {"8  ZNE improvement", criterion8, 0},
        {"9  noiseless figure surfaces", criterion9, 0},
        {"10 alternative commutators", criterion10, 0},
    };
    int failed = 0;
    for (const auto &[name, run, limit_s] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (limit_s > 0) o.require(secs < limit_s, "runtime over " + fmt("%.0f", limit_s) + " s");
        std::printf("%s criterion %-30s %6.2fs  %s\n", o.pass ? "PASS" : "FAIL", name, secs, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
