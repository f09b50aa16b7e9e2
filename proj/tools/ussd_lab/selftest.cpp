// Copyright 2026 The ussdlab Authors
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

#include <cmath>
#include <array>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "commands.hpp"
#include "ussdlab/coherence.hpp"
#include "ussdlab/oracle.hpp"
#include "ussdlab/teleport.hpp"
#include "ussdlab/ussd.hpp"

namespace ussdlab::cli {
namespace {

constexpr double kPi = std::numbers::pi;

struct Check {
    std::string group;
    std::string name;
    double tolerance;
    std::function<double()> residual;
};

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }

    UssdInstance instance() {
        double p = uniform();
        Complex a = std::polar(uniform(0.0, 0.95), uniform(0.0, 2 * kPi));
        Complex ac = std::polar(uniform(), uniform(0.0, 2 * kPi));
        return make_instance(p, a, ac);
    }
    PureState state3() {
        CVector v(8);
        for (int i = 0; i < 8; ++i) {
            v(i) = Complex(normal(), normal());
        }
        return PureState::normalized(Register{Qubit::S, Qubit::C, Qubit::A}, v);
    }
    Matrix2 unitary() {
        Eigen::Matrix2cd g;
        for (int i = 0; i < 4; ++i) {
            g(i / 2, i % 2) = Complex(normal(), normal());
        }
        Eigen::HouseholderQR<Eigen::Matrix2cd> qr(g);
        return qr.householderQ();
    }

  private:
    std::mt19937_64 gen_;
};

double angle_gap(double a, double b) {
    double d = std::abs(std::remainder(a - b, 2 * kPi));
    return d;
}

double max_ledger_gap(const CoherenceLedger& x, const CoherenceLedger& y) {
    return std::max({std::abs(x.total - y.total), std::abs(x.s_ca - y.s_ca), std::abs(x.c_as - y.c_as),
                     std::abs(x.a_sc - y.a_sc), std::abs(x.s_c - y.s_c), std::abs(x.c_a - y.c_a),
                     std::abs(x.a_s - y.a_s), std::abs(x.genuine - y.genuine)});
}

std::vector<Check> battery() {
    std::vector<Check> c;

    c.push_back({"success", "spot_case_i", 1e-12, [] { return std::abs(p_suc_max(make_instance(0.2, 0.4, 0.0)) - 0.68); }});
    c.push_back({"success", "spot_case_ii", 1e-12, [] { return std::abs(p_suc_max(make_instance(0.4, 0.9, 0.0)) - 0.114); }});
    c.push_back({"success", "grid_oracle", 1e-6, [] {
        Rng rng(11);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            UssdInstance inst = rng.instance();
            worst = std::max(worst, std::abs(p_suc_max(inst) - oracle::grid_optimize_success(inst).probability));
        }
        return worst;
    }});
    c.push_back({"success", "born_rule", 1e-10, [] {
        Rng rng(12);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            UssdInstance inst = rng.instance();
            ProtocolRun run = run_protocol(inst, optimal_strategy(inst));
            worst = std::max(worst, std::abs(p_suc_max(inst) - run.ancilla[0].probability));
        }
        return worst;
    }});
    c.push_back({"success", "strategy_independence", 1e-12, [] {
        Rng rng(13);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            UssdInstance inst = rng.instance();
            UssdStrategy s = optimal_strategy(inst);
            double base = run_protocol(inst, s).ancilla[0].probability;
            UssdStrategy t = s.with_eta(rng.uniform(0.0, kPi / 2), rng.uniform(0.0, 2 * kPi));
            t.ancilla_init = Qubit2(std::cos(0.3), std::sin(0.3) * std::exp(Complex(0.0, 1.1)));
            worst = std::max(worst, std::abs(run_protocol(inst, t).ancilla[0].probability - base));
        }
        return worst;
    }});

    c.push_back({"separability", "wootters_at_star", 1e-10, [] {
        Rng rng(21);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            UssdInstance inst = rng.instance();
            ProtocolRun run = run_protocol(inst, separable_strategy(inst));
            worst = std::max(worst, wootters_concurrence(partial_trace(run.gamma, {Qubit::S, Qubit::A})));
        }
        return worst;
    }});
    c.push_back({"separability", "grid_min_concurrence", 1e-6, [] {
        UssdInstance inst = make_instance(0.2, 0.4, 0.0);
        return oracle::grid_min_concurrence(inst, optimal_strategy(inst)).concurrence;
    }});
    c.push_back({"separability", "grid_argmin", 1e-3, [] {
        UssdInstance inst = make_instance(0.3, std::polar(0.35, 1.0), std::polar(0.6, -0.4));
        UssdStrategy s = optimal_strategy(inst);
        SeparabilityParams p = separability_params(inst, s);
        oracle::ConcurrenceMinimum m = oracle::grid_min_concurrence(inst, s);
        return std::max(std::abs(m.beta - p.beta_star), angle_gap(m.delta, p.delta_star));
    }});

    c.push_back({"decomposition", "mixture_residual", 1e-10, [] {
        Rng rng(31);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            UssdInstance inst = rng.instance();
            UssdStrategy s = separable_strategy(inst);
            SeparabilityParams p = separability_params(inst, s);
            if (!p.decomposition) {
                continue;
            }
            DensityMatrix rho = partial_trace(run_protocol(inst, s).gamma, {Qubit::S, Qubit::A});
            worst = std::max(worst, oracle::decomposition_check(rho, p).max());
        }
        return worst;
    }});
    c.push_back({"decomposition", "perturbation_detected", 0.0, [] {
        UssdInstance inst = make_instance(0.3, std::polar(0.5, 0.7), std::polar(0.4, 2.0));
        UssdStrategy s = separable_strategy(inst);
        SeparabilityParams p = separability_params(inst, s);
        p.decomposition->gamma2 += 0.1;
        DensityMatrix rho = partial_trace(run_protocol(inst, s).gamma, {Qubit::S, Qubit::A});
        return std::max(0.0, 1e-3 - oracle::decomposition_check(rho, p).max());
    }});

    c.push_back({"conservation", "tangle_s_c_vs_c_sa", 1e-10, [] {
        Rng rng(41);
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            UssdInstance inst = rng.instance();
            double lo = inst.abs_alpha();
            UssdStrategy s = strategy_with_split(inst, rng.uniform(lo, 1.0))
                                 .with_eta(rng.uniform(0.0, kPi / 2), rng.uniform(0.0, 2 * kPi));
            worst = std::max(worst, total_coherence_conservation(inst, s).deviation);
        }
        return worst;
    }});

    c.push_back({"eq12", "closed_form_vs_ledger", 1e-9, [] {
        double worst = 0.0;
        for (double p : {0.05, 0.2, 0.35, 0.5}) {
            for (double a : {0.0, 0.3, 0.6, 0.9}) {
                for (double ac : {0.0, 0.4, 0.8, 1.0}) {
                    for (double g : {0.0, 1.0, 2.5, kPi}) {
                        UssdInstance inst = make_instance(p, std::polar(a, g), ac);
                        UssdStrategy s = separable_strategy(inst);
                        CoherenceLedger l = ledger(run_protocol(inst, s).gamma);
                        ClosedFormCoherences f = closed_form_coherences(inst, s);
                        worst = std::max({worst, std::abs(l.total - f.total), std::abs(l.a_sc - f.a_sc),
                                          std::abs(l.genuine - f.genuine)});
                    }
                }
            }
        }
        return worst;
    }});

    auto monogamy = [](auto metric) {
        return [metric] {
            Rng rng(51);
            double worst = 0.0;
            for (int i = 0; i < 200; ++i) {
                PureState psi = rng.state3();
                worst = std::max(worst, metric(psi, ledger(psi)));
            }
            return worst;
        };
    };
    c.push_back({"monogamy", "decomposition_spread", 1e-9,
                 monogamy([](const PureState&, const CoherenceLedger& l) { return l.decomposition_spread(); })});
    c.push_back({"monogamy", "pivot_spread", 1e-9,
                 monogamy([](const PureState&, const CoherenceLedger& l) { return l.pivot_spread(); })});
    c.push_back({"monogamy", "hyperdeterminant", 1e-9, monogamy([](const PureState& psi, const CoherenceLedger& l) {
                     return std::abs(l.genuine - three_tangle(psi));
                 })});
    c.push_back({"monogamy", "ckw_nonnegative", 1e-10,
                 monogamy([](const PureState&, const CoherenceLedger& l) { return std::max(0.0, -l.genuine); })});
    c.push_back({"monogamy", "ghz_and_w", 1e-12, [] {
        Register reg{Qubit::S, Qubit::C, Qubit::A};
        CVector ghz = CVector::Zero(8);
        ghz(0) = ghz(7) = 1.0;
        CVector w = CVector::Zero(8);
        w(1) = w(2) = w(4) = 1.0;
        return std::max(std::abs(three_tangle(PureState::normalized(reg, ghz)) - 1.0),
                        three_tangle(PureState::normalized(reg, w)));
    }});

    c.push_back({"lu", "ledger_invariance", 1e-9, [] {
        Rng rng(61);
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            PureState psi = rng.state3();
            Unitary u = tensor(tensor(single_qubit(Qubit::S, rng.unitary()), single_qubit(Qubit::C, rng.unitary())),
                               single_qubit(Qubit::A, rng.unitary()));
            worst = std::max(worst, max_ledger_gap(ledger(psi), ledger(apply(u, psi))));
        }
        return worst;
    }});
    c.push_back({"lu", "embedding_invariance", 1e-9, [] {
        Rng rng(62);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            UssdInstance inst = rng.instance();
            Embedding e = canonical_embedding(inst);
            Matrix2 us = rng.unitary();
            Matrix2 uc = rng.unitary();
            Embedding f{us * e.xi, us * e.xi_bar, uc * e.phi, uc * e.phi_bar};
            UssdStrategy s = separable_strategy(inst);
            worst = std::max(worst, max_ledger_gap(ledger(run_protocol(inst, s, e).gamma),
                                                   ledger(run_protocol(inst, s, f).gamma)));
        }
        return worst;
    }});

    c.push_back({"berry", "gauge_invariance", 1e-10, [] {
        Rng rng(71);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            UssdInstance inst = make_instance(rng.uniform(0.05, 0.95), std::polar(rng.uniform(0.1, 0.9), rng.uniform(0.0, 2 * kPi)),
                                              std::polar(rng.uniform(0.1, 1.0), rng.uniform(0.0, 2 * kPi)));
            Embedding e = canonical_embedding(inst);
            double base = bargmann_phase(inst, e);
            std::array<double, 3> gauge{rng.uniform(0.0, 2 * kPi), rng.uniform(0.0, 2 * kPi), rng.uniform(0.0, 2 * kPi)};
            worst = std::max(worst, angle_gap(base, bargmann_phase(inst, e, gauge)));
        }
        return worst;
    }});
    c.push_back({"berry", "real_overlaps", 1e-10, [] {
        double worst = 0.0;
        for (double a : {0.2, 0.5, 0.8}) {
            for (double ac : {0.1, 0.6, 1.0}) {
                worst = std::max(worst, std::abs(bargmann_phase(make_instance(0.3, a, ac))));
            }
        }
        return worst;
    }});
    c.push_back({"berry", "teleport_branches", 1e-10, [] {
        double worst = 0.0;
        for (double rho : {0.1, 0.3, 0.5, 0.7}) {
            for (double mu : {0.4, 1.2, 2.0, 2.9}) {
                TeleportInstance t{rho, mu, 0.8, std::nullopt};
                for (BranchSign s : {BranchSign::Plus, BranchSign::Minus}) {
                    BranchRecord rec = branch_to_ussd(t, s);
                    double g = bargmann_phase(rec.ussd, rec.embedding);
                    worst = std::max(worst, std::min(angle_gap(g, 0.0), angle_gap(g, kPi)));
                }
            }
        }
        return worst;
    }});

    c.push_back({"teleport", "total_success", 1e-12, [] {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            double rho = (kPi / 4) * i / 20;
            for (double mu : {0.0, 0.7, 1.5708, 2.4, kPi}) {
                for (double nu : {0.0, 2.0, 4.5}) {
                    TeleportInstance t{rho, mu, nu, std::nullopt};
                    worst = std::max(worst, std::abs(total_success_probability(t) - (1.0 - std::sin(2 * rho))));
                }
            }
        }
        return worst;
    }});
    c.push_back({"teleport", "fidelity", 1e-10, [] {
        double worst = 0.0;
        for (double rho : {0.0, kPi / 8, 0.6}) {
            for (double mu : {0.3, 1.7, 2.8}) {
                TeleportInstance t{rho, mu, 1.3, std::nullopt};
                for (BranchSign s : {BranchSign::Plus, BranchSign::Minus}) {
                    for (UssdOutcome o : {UssdOutcome::Zero, UssdOutcome::One}) {
                        TeleportRun run = run_teleport(t, s, o);
                        if (run.c_state) {
                            worst = std::max(worst, 1.0 - run.fidelity);
                        }
                    }
                }
            }
        }
        return worst;
    }});
    c.push_back({"teleport", "eq17_vs_ledger", 1e-9, [] {
        double worst = 0.0;
        for (double rho : {0.0, 0.2, kPi / 8, 0.6}) {
            for (double mu : {0.0, 0.5, kPi / 2, 2.5, kPi}) {
                TeleportInstance t{rho, mu, 0.4, std::nullopt};
                for (BranchSign s : {BranchSign::Plus, BranchSign::Minus}) {
                    BranchRecord rec = branch_to_ussd(t, s);
                    CoherenceLedger l = ledger(run_protocol(rec.ussd, separable_strategy(rec.ussd), rec.embedding).gamma);
                    ClosedFormCoherences f = branch_coherences(t, s);
                    worst = std::max({worst, std::abs(l.total - f.total), std::abs(l.a_sc - f.a_sc),
                                      std::abs(l.genuine - f.genuine), l.c_a});
                }
            }
        }
        return worst;
    }});
    c.push_back({"teleport", "square_mean_root_rho0", 1e-8, [] {
        return std::abs(square_mean_root(0.0, CoherenceKind::Total) - kPi * kPi / 16);
    }});

    c.push_back({"quadrature", "node_doubling", 1e-9, [] {
        double worst = 0.0;
        for (CoherenceKind k : {CoherenceKind::Total, CoherenceKind::ASC, CoherenceKind::SC}) {
            worst = std::max(worst, std::abs(square_mean_root(kPi / 8, k, 64) - square_mean_root(kPi / 8, k, 128)));
        }
        return worst;
    }});
    c.push_back({"quadrature", "clenshaw_curtis_oracle", 1e-10, [] {
        const double rho = kPi / 8;
        const double s = std::sin(2 * rho);
        auto f = [&](double mu) {
            double sum = 0.0;
            for (double sign : {1.0, -1.0}) {
                double p = 0.5 * (1.0 + sign * s * std::cos(mu));
                double ci = std::pow(std::sin(mu), 2) * std::pow(std::cos(2 * rho), 2) / (4 * p * p);
                sum += p * std::sqrt(ci);
            }
            return 0.5 * sum * std::sin(mu);
        };
        auto rows = oracle::quadrature_refine(f, {65, 129}, 0.0, kPi);
        double oracle_value = rows.back().value * rows.back().value;
        return std::max(rows.back().delta, std::abs(oracle_value - square_mean_root(rho, CoherenceKind::Total)));
    }});

    c.push_back({"fig2", "monotone_p_suc", 1e-12, [] {
        double violation = 0.0;
        double prev0 = 0.0;
        double prevpi = 0.0;
        for (int i = 0; i <= 100; ++i) {
            double ac = std::min(i / 100.0, 1.0 - 1e-9);
            double p0 = p_suc_max(make_instance(0.2, 0.4, ac));
            double ppi = p_suc_max(make_instance(0.2, std::polar(0.4, kPi), ac));
            if (i > 0) {
                violation = std::max({violation, p0 - prev0, prevpi - ppi});
            }
            prev0 = p0;
            prevpi = ppi;
        }
        return violation;
    }});
    c.push_back({"fig2", "limit_gamma_pi", 1e-6, [] {
        return std::abs(p_suc_max(make_instance(0.2, std::polar(0.4, kPi), 1.0 - 1e-9)) - 1.0);
    }});
    c.push_back({"fig3", "monotone_ratio", 1e-10, [] {
        double violation = 0.0;
        double prev = -1.0;
        for (int i = 0; i < 100; ++i) {
            double a = (1.0 - 1e-9) * i / 99.0;
            UssdInstance inst = make_instance(0.4, std::polar(a, kPi / 2), 0.8);
            ClosedFormCoherences f = closed_form_coherences(inst, separable_strategy(inst));
            double ratio = f.a_sc / f.total;
            if (optimal_case(inst) == OptimalCase::II) {
                violation = std::max(violation, std::abs(ratio - 1.0));
            }
            violation = std::max(violation, prev - ratio);
            prev = ratio;
        }
        return violation;
    }});
    c.push_back({"fig3", "band_argmax", 1e-3, [] {
        CoherenceBand b = coherence_band(0.4, 0.5, 0.8);
        double worst = 0.0;
        for (double g : b.argmin) {
            worst = std::max(worst, std::abs(std::cos(g) + 0.8));
        }
        return b.argmin.empty() ? 1.0 : worst;
    }});
    c.push_back({"fig4", "proportion_profile", 1e-10, [] {
        std::vector<double> tangles;
        for (int i = 0; i < 50; ++i) {
            tangles.push_back(i / 49.0);
        }
        auto rows = fig4_sweep(tangles);
        double v = std::max(std::abs(rows.front().proportion - 1.0), std::abs(rows.back().proportion));
        for (std::size_t i = 1; i < rows.size(); ++i) {
            v = std::max(v, rows[i].proportion - rows[i - 1].proportion);
        }
        return v;
    }});
    return c;
}

}  // namespace

CommandResult run_selftest(const RunConfig& cfg) {
    std::vector<Check> checks;
    for (auto& ch : battery()) {
        if (cfg.only.empty() || ch.group == cfg.only || ch.name.find(cfg.only) != std::string::npos) {
            checks.push_back(std::move(ch));
        }
    }
    if (checks.empty()) {
        return CommandResult{2, "", "error: --only '" + cfg.only + "' matched no checks\n"};
    }

    Table t;
    t.add_meta("tool", std::string(kToolName) + " " + tool_version());
    t.add_meta("command", "selftest");
    t.add_meta("only", cfg.only.empty() ? "all" : cfg.only);
    t.add_meta("tolerance_override", cfg.tolerance ? format_number(*cfg.tolerance) : "none");
    t.columns = {"group", "check", "residual", "tolerance", "pass"};

    std::string failures;
    int failed = 0;
    for (const auto& ch : checks) {
        double tol = cfg.tolerance.value_or(ch.tolerance);
        double r = 0.0;
        std::string note;
        try {
            r = ch.residual();
        } catch (const std::exception& e) {
            r = std::numeric_limits<double>::infinity();
            note = e.what();
        }
        bool pass = std::isfinite(r) && r <= tol;
        if (!pass) {
            ++failed;
            failures += "FAIL " + ch.group + "/" + ch.name + " residual=" + format_number(r) + " tolerance=" +
                        format_number(tol) + (note.empty() ? "" : " (" + note + ")") + "\n";
        }
        t.rows.push_back({ch.group, ch.name, r, tol, pass});
    }
    t.add_meta("checks", std::to_string(checks.size()));
    t.add_meta("failed", std::to_string(failed));
    return CommandResult{failed == 0 ? 0 : 1, render(t, cfg.format), failures};
}

}  // namespace ussdlab::cli
