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

// Acceptance suite: one PASS/FAIL line per criterion, at the stated tolerances.
// Usage: ussdlab_acceptance [--only N]

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "generators.hpp"
#include "ussdlab/coherence.hpp"
#include "ussdlab/oracle.hpp"
#include "ussdlab/teleport.hpp"
#include "ussdlab/ussd.hpp"

#ifdef USSDLAB_HAVE_CLI
#include "commands.hpp"
#endif

namespace ussdlab {
namespace {

using testing::Gen;
using testing::kPi;

struct Verdict {
    bool pass = true;
    std::string detail;

    // Records a measured quantity against its bound; any breach fails the criterion.
    void bound(const char* what, double value, double limit) {
        bool ok = value < limit;
        pass = pass && ok;
        append(what, value, ok ? "<" : ">=", limit);
    }
    void require(const char* what, bool ok) {
        pass = pass && ok;
        if (!detail.empty()) detail += "; ";
        detail += std::string(what) + (ok ? " ok" : " VIOLATED");
    }
    void append(const char* what, double value, const char* rel, double limit) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s=%.3g %s %.0e", what, value, rel, limit);
        if (!detail.empty()) detail += "; ";
        detail += buf;
    }
};

struct Criterion {
    int id;
    const char* title;
    std::function<Verdict()> check;
};

double angle_gap(double a, double b) { return std::abs(std::remainder(a - b, 2 * kPi)); }

Verdict optimal_success() {
    Verdict v;
    Gen gen(1001);
    double grid_gap = 0.0, born_gap = 0.0;
    for (int i = 0; i < 50; ++i) {
        UssdInstance inst = i % 2 == 0 ? gen.case_i_instance() : gen.case_ii_instance();
        double best = p_suc_max(inst);
        grid_gap = std::max(grid_gap, std::abs(best - oracle::grid_optimize_success(inst).probability));
        born_gap = std::max(born_gap, std::abs(best - run_protocol(inst, optimal_strategy(inst)).ancilla[0].probability));
    }
    v.bound("max|P-grid|", grid_gap, 1e-6);
    v.bound("max|P-born|", born_gap, 1e-10);
    v.bound("|P(0.2,0.4,0)-0.68|", std::abs(p_suc_max(make_instance(0.2, 0.4, 0.0)) - 0.68), 1e-12);
    v.bound("|P(0.4,0.9,0)-0.114|", std::abs(p_suc_max(make_instance(0.4, 0.9, 0.0)) - 0.114), 1e-12);
    return v;
}

Verdict separability() {
    Verdict v;
    Gen gen(1002);
    oracle::GridSpec grid = oracle::default_eta_grid();
    const double beta_step = (grid.axes[0].upper - grid.axes[0].lower) / (grid.axes[0].points - 1);
    const double delta_step = (grid.axes[1].upper - grid.axes[1].lower) / (grid.axes[1].points - 1);
    double worst_c = 0.0, worst_beta = 0.0, worst_delta = 0.0;
    for (int i = 0; i < 50; ++i) {
        UssdInstance inst = i % 2 == 0 ? gen.case_i_instance() : gen.case_ii_instance();
        UssdStrategy opt = optimal_strategy(inst);
        SeparabilityParams p = separability_params(inst, opt);
        ProtocolRun run = run_protocol(inst, opt.with_eta(p.beta_star, p.delta_star));
        worst_c = std::max(worst_c, wootters_concurrence(partial_trace(run.gamma, {Qubit::S, Qubit::A})));
        oracle::ConcurrenceMinimum m = oracle::grid_min_concurrence(inst, opt, grid);
        worst_beta = std::max(worst_beta, std::abs(m.beta - p.beta_star) / beta_step);
        // delta has no meaning where eta is a basis state.
        if (p.beta_star > beta_step && p.beta_star < kPi / 2 - beta_step) {
            worst_delta = std::max(worst_delta, angle_gap(m.delta, p.delta_star) / delta_step);
        }
    }
    v.bound("max C(rho_SA)", worst_c, 1e-10);
    v.bound("max|beta-beta*|/step", worst_beta, 1.0);
    v.bound("max|delta-delta*|/step", worst_delta, 1.0);
    return v;
}

Verdict conservation() {
    Verdict v;
    Gen gen(1003);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        UssdInstance inst = gen.instance();
        double lo = inst.abs_alpha();
        UssdStrategy s = strategy_with_split(inst, lo + (1.0 - lo) * gen.uniform())
                             .with_eta(gen.uniform(0.0, kPi / 2), gen.uniform(0.0, 2 * kPi));
        s.ancilla_init = gen.qubit();
        worst = std::max(worst, total_coherence_conservation(inst, s).deviation);
    }
    v.bound("max|tau(S:C)-tau(C:SA)|", worst, 1e-10);
    return v;
}

Verdict closed_forms() {
    Verdict v;
    double worst = 0.0;
    for (int ip = 0; ip < 10; ++ip) {
        double p = 0.05 + 0.1 * ip;
        for (int ia = 0; ia < 10; ++ia) {
            double a = 0.95 * ia / 9.0;
            for (int ic = 0; ic < 10; ++ic) {
                double ac = ic / 9.0;
                for (int ig = 0; ig < 8; ++ig) {
                    // Split gamma unevenly between the system and environment phases.
                    double g = 2 * kPi * ig / 8.0;
                    UssdInstance inst = make_instance(p, std::polar(a, 0.6 * g), std::polar(ac, 0.4 * g));
                    UssdStrategy s = separable_strategy(inst);
                    ClosedFormCoherences c = closed_form_coherences(inst, s);
                    CoherenceLedger l = ledger(run_protocol(inst, s).gamma);
                    worst = std::max({worst, std::abs(c.total - l.total), std::abs(c.total - l.c_as),
                                      std::abs(c.a_sc - l.a_sc), std::abs(c.genuine - l.genuine)});
                }
            }
        }
    }
    v.bound("max deviation over 8000 points", worst, 1e-9);
    return v;
}

Verdict monogamy() {
    Verdict v;
    Gen gen(1005);
    double spread = 0.0, pivots = 0.0, hyper = 0.0;
    for (int i = 0; i < 1000; ++i) {
        PureState psi = gen.state3();
        CoherenceLedger l = ledger(psi);
        spread = std::max(spread, l.decomposition_spread());
        pivots = std::max(pivots, l.pivot_spread());
        hyper = std::max(hyper, std::abs(l.genuine - three_tangle(psi)));
    }
    v.bound("decomposition spread", spread, 1e-9);
    v.bound("pivot spread", pivots, 1e-9);
    v.bound("|C_g-3tangle|", hyper, 1e-9);
    return v;
}

Verdict fig2() {
    Verdict v;
    bool dec = true, inc = true;
    double prev0 = 2.0, prevpi = -1.0;
    for (int i = 0; i <= 100; ++i) {
        double ac = i / 100.0;
        double p0 = p_suc_max(make_instance(0.2, 0.4, ac));
        double ppi = p_suc_max(make_instance(0.2, std::polar(0.4, kPi), ac));
        dec = dec && p0 <= prev0;
        inc = inc && ppi >= prevpi;
        prev0 = p0;
        prevpi = ppi;
    }
    v.require("gamma=0 decreasing", dec);
    v.require("gamma=pi increasing", inc);
    double limit = p_suc_max(make_instance(0.2, std::polar(0.4, kPi), 1.0 - 1e-9));
    v.bound("|P(gamma=pi,|a_c|=1-1e-9)-1|", std::abs(limit - 1.0), 1e-6);
    return v;
}

Verdict fig3() {
    Verdict v;
    const double p = 0.4, ac = 0.8;
    const double threshold = std::sqrt(p / (1.0 - p));
    bool monotone = true;
    double prev = -1.0, case_ii_gap = 0.0;
    for (int i = 0; i <= 100; ++i) {
        double a = std::min(i / 100.0, 1.0 - 1e-9);
        UssdInstance inst = make_instance(p, std::polar(a, kPi / 2), ac);
        ClosedFormCoherences c = closed_form_coherences(inst, separable_strategy(inst));
        double ratio = c.a_sc / c.total;
        if (a < threshold) {
            monotone = monotone && ratio >= prev;
            prev = ratio;
        } else {
            case_ii_gap = std::max(case_ii_gap, std::abs(ratio - 1.0));
        }
    }
    v.require("C_A:SC/C_I increasing on case i", monotone);
    v.bound("max|C_A:SC/C_I-1| on case ii", case_ii_gap, 1e-10);
    // The C_C:A/C_I band edge peaks where C_g/C_I is smallest.
    double worst = 0.0;
    for (double a : {0.2, 0.4, 0.6, 0.8}) {
        CoherenceBand b = coherence_band(p, a, ac);
        for (double g : b.argmin) {
            worst = std::max(worst, std::abs(std::cos(g) + ac));
        }
        if (b.argmin.empty()) worst = 1.0;
    }
    v.bound("max|cos(argmax C_C:A/C_I)+0.8|", worst, 1e-3);
    return v;
}

Verdict teleport_totals() {
    Verdict v;
    double closed = 0.0, branch = 0.0, simulated = 0.0, fid = 0.0;
    for (int i = 0; i < 100; ++i) {
        double rho = (kPi / 4) * i / 100.0;
        double want = 1.0 - std::sin(2 * rho);
        closed = std::max(closed, std::abs(total_success_probability(rho) - want));
        for (int j = 0; j < 20; ++j) {
            for (int k = 0; k < 20; ++k) {
                TeleportInstance t{rho, kPi * j / 19.0, 2 * kPi * k / 20.0, std::nullopt};
                branch = std::max(branch, std::abs(total_success_probability(t) - want));
                if (k % 5 != 0) continue;
                double sum = 0.0;
                for (BranchSign s : {BranchSign::Plus, BranchSign::Minus}) {
                    for (UssdOutcome o : {UssdOutcome::Zero, UssdOutcome::One}) {
                        TeleportRun r = run_teleport(t, s, o);
                        sum += r.probability;
                        if (r.c_state) fid = std::max(fid, 1.0 - r.fidelity);
                    }
                }
                simulated = std::max(simulated, std::abs(sum - want));
            }
        }
    }
    v.bound("closed form", closed, 1e-12);
    v.bound("branch-weighted over (mu,nu)", branch, 1e-12);
    v.bound("state-vector simulation", simulated, 1e-12);
    v.bound("max(1-fidelity) on success", fid, 1e-10);
    return v;
}

Verdict fig4() {
    Verdict v;
    double worst = 0.0;
    for (double rho : {0.0, 0.1, 0.25, kPi / 8, 0.5, 0.7}) {
        for (int j = 0; j <= 12; ++j) {
            TeleportInstance t{rho, kPi * j / 12.0, 0.7, std::nullopt};
            for (BranchSign s : {BranchSign::Plus, BranchSign::Minus}) {
                BranchRecord rec = branch_to_ussd(t, s);
                ClosedFormCoherences f = branch_coherences(t, s);
                CoherenceLedger l = ledger(run_protocol(rec.ussd, separable_strategy(rec.ussd), rec.embedding).gamma);
                worst = std::max({worst, std::abs(f.total - l.total), std::abs(f.a_sc - l.a_sc),
                                  std::abs(f.genuine - l.genuine)});
            }
        }
    }
    v.bound("branch closed forms vs ledger", worst, 1e-9);
    v.bound("|<C_I>(0)-pi^2/16|", std::abs(square_mean_root(0.0, CoherenceKind::Total) - kPi * kPi / 16), 1e-8);
    std::vector<double> tangles;
    for (int i = 0; i < 50; ++i) tangles.push_back(i / 49.0);
    std::vector<Fig4Row> rows = fig4_sweep(tangles);
    bool monotone = true;
    for (std::size_t i = 1; i < rows.size(); ++i) monotone = monotone && rows[i].proportion <= rows[i - 1].proportion;
    v.bound("|proportion(tangle 0)-1|", std::abs(rows.front().proportion - 1.0), 1e-12);
    v.bound("|proportion(tangle 1)|", std::abs(rows.back().proportion), 1e-12);
    v.require("monotone on 50 points", monotone);
    return v;
}

Verdict berry() {
    Verdict v;
    Gen gen(1010);
    double additive = 0.0, gauge = 0.0;
    for (int i = 0; i < 100; ++i) {
        UssdInstance inst = make_instance(gen.uniform(0.05, 0.95), std::polar(gen.uniform(0.1, 0.9), gen.phase()),
                                          std::polar(gen.uniform(0.1, 0.9), gen.phase()));
        Embedding e = gen.rotated_embedding(inst);
        double phase = bargmann_phase(inst, e);
        additive = std::max(additive, angle_gap(phase, inst.gamma_s + inst.gamma_c));
        gauge = std::max(gauge, angle_gap(phase, bargmann_phase(inst, e, {gen.phase(), gen.phase(), gen.phase()})));
    }
    double branches = 0.0;
    for (double rho : {0.1, kPi / 8, 0.6}) {
        for (double mu : {0.3, 1.2, 2.9}) {
            TeleportInstance t{rho, mu, 0.4, std::nullopt};
            // cos(mu) < 0 flips the environment phase, so either branch may land on pi.
            for (BranchSign sign : {BranchSign::Plus, BranchSign::Minus}) {
                BranchRecord rec = branch_to_ussd(t, sign);
                double phase = bargmann_phase(rec.ussd, rec.embedding);
                branches = std::max(branches, std::min(angle_gap(phase, 0.0), angle_gap(phase, kPi)));
            }
        }
    }
    v.bound("max|phase-(g_s+g_c)| mod 2pi", additive, 1e-10);
    v.bound("gauge invariance", gauge, 1e-10);
    v.bound("teleport branches off {0,pi}", branches, 1e-10);
    return v;
}

Verdict determinism() {
    Verdict v;
#ifdef USSDLAB_HAVE_CLI
    for (const char* command : {"eval", "fig2", "fig3", "fig4", "teleport", "selftest"}) {
        cli::RunConfig cfg = cli::defaults_for(command);
        if (cfg.command == "teleport") {
            cfg.rho = 0.3;
            cfg.mu = 1.0;
            cfg.nu = 0.5;
            cfg.sample = 500;
            cfg.seed = 11;
        }
        if (cfg.command == "eval") {
            cfg.alpha = 0.3;
            cfg.alpha_c = 0.5;
            cfg.alpha_c_phase = 2.0;
        }
        cli::CommandResult a = cli::run(cfg);
        cli::CommandResult b = cli::run(cfg);
        std::string what = std::string(command) + " byte-identical";
        v.require(what.c_str(), a.exit_code == 0 && a.output == b.output);
    }
#else
    v.require("cli not built", false);
#endif
    return v;
}

std::vector<Criterion> criteria() {
    return {
        {1, "optimal success probability", optimal_success},
        {2, "separability of rho_SA", separability},
        {3, "total coherence conservation", conservation},
        {4, "closed-form coherences vs ledger", closed_forms},
        {5, "monogamy equalities", monogamy},
        {6, "success probability sweep", fig2},
        {7, "coherence transformation sweep", fig3},
        {8, "teleportation totals", teleport_totals},
        {9, "branch coherences and averages", fig4},
        {10, "Bargmann phase", berry},
        {11, "cli determinism", determinism},
    };
}

}  // namespace
}  // namespace ussdlab

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--only" && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
            return 2;
        }
    }
    int failed = 0, ran = 0;
    for (const auto& c : ussdlab::criteria()) {
        if (only != 0 && c.id != only) continue;
        ++ran;
        ussdlab::Verdict v;
        try {
            v = c.check();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        std::printf("%s acceptance_%02d %s: %s\n", v.pass ? "PASS" : "FAIL", c.id, c.title, v.detail.c_str());
        if (!v.pass) ++failed;
    }
    if (ran == 0) {
        std::fprintf(stderr, "no criterion %d\n", only);
        return 2;
    }
    return failed == 0 ? 0 : 1;
}
