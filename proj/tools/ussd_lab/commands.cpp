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

#include "commands.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ussdlab/coherence.hpp"
#include "ussdlab/errors.hpp"
#include "ussdlab/oracle.hpp"
#include "ussdlab/parallel.hpp"
#include "ussdlab/teleport.hpp"
#include "ussdlab/ussd.hpp"

#ifndef USSDLAB_VERSION
#define USSDLAB_VERSION "0.0.0"
#endif

namespace ussdlab::cli {

CommandResult run_selftest(const RunConfig& cfg);

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kOpenEdge = 1.0 - 1e-9;

// Rejected user input; the message starts with the offending flag.
class BadInput : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& message) {
    if (!ok) {
        throw BadInput(message);
    }
}

void require_finite(double v, const char* flag) {
    require(std::isfinite(v), std::string(flag) + " must be a finite number");
}

void check_discrimination(const RunConfig& cfg) {
    require_finite(cfg.p_plus, "--p-plus");
    require(cfg.p_plus >= 0.0 && cfg.p_plus <= 1.0, "--p-plus must lie in [0, 1]");
    require_finite(cfg.alpha, "--alpha");
    require_finite(cfg.alpha_phase, "--alpha-phase");
    require_finite(cfg.alpha_c, "--alpha-c");
    require_finite(cfg.alpha_c_phase, "--alpha-c-phase");
    require(cfg.alpha >= 0.0, "--alpha is a magnitude and must be nonnegative");
    if (cfg.alpha >= 1.0) {
        throw BadInput("--alpha: DegenerateOverlap: |alpha| >= 1, the two states cannot be discriminated");
    }
    require(cfg.alpha_c >= 0.0 && cfg.alpha_c <= 1.0, "--alpha-c must lie in [0, 1]");
}

void check_steps(const RunConfig& cfg) { require(cfg.steps >= 2, "--steps must be at least 2"); }

void check_nodes(const RunConfig& cfg) { require(cfg.nodes >= 2, "--nodes must be at least 2"); }

void check_teleport(const RunConfig& cfg) {
    require_finite(cfg.rho, "--rho");
    require_finite(cfg.mu, "--mu");
    require_finite(cfg.nu, "--nu");
    require(cfg.rho >= 0.0 && cfg.rho <= kPi / 4, "--rho must lie in [0, pi/4]");
    require(cfg.mu >= 0.0 && cfg.mu <= kPi, "--mu must lie in [0, pi]");
    require(cfg.nu >= 0.0 && cfg.nu < 2.0 * kPi, "--nu must lie in [0, 2 pi)");
}

Table header(const RunConfig& cfg) {
    Table t;
    t.add_meta("tool", std::string(kToolName) + " " + tool_version());
    t.add_meta("command", cfg.command);
    return t;
}

void add_discrimination_meta(Table& t, const RunConfig& cfg) {
    t.add_meta("p_plus", cfg.p_plus);
    t.add_meta("alpha", cfg.alpha);
    t.add_meta("alpha_phase", cfg.alpha_phase);
    t.add_meta("alpha_c", cfg.alpha_c);
    t.add_meta("alpha_c_phase", cfg.alpha_c_phase);
}

std::vector<double> sweep(int steps, double lo, double hi) {
    std::vector<double> v(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (steps - 1);
    }
    return v;
}

CommandResult ok(const Table& t, const RunConfig& cfg) { return CommandResult{0, render(t, cfg.format), ""}; }

template <class F>
CommandResult guarded(const RunConfig& cfg, F&& body) {
    try {
        return body();
    } catch (const BadInput& e) {
        return CommandResult{2, "", std::string("error: ") + e.what() + "\n"};
    } catch (const Error& e) {
        return CommandResult{2, "", std::string("error: ") + e.kind() + ": " + e.what() + "\n"};
    } catch (const std::exception& e) {
        return CommandResult{2, "", std::string("error: ") + cfg.command + ": " + e.what() + "\n"};
    }
}

const char* branch_name(BranchSign s) { return s == BranchSign::Plus ? "+" : "-"; }

const char* outcome_name(UssdOutcome o) {
    switch (o) {
        case UssdOutcome::Zero:
            return "0";
        case UssdOutcome::One:
            return "1";
        case UssdOutcome::Inconclusive:
            return "inconclusive";
    }
    return "";
}

const char* correction_name(Correction c, bool success) {
    if (!success) {
        return "none";
    }
    switch (c) {
        case Correction::Identity:
            return "1";
        case Correction::Z:
            return "sz";
        case Correction::X:
            return "sx";
        case Correction::IY:
            return "i*sy";
    }
    return "";
}

struct PathRow {
    BranchSign sign = BranchSign::Plus;
    UssdOutcome outcome = UssdOutcome::Zero;
    double probability = 0.0;
    double branch_probability = 0.0;
    double alpha = 0.0;
    double alpha_c = 0.0;
    double gamma = 0.0;
    double branch_success = 0.0;
    bool success = false;
    Correction correction = Correction::Identity;
    std::optional<double> fidelity;
};

std::vector<PathRow> teleport_paths(const TeleportInstance& inst) {
    std::vector<PathRow> rows;
    const double s = std::sin(2.0 * inst.channel_angle);
    const bool degenerate = s >= 1.0;
    for (BranchSign sign : {BranchSign::Plus, BranchSign::Minus}) {
        double pb = 0.5 * (sign == BranchSign::Plus ? 1.0 + s * std::cos(inst.mu) : 1.0 - s * std::cos(inst.mu));
        if (degenerate) {
            PathRow r;
            r.sign = sign;
            r.outcome = UssdOutcome::Inconclusive;
            r.probability = pb;
            r.branch_probability = pb;
            r.alpha = sign == BranchSign::Plus ? 1.0 : -1.0;
            r.alpha_c = std::cos(inst.mu);
            r.gamma = sign == BranchSign::Plus ? 0.0 : kPi;
            rows.push_back(r);
            continue;
        }
        BranchRecord rec = branch_to_ussd(inst, sign);
        for (UssdOutcome o : {UssdOutcome::Zero, UssdOutcome::One, UssdOutcome::Inconclusive}) {
            TeleportRun run = run_teleport(inst, sign, o);
            PathRow r;
            r.sign = sign;
            r.outcome = o;
            r.probability = run.probability;
            r.branch_probability = rec.probability;
            r.alpha = rec.ussd.alpha.real();
            r.alpha_c = rec.ussd.alpha_c.real();
            r.gamma = rec.ussd.gamma;
            r.branch_success = rec.success_probability;
            r.success = run.success;
            r.correction = run.correction;
            if (run.c_state) {
                r.fidelity = run.fidelity;
            }
            rows.push_back(r);
        }
    }
    return rows;
}

}  // namespace

const char* tool_version() { return USSDLAB_VERSION; }

RunConfig defaults_for(const std::string& command) {
    RunConfig cfg;
    cfg.command = command;
    if (command == "fig2") {
        cfg.p_plus = 0.2;
        cfg.alpha = 0.4;
    } else if (command == "fig3") {
        cfg.p_plus = 0.4;
        cfg.alpha_c = 0.8;
        cfg.alpha_phase = kPi / 2;
    } else if (command == "fig4") {
        cfg.steps = 51;
    } else if (command == "selftest") {
        cfg.format = Format::Json;
    }
    return cfg;
}

CommandResult cmd_eval(const RunConfig& cfg) {
    return guarded(cfg, [&] {
        check_discrimination(cfg);
        UssdInstance inst = make_instance(cfg.p_plus, std::polar(cfg.alpha, cfg.alpha_phase),
                                          std::polar(cfg.alpha_c, cfg.alpha_c_phase));
        UssdStrategy strat = separable_strategy(inst);
        SeparabilityParams sep = separability_params(inst, strat);
        ProtocolRun run = run_protocol(inst, strat);
        CoherenceLedger led = ledger(run.gamma);
        ClosedFormCoherences cf = closed_form_coherences(inst, strat);
        double p_max = p_suc_max(inst);
        double born = run.ancilla[0].probability;
        oracle::SuccessOptimum grid = oracle::grid_optimize_success(inst);

        Table t = header(cfg);
        add_discrimination_meta(t, cfg);
        t.columns = {"quantity", "closed_form", "numeric", "deviation"};
        auto value = [&](const char* name, Cell v) { t.rows.push_back({std::string(name), v, {}, {}}); };
        double worst = 0.0;
        auto pair = [&](const char* name, double closed, double numeric) {
            double dev = std::abs(closed - numeric);
            worst = std::max(worst, dev);
            t.rows.push_back({std::string(name), closed, numeric, dev});
        };
        auto numeric = [&](const char* name, double v) { t.rows.push_back({std::string(name), {}, v, {}}); };

        value("p_plus", inst.p_plus);
        value("p_minus", inst.p_minus);
        value("swapped", inst.swapped);
        value("r_plus", inst.r_plus);
        value("r_minus", inst.r_minus);
        value("gamma", inst.gamma);
        value("tilde_alpha", inst.tilde_alpha);
        value("case", std::string(optimal_case(inst) == OptimalCase::I ? "i" : "ii"));
        value("abs_alpha_plus", std::abs(strat.alpha_plus));
        value("abs_alpha_minus", std::abs(strat.alpha_minus));
        pair("p_suc_max", p_max, born);
        t.rows.push_back({std::string("p_suc_grid"), p_max, grid.probability, std::abs(p_max - grid.probability)});
        value("beta_star", sep.beta_star);
        value("delta_star", sep.delta_star);
        pair("C_I", cf.total, led.total);
        pair("C_C:AS", cf.total, led.c_as);
        pair("C_A:SC", cf.a_sc, led.a_sc);
        pair("C_g", cf.genuine, led.genuine);
        pair("C_g_hyperdeterminant", cf.genuine, three_tangle(run.gamma));
        numeric("C_S:CA", led.s_ca);
        numeric("C_S:C", led.s_c);
        numeric("C_C:A", led.c_a);
        numeric("C_A:S", led.a_s);
        pair("C_S:C_initial", cf.total, tangle(build_chi(inst), {Qubit::C}));
        t.rows.push_back({std::string("max_deviation"), {}, {}, worst});
        return ok(t, cfg);
    });
}

CommandResult cmd_fig2(const RunConfig& cfg) {
    return guarded(cfg, [&] {
        check_discrimination(cfg);
        check_steps(cfg);
        Table t = header(cfg);
        t.add_meta("p_plus", cfg.p_plus);
        t.add_meta("alpha", cfg.alpha);
        t.add_meta("steps", std::to_string(cfg.steps));
        t.columns = {"abs_alpha_c", "C_I_gamma_0", "C_I_gamma_pi_2", "C_I_gamma_pi",
                     "P_suc_max_gamma_0", "P_suc_max_gamma_pi_2", "P_suc_max_gamma_pi"};
        std::vector<double> grid = sweep(cfg.steps, 0.0, 1.0);
        auto rows = parallel_map(grid.size(), [&](std::size_t i) {
            std::vector<Cell> row{grid[i]};
            std::vector<Cell> probs;
            for (double g : {0.0, kPi / 2, kPi}) {
                UssdInstance inst = make_instance(cfg.p_plus, std::polar(cfg.alpha, g), Complex(grid[i], 0.0));
                row.push_back(closed_form_coherences(inst, optimal_strategy(inst)).total);
                probs.push_back(p_suc_max(inst));
            }
            row.insert(row.end(), probs.begin(), probs.end());
            return row;
        });
        t.rows = std::move(rows);
        return ok(t, cfg);
    });
}

CommandResult cmd_fig3(const RunConfig& cfg) {
    return guarded(cfg, [&] {
        check_discrimination(cfg);
        check_steps(cfg);
        require(cfg.alpha_c < 1.0, "--alpha-c must be below 1 (C_I vanishes at 1)");
        require(cfg.p_plus > 0.0 && cfg.p_plus < 1.0, "--p-plus must lie in (0, 1) (C_I vanishes otherwise)");
        require(cfg.band_points >= 8, "--band-points must be at least 8");
        Table t = header(cfg);
        t.add_meta("p_plus", cfg.p_plus);
        t.add_meta("alpha_c", cfg.alpha_c);
        t.add_meta("gamma", cfg.alpha_phase);
        t.add_meta("steps", std::to_string(cfg.steps));
        t.add_meta("band_points", std::to_string(cfg.band_points));
        t.add_meta("tilde_alpha", std::sqrt(std::min(cfg.p_plus, 1.0 - cfg.p_plus) / std::max(cfg.p_plus, 1.0 - cfg.p_plus)));
        t.columns = {"abs_alpha", "C_I", "C_S:CA", "C_S:C", "C_A:SC", "C_C:A",
                     "ratio_A:SC", "ratio_S:C", "band_C:A_min", "band_C:A_max",
                     "band_S:CA_min", "band_S:CA_max", "band_C:A_argmax_cos_gamma"};
        std::vector<double> grid = sweep(cfg.steps, 0.0, 1.0);
        grid.back() = kOpenEdge;
        auto rows = parallel_map(grid.size(), [&](std::size_t i) {
            double a = grid[i];
            UssdInstance inst = make_instance(cfg.p_plus, std::polar(a, cfg.alpha_phase), Complex(cfg.alpha_c, 0.0));
            ClosedFormCoherences cf = closed_form_coherences(inst, separable_strategy(inst));
            double s_c = cf.total - cf.a_sc;
            CoherenceBand band = coherence_band(cfg.p_plus, a, cfg.alpha_c, cfg.band_points);
            Cell argmax_cos;
            if (!band.flat && !band.argmin.empty()) {
                argmax_cos = std::cos(band.argmin.front());
            }
            return std::vector<Cell>{a,
                                     cf.total,
                                     s_c + cf.genuine,
                                     s_c,
                                     cf.a_sc,
                                     cf.a_sc - cf.genuine,
                                     cf.a_sc / cf.total,
                                     s_c / cf.total,
                                     band.a_sc_ratio - band.max_ratio,
                                     band.a_sc_ratio - band.min_ratio,
                                     1.0 - band.a_sc_ratio + band.min_ratio,
                                     1.0 - band.a_sc_ratio + band.max_ratio,
                                     argmax_cos};
        });
        t.rows = std::move(rows);
        return ok(t, cfg);
    });
}

CommandResult cmd_fig4(const RunConfig& cfg) {
    return guarded(cfg, [&] {
        check_steps(cfg);
        check_nodes(cfg);
        Table t = header(cfg);
        t.add_meta("steps", std::to_string(cfg.steps));
        t.add_meta("nodes", std::to_string(cfg.nodes));
        t.columns = {"tangle", "C_I", "C_S:C", "C_A:SC", "proportion_A:SC"};
        for (const Fig4Row& r : fig4_sweep(sweep(cfg.steps, 0.0, 1.0), cfg.nodes)) {
            t.rows.push_back({r.tangle, r.c_total, r.c_s_c, r.c_a_sc, r.proportion});
        }
        return ok(t, cfg);
    });
}

CommandResult cmd_teleport(const RunConfig& cfg) {
    return guarded(cfg, [&] {
        check_teleport(cfg);
        TeleportInstance inst{cfg.rho, cfg.mu, cfg.nu, std::nullopt};
        std::vector<PathRow> paths = teleport_paths(inst);
        double total = 0.0;
        for (const auto& p : paths) {
            if (p.success) {
                total += p.probability;
            }
        }
        double analytic = total_success_probability(cfg.rho);

        Table t = header(cfg);
        t.add_meta("rho", cfg.rho);
        t.add_meta("mu", cfg.mu);
        t.add_meta("nu", cfg.nu);
        t.add_meta("channel_tangle", std::pow(std::cos(2.0 * cfg.rho), 2));
        t.add_meta("total_success_simulated", total);
        t.add_meta("total_success_analytic", analytic);
        t.add_meta("total_success_deviation", std::abs(total - analytic));

        if (!cfg.sample) {
            t.columns = {"b", "outcome", "probability", "branch_probability", "alpha", "alpha_c", "gamma",
                         "branch_success", "success", "correction", "fidelity"};
            for (const auto& p : paths) {
                Cell fid;
                if (p.fidelity) {
                    fid = *p.fidelity;
                }
                t.rows.push_back({std::string(branch_name(p.sign)), std::string(outcome_name(p.outcome)),
                                  p.probability, p.branch_probability, p.alpha, p.alpha_c, p.gamma,
                                  p.branch_success, p.success, std::string(correction_name(p.correction, p.success)),
                                  fid});
            }
            return ok(t, cfg);
        }

        require(*cfg.sample >= 1, "--sample must be at least 1");
        const long long n = *cfg.sample;
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        std::vector<long long> counts(paths.size(), 0);
        long long successes = 0;
        for (long long k = 0; k < n; ++k) {
            double u = uniform(rng);
            std::size_t pick = paths.size() - 1;
            double acc = 0.0;
            for (std::size_t j = 0; j < paths.size(); ++j) {
                acc += paths[j].probability;
                if (u < acc) {
                    pick = j;
                    break;
                }
            }
            ++counts[pick];
            if (paths[pick].success) {
                ++successes;
            }
        }
        double empirical = static_cast<double>(successes) / static_cast<double>(n);
        double sigma = std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(n));
        t.add_meta("samples", std::to_string(n));
        t.add_meta("seed", std::to_string(cfg.seed));
        t.add_meta("empirical_success", empirical);
        t.add_meta("binomial_sigma", sigma);
        t.add_meta("z_score", sigma > 0.0 ? (empirical - analytic) / sigma : 0.0);
        t.columns = {"b", "outcome", "probability", "count", "frequency", "success"};
        for (std::size_t j = 0; j < paths.size(); ++j) {
            t.rows.push_back({std::string(branch_name(paths[j].sign)), std::string(outcome_name(paths[j].outcome)),
                              paths[j].probability, counts[j],
                              static_cast<double>(counts[j]) / static_cast<double>(n), paths[j].success});
        }
        return ok(t, cfg);
    });
}

CommandResult cmd_selftest(const RunConfig& cfg) {
    return guarded(cfg, [&] {
        if (cfg.tolerance) {
            require(std::isfinite(*cfg.tolerance) && *cfg.tolerance > 0.0, "--tolerance must be positive");
        }
        return run_selftest(cfg);
    });
}

CommandResult run(const RunConfig& cfg) {
    if (cfg.command == "eval") {
        return cmd_eval(cfg);
    }
    if (cfg.command == "fig2") {
        return cmd_fig2(cfg);
    }
    if (cfg.command == "fig3") {
        return cmd_fig3(cfg);
    }
    if (cfg.command == "fig4") {
        return cmd_fig4(cfg);
    }
    if (cfg.command == "teleport") {
        return cmd_teleport(cfg);
    }
    if (cfg.command == "selftest") {
        return cmd_selftest(cfg);
    }
    return CommandResult{2, "", "error: unknown command '" + cfg.command + "'\n"};
}

}  // namespace ussdlab::cli
