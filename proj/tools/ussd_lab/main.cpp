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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

using ussdlab::cli::Format;
using ussdlab::cli::RunConfig;

namespace {

void add_output_flags(CLI::App* sub, RunConfig& cfg, std::string& format) {
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", cfg.output, "write to this file instead of stdout");
}

void add_discrimination_flags(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--p-plus", cfg.p_plus, "prior weight p+");
    sub->add_option("--alpha", cfg.alpha, "|alpha|, overlap of the system states");
    sub->add_option("--alpha-phase", cfg.alpha_phase, "arg alpha (radians)");
    sub->add_option("--alpha-c", cfg.alpha_c, "|alpha_c|, overlap of the environment states");
    sub->add_option("--alpha-c-phase", cfg.alpha_c_phase, "arg alpha_c (radians)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unambiguous sub-state discrimination lab"};
    app.set_version_flag("--version", std::string(ussdlab::cli::kToolName) + " " + ussdlab::cli::tool_version());
    app.require_subcommand(1);

    const char* names[] = {"eval", "fig2", "fig3", "fig4", "teleport", "selftest"};
    RunConfig cfgs[6];
    std::string formats[6];
    for (int i = 0; i < 6; ++i) {
        cfgs[i] = ussdlab::cli::defaults_for(names[i]);
        formats[i] = cfgs[i].format == Format::Json ? "json" : "csv";
    }

    CLI::App* eval = app.add_subcommand("eval", "instance summary with closed-form and numeric coherences");
    add_discrimination_flags(eval, cfgs[0]);
    add_output_flags(eval, cfgs[0], formats[0]);

    CLI::App* fig2 = app.add_subcommand("fig2", "initial coherence and optimal success versus |alpha_c|");
    add_discrimination_flags(fig2, cfgs[1]);
    fig2->add_option("--steps", cfgs[1].steps, "sweep points");
    add_output_flags(fig2, cfgs[1], formats[1]);

    CLI::App* fig3 = app.add_subcommand("fig3", "coherence contributions versus |alpha|");
    add_discrimination_flags(fig3, cfgs[2]);
    fig3->add_option("--steps", cfgs[2].steps, "sweep points");
    fig3->add_option("--band-points", cfgs[2].band_points, "Berry-phase scan points for the bands");
    add_output_flags(fig3, cfgs[2], formats[2]);

    CLI::App* fig4 = app.add_subcommand("fig4", "square mean root coherences versus channel tangle");
    fig4->add_option("--steps", cfgs[3].steps, "tangle grid points");
    fig4->add_option("--nodes", cfgs[3].nodes, "quadrature nodes");
    add_output_flags(fig4, cfgs[3], formats[3]);

    CLI::App* tele = app.add_subcommand("teleport", "probabilistic teleportation transcript");
    tele->add_option("--rho", cfgs[4].rho, "channel angle in [0, pi/4]");
    tele->add_option("--mu", cfgs[4].mu, "polar angle of the state to send");
    tele->add_option("--nu", cfgs[4].nu, "azimuth of the state to send");
    long long samples = 0;
    CLI::Option* sample_opt = tele->add_option("--sample", samples, "draw this many outcome paths");
    tele->add_option("--seed", cfgs[4].seed, "seed for --sample");
    add_output_flags(tele, cfgs[4], formats[4]);

    CLI::App* self = app.add_subcommand("selftest", "oracle cross-checks");
    double tolerance = 0.0;
    CLI::Option* tol_opt = self->add_option("--tolerance", tolerance, "override every check tolerance");
    self->add_option("--only", cfgs[5].only, "run one group, or checks whose name contains this text");
    add_output_flags(self, cfgs[5], formats[5]);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    for (int i = 0; i < 6; ++i) {
        if (!app.got_subcommand(names[i])) {
            continue;
        }
        RunConfig cfg = cfgs[i];
        cfg.format = formats[i] == "json" ? Format::Json : Format::Csv;
        if (i == 4 && sample_opt->count() > 0) {
            cfg.sample = samples;
        }
        if (i == 5 && tol_opt->count() > 0) {
            cfg.tolerance = tolerance;
        }
        ussdlab::cli::CommandResult result = ussdlab::cli::run(cfg);
        if (!result.diagnostics.empty()) {
            std::cerr << result.diagnostics;
        }
        if (result.exit_code == 2) {
            return 2;
        }
        if (cfg.output.empty()) {
            std::cout << result.output;
        } else {
            std::ofstream out(cfg.output, std::ios::binary);
            if (!out) {
                std::cerr << "error: --output: cannot open " << cfg.output << "\n";
                return 2;
            }
            out << result.output;
        }
        return result.exit_code;
    }
    return 2;
}
