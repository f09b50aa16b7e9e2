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

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "table.hpp"

namespace ussdlab::cli {

inline constexpr const char* kToolName = "ussd_lab";

const char* tool_version();

struct RunConfig {
    std::string command;

    double p_plus = 0.5;
    double alpha = 0.0;
    double alpha_phase = 0.0;
    double alpha_c = 0.0;
    double alpha_c_phase = 0.0;

    double rho = 0.0;
    double mu = 0.0;
    double nu = 0.0;

    int steps = 101;
    int nodes = 64;
    int band_points = 720;

    std::optional<long long> sample;
    std::uint64_t seed = 0;

    std::optional<double> tolerance;  // selftest override for every check
    std::string only;                 // selftest filter

    Format format = Format::Csv;
    std::string output;  // empty: stdout
};

/// Parameter defaults of each command (fig2: p+ = 0.2, |alpha| = 0.4;
/// fig3: p+ = 0.4, |alpha_c| = 0.8, gamma = pi/2; fig4: 51 tangle steps).
RunConfig defaults_for(const std::string& command);

struct CommandResult {
    int exit_code = 0;
    std::string output;       // rendered table
    std::string diagnostics;  // for stderr
};

CommandResult cmd_eval(const RunConfig& cfg);
CommandResult cmd_fig2(const RunConfig& cfg);
CommandResult cmd_fig3(const RunConfig& cfg);
CommandResult cmd_fig4(const RunConfig& cfg);
CommandResult cmd_teleport(const RunConfig& cfg);
CommandResult cmd_selftest(const RunConfig& cfg);

/// Dispatches on cfg.command; unknown commands give exit code 2.
CommandResult run(const RunConfig& cfg);

}  // namespace ussdlab::cli
