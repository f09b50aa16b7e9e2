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

/**
 * @file
 * Brute-force verifiers. Nothing here calls the closed-form routines it is
 * meant to check: only state primitives and the concurrence measures are used.
 */

#pragma once

#include <functional>
#include <vector>

#include "ussdlab/qcore.hpp"
#include "ussdlab/ussd.hpp"

namespace ussdlab::oracle {

struct GridAxis {
    double lower = 0.0;
    double upper = 1.0;
    int points = 2;
};

struct GridSpec {
    std::vector<GridAxis> axes;
    int refinement_depth = 2;

    /// Throws RangeError for fewer than two points or unordered bounds.
    void validate() const;
};

struct SuccessOptimum {
    double abs_alpha_plus = 0.0;
    double probability = 0.0;
};

/// 10^4 points over [|alpha|, 1] with two refinement rounds.
GridSpec default_success_grid(const UssdInstance& inst);

/// Maximizes r+(1 - |alpha+|^2) + r-(1 - |alpha|^2/|alpha+|^2) over the first
/// axis, clipped to the feasible range [|alpha|, 1].
SuccessOptimum grid_optimize_success(const UssdInstance& inst, const GridSpec& grid);
SuccessOptimum grid_optimize_success(const UssdInstance& inst);

struct ConcurrenceMinimum {
    double beta = 0.0;
    double delta = 0.0;
    double concurrence = 0.0;
};

/// Coarse (beta, delta) grid followed by alternating golden-section line
/// searches. rho_SA is assembled from r+-, alpha_c and the zeta vectors.
GridSpec default_eta_grid();
ConcurrenceMinimum grid_min_concurrence(const UssdInstance& inst, const UssdStrategy& base, const GridSpec& grid);
ConcurrenceMinimum grid_min_concurrence(const UssdInstance& inst, const UssdStrategy& base);

/// rho_SA = tr_C of sqrt(r+)|zeta+>|phi> + sqrt(r-)|zeta->|phi_bar>, built directly.
DensityMatrix assemble_rho_sa(const UssdInstance& inst, const UssdStrategy& strat);

struct DecompositionResidual {
    double matrix = 0.0;        // max |rho_SA - zeta1 zeta1^H - zeta2 zeta2^H|
    double norm_plus = 0.0;     // |q1+^2 + q2+^2 - r+|
    double norm_minus = 0.0;    // |q1-^2 + q2-^2 - r-|
    double cross = 0.0;         // |q1+ q1- e^{i g1} + q2+ q2- e^{i g2} - sqrt(r+ r-) conj(alpha_c)|

    double max() const;
};

/// Requires params.decomposition; throws RangeError otherwise.
DecompositionResidual decomposition_check(const DensityMatrix& rho_sa, const SeparabilityParams& params);

struct ConvergenceRow {
    int nodes = 0;
    double value = 0.0;
    double delta = 0.0;  // |value - previous value|, 0 for the first row
};

/// Clenshaw-Curtis estimates of Int_a^b f for each node count. Throws
/// NumericalError when f returns a non-finite value.
std::vector<ConvergenceRow> quadrature_refine(const std::function<double(double)>& f,
                                              const std::vector<int>& node_counts, double a, double b);

}  // namespace ussdlab::oracle
