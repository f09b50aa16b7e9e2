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
 * Tangle-based coherence measures for pure states of up to three qubits.
 */

#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "ussdlab/qcore.hpp"
#include "ussdlab/ussd.hpp"

namespace ussdlab {

/// Wootters concurrence of a two-qubit density matrix.
double wootters_concurrence(const DensityMatrix& rho, const Tolerances& tol = kDefaultTolerances);

/// 2 |psi00 psi11 - psi01 psi10| without normalizing `psi`.
double amplitude_concurrence(const Eigen::Vector4cd& psi);

/// Concurrence across the cut `part` : rest. One side must be a single qubit.
double pure_concurrence(const PureState& psi, std::span<const Qubit> part);
double pure_concurrence(const PureState& psi, std::initializer_list<Qubit> part);

/// Squared concurrence across `part` : rest, 4 det(rho_x) for the single-qubit side x.
double tangle(const PureState& psi, std::span<const Qubit> part);
double tangle(const PureState& psi, std::initializer_list<Qubit> part);

/// Squared Wootters concurrence of the reduced state of the pair (x, y).
double pair_tangle(const PureState& psi, Qubit x, Qubit y);

/// 4 |hyperdeterminant| of the 2x2x2 amplitude tensor.
double three_tangle(const PureState& psi);

/// tau(pivot : rest) - tau(pivot, y) - tau(pivot, z).
double ckw_residual(const PureState& psi, Qubit pivot);

/// All tangle-based coherences of a pure state over the qubits S, C and A.
struct CoherenceLedger {
    double total = 0.0;  // C_S:C + C_A:SC

    double s_ca = 0.0;
    double c_as = 0.0;
    double a_sc = 0.0;

    double s_c = 0.0;
    double c_a = 0.0;
    double a_s = 0.0;

    double genuine = 0.0;  // total - (s_c + c_a + a_s)

    /// Largest pairwise gap between the three bipartite decompositions of the total.
    double decomposition_spread() const;
    /// Largest gap between the genuine coherence computed around each pivot.
    double pivot_spread() const;
};

/// Register must be a permutation of (S, C, A); throws ShapeError otherwise.
CoherenceLedger ledger(const PureState& psi);

struct ClosedFormCoherences {
    double total = 0.0;
    double a_sc = 0.0;
    double genuine = 0.0;
};

/// Closed forms in terms of r+-, |alpha|, |alpha_c| and the strategy amplitudes.
/// `total` equals C_C:AS for every strategy; `total` and `a_sc` coincide with
/// the ledger only when C_A:S vanishes, which holds at the separable angles.
ClosedFormCoherences closed_form_coherences(const UssdInstance& inst, const UssdStrategy& strat);

/// Extremes over the Berry phase of C_g / C_I at separable optimal strategies.
struct CoherenceBand {
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    std::vector<double> argmin;  // gamma values in [0, 2 pi)
    std::vector<double> argmax;
    bool flat = false;           // no gamma dependence; argmin and argmax are empty
    double a_sc_ratio = 0.0;     // C_A:SC / C_I, which does not depend on gamma
};

/// Scans `points` equally spaced gamma in [0, 2 pi) and refines every local
/// extremum by golden-section search. Throws RangeError when C_I vanishes.
CoherenceBand coherence_band(double p_plus, double abs_alpha, double abs_alpha_c, int points = 720);

}  // namespace ussdlab
