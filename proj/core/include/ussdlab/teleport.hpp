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
 * Probabilistic teleportation of a qubit state through the partially
 * entangled channel (M_b x 1)|psi+>, M_b = cos(rho) 1 + sin(rho) sz, with
 * unambiguous sub-state discrimination on Alice's side.
 */

#pragma once

#include <optional>
#include <vector>

#include "ussdlab/coherence.hpp"
#include "ussdlab/qcore.hpp"
#include "ussdlab/ussd.hpp"

namespace ussdlab {

/// Local unitaries applied to the channel, (u_b x u_c)(M_b x 1)|psi+>.
/// Alice undoes u_b before her circuit and Bob undoes u_c before his correction.
struct LocalFrame {
    Matrix2 u_b = Matrix2::Identity();
    Matrix2 u_c = Matrix2::Identity();
};

struct TeleportInstance {
    double channel_angle = 0.0;  // rho in [0, pi/4]
    double mu = 0.0;             // [0, pi]
    double nu = 0.0;             // [0, 2 pi)
    std::optional<LocalFrame> frame;
};

/// Throws RangeError for out-of-range angles or a non-unitary frame.
void validate(const TeleportInstance& inst);

/// Channel over (B, C); tangle cos^2(2 rho).
PureState channel_state(double channel_angle);
PureState channel_state(const TeleportInstance& inst);

/// cos(mu/2)|0> + sin(mu/2) e^{i nu}|1> on qubit `q`.
PureState state_to_send(const TeleportInstance& inst, Qubit q = Qubit::S);

/// |Omega> over (S, B, C): CNOT with S controlling B, then H on S.
PureState alice_circuit(const TeleportInstance& inst);

enum class BranchSign { Plus, Minus };  // B measured as 0 or 1

struct BranchRecord {
    BranchSign sign = BranchSign::Plus;
    double probability = 0.0;  // (1 +- sin(2 rho) cos(mu)) / 2
    UssdInstance ussd;         // p+ = 1/2, alpha = +-sin(2 rho), alpha_c = cos(mu)
    Embedding embedding;       // the physical single-qubit states of the branch
    double success_probability = 0.0;
    ClosedFormCoherences coherences;
};

/// Throws DegenerateOverlap at rho = pi/4, where both branch states coincide.
BranchRecord branch_to_ussd(const TeleportInstance& inst, BranchSign sign);

/// The USSD measurement: success with S found in |0> or |1>, or failure.
enum class UssdOutcome { Zero, One, Inconclusive };

/// Bob's correction: 1, sz, sx or i sy.
enum class Correction { Identity, Z, X, IY };

Correction correction_for(BranchSign sign, UssdOutcome s);
Matrix2 correction_matrix(Correction c);

struct TeleportRun {
    bool success = false;
    double probability = 0.0;     // joint probability of (sign, outcome)
    std::optional<PureState> c_state;  // Bob's qubit after correction; absent at zero probability
    Correction correction = Correction::Identity;
    double fidelity = 0.0;        // with the state to send
};

/// Full state-vector simulation of one outcome path.
TeleportRun run_teleport(const TeleportInstance& inst, BranchSign sign, UssdOutcome s);

/// 1 - sin(2 rho).
double total_success_probability(double channel_angle);
/// Branch-weighted optimal success probabilities for a concrete state.
double total_success_probability(const TeleportInstance& inst);

/// Closed forms for C_I, C_A:SC and C_g of one branch.
ClosedFormCoherences branch_coherences(const TeleportInstance& inst, BranchSign sign);

enum class CoherenceKind { Total, ASC, SC };

/// [ (1/4 pi) Int (P+ sqrt(C+) + P- sqrt(C-)) sin(mu) dmu dnu ]^2 by Gauss-Legendre in mu.
double square_mean_root(double channel_angle, CoherenceKind kind, int nodes = 64);

struct Fig4Row {
    double tangle = 0.0;
    double c_total = 0.0;
    double c_s_c = 0.0;
    double c_a_sc = 0.0;
    double proportion = 0.0;  // c_a_sc / c_total, limit value 1 at tangle 0
};

/// Rows in input order; rho = arccos(sqrt(tangle)) / 2.
std::vector<Fig4Row> fig4_sweep(const std::vector<double>& tangles, int nodes = 64);

}  // namespace ussdlab
