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
 * Unambiguous sub-state discrimination of a qubit S entangled with an
 * environment qubit C, assisted by an ancilla A.
 *
 * The shared state is
 *
 *     |chi> = sqrt(r+) |xi>_s |phi>_c + sqrt(r-) |xi_bar>_s |phi_bar>_c
 *
 * with overlaps <xi_bar|xi> = alpha and <phi_bar|phi> = alpha_c. A joint
 * unitary U_SA maps |xi>|k> and |xi_bar>|k> to
 *
 *     |zeta+> = abar+ |0>_s|0>_a + alpha+ |eta>_s|1>_a
 *     |zeta-> = abar- |1>_s|0>_a + alpha- |eta>_s|1>_a
 *
 * where alpha+ conj(alpha-) = alpha and |eta> = cos(beta)|0> + sin(beta) e^{i delta}|1>.
 * Measuring A in {|0>, |1>} heralds success (outcome 0) or failure.
 */

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ussdlab/qcore.hpp"

namespace ussdlab {

/// One discrimination problem. Always canonical: p_plus <= 1/2.
struct UssdInstance {
    double p_plus = 0.5;
    double p_minus = 0.5;
    Complex alpha;    // <xi_bar|xi>
    Complex alpha_c;  // <phi_bar|phi>
    bool swapped = false;  // the +/- labels of the caller's input were exchanged

    double r_plus = 0.5;
    double r_minus = 0.5;
    double gamma_s = 0.0;
    double gamma_c = 0.0;
    double gamma = 0.0;        // gamma_s + gamma_c wrapped to (-pi, pi]
    double tilde_alpha = 1.0;  // sqrt(p+/p-)

    double abs_alpha() const { return std::abs(alpha); }
    double abs_alpha_c() const { return std::abs(alpha_c); }
    /// sqrt(1 - |alpha_c|^2)
    double bar_alpha_c() const;
};

/// Validates and canonicalizes. Inputs with p_plus > 1/2 are relabeled, which
/// conjugates both overlaps. Throws DegenerateOverlap for |alpha| >= 1 and
/// RangeError for p_plus outside [0, 1] or |alpha_c| > 1.
UssdInstance make_instance(double p_plus, Complex alpha, Complex alpha_c);

/// Concrete single-qubit vectors realizing an instance's overlaps.
struct Embedding {
    Qubit2 xi;
    Qubit2 xi_bar;
    Qubit2 phi;
    Qubit2 phi_bar;
};

/// |xi> = |0>, |xi_bar> = conj(alpha)|0> + sqrt(1-|alpha|^2)|1>, and the same for C.
Embedding canonical_embedding(const UssdInstance& inst);
/// Throws EmbeddingError when norms or overlaps disagree with `inst`.
void validate_embedding(const UssdInstance& inst, const Embedding& emb,
                        const Tolerances& tol = kDefaultTolerances);

/// |chi> over (S, C).
PureState build_chi(const UssdInstance& inst, const Embedding& emb);
PureState build_chi(const UssdInstance& inst);

/// arg<chi1|chi2> + arg<chi2|chi3> + arg<chi3|chi1>, wrapped to (-pi, pi], for
/// chi1 = chi(p+ = 0), chi2 = chi, chi3 = chi(p- = 0). `gauge` multiplies the
/// three states by e^{i gauge[j]} before evaluation.
double bargmann_phase(const UssdInstance& inst, const Embedding& emb,
                      const std::array<double, 3>& gauge = {0.0, 0.0, 0.0});
double bargmann_phase(const UssdInstance& inst);

struct UssdStrategy {
    Complex alpha_plus;
    Complex alpha_minus;
    double beta = 0.0;   // [0, pi/2]
    double delta = 0.0;  // [0, 2 pi)
    Qubit2 ancilla_init = Qubit2(1.0, 0.0);

    Qubit2 eta() const;
    UssdStrategy with_eta(double beta, double delta) const;
};

/// Throws RangeError unless alpha+ conj(alpha-) = alpha, |alpha+-| <= 1 and
/// the eta angles and ancilla state are in range.
void validate_strategy(const UssdInstance& inst, const UssdStrategy& strat);

enum class OptimalCase { I, II };

/// Case I when |alpha| < tilde_alpha.
OptimalCase optimal_case(const UssdInstance& inst);

/// Feasible strategy with the given |alpha+| in [|alpha|, 1]; the phase of
/// alpha is carried by alpha+, alpha- is real and nonnegative.
UssdStrategy strategy_with_split(const UssdInstance& inst, double abs_alpha_plus);

/// Maximizer of the success probability. beta and delta are left at zero.
UssdStrategy optimal_strategy(const UssdInstance& inst);

/// r+ (1 - |alpha+|^2) + r- (1 - |alpha-|^2).
double success_probability(const UssdInstance& inst, const UssdStrategy& strat);

/// Closed-form optimum for the two cases.
double p_suc_max(const UssdInstance& inst);

struct ZetaDecomposition {
    double q1_plus = 0.0;
    double q1_minus = 0.0;
    double gamma1 = 0.0;
    double q2_plus = 0.0;
    double q2_minus = 0.0;
    double gamma2 = 0.0;
};

/// Parameters that write rho_SA as a mixture of two pure states and the eta
/// angles that make both of them product states.
struct SeparabilityParams {
    double q_plus = 0.0;
    double q_minus = 0.0;
    double omega_plus = 0.0;
    double omega_minus = 0.0;
    double beta_star = 0.0;
    double delta_star = 0.0;

    /// Absent when the failure probability vanishes (rho_SA is then already
    /// a product of |0>_a with a state of S).
    std::optional<ZetaDecomposition> decomposition;

    // Data needed to reassemble the mixture. The zeta vectors use the eta of
    // the strategy passed to separability_params.
    Eigen::Vector4cd zeta_plus;
    Eigen::Vector4cd zeta_minus;
    double r_plus = 0.0;
    double r_minus = 0.0;
    Complex alpha_c;

    Eigen::Vector4cd zeta1() const;
    Eigen::Vector4cd zeta2() const;
};

SeparabilityParams separability_params(const UssdInstance& inst, const UssdStrategy& strat);

/// Optimal strategy with (beta*, delta*) installed, so rho_SA is separable.
UssdStrategy separable_strategy(const UssdInstance& inst);

/// |zeta+> and |zeta-> over (S, A).
Eigen::Vector4cd zeta_plus(const UssdStrategy& strat);
Eigen::Vector4cd zeta_minus(const UssdStrategy& strat);

/// U_SA over (S, A) mapping |xi>|k> to |zeta+> and |xi_bar>|k> to |zeta->.
Unitary synthesize_u_sa(const UssdInstance& inst, const UssdStrategy& strat, const Embedding& emb);

struct ProtocolRun {
    PureState gamma;  // over (S, A, C)
    Unitary u_sa;
    std::vector<MeasurementOutcome> ancilla;  // outcome 0 = success
};

ProtocolRun run_protocol(const UssdInstance& inst, const UssdStrategy& strat, const Embedding& emb);
ProtocolRun run_protocol(const UssdInstance& inst, const UssdStrategy& strat);

struct ConservationReport {
    double tangle_before = 0.0;  // S:C of |chi>
    double tangle_after = 0.0;   // C:SA of |Gamma>
    double deviation = 0.0;
};

ConservationReport total_coherence_conservation(const UssdInstance& inst, const UssdStrategy& strat,
                                                const Embedding& emb);
ConservationReport total_coherence_conservation(const UssdInstance& inst, const UssdStrategy& strat);

/// sqrt(1 - a^2). Magnitudes within round-off of 1 give exactly 0, since the
/// square root would otherwise turn a 1e-16 defect into a 1e-8 amplitude.
double complement_amplitude(double a);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double a);

}  // namespace ussdlab
