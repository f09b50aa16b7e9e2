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

#include "ussdlab/ussd.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ussdlab/coherence.hpp"
#include "ussdlab/errors.hpp"

namespace ussdlab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kStrategyTol = 1e-12;
// Below this the phase of a vanishing amplitude carries no information.
constexpr double kPhaseFloor = 1e-24;
// Failure probabilities below this leave no mixture to decompose.
constexpr double kFailureFloor = 1e-14;

double safe_arg(Complex z) { return std::abs(z) == 0.0 ? 0.0 : std::arg(z); }

void require_finite(double v, const char* field) {
    if (!std::isfinite(v)) {
        throw RangeError(std::string(field) + " must be finite");
    }
}

Eigen::Vector4cd kron2(const Qubit2& a, const Qubit2& b) {
    Eigen::Vector4cd out;
    out << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
    return out;
}

}  // namespace

double complement_amplitude(double a) {
    double c = (1.0 - a) * (1.0 + a);
    return c <= 1e-15 ? 0.0 : std::sqrt(c);
}

double wrap_angle(double a) {
    double w = std::remainder(a, 2.0 * kPi);
    if (w <= -kPi) {
        w += 2.0 * kPi;
    }
    return w;
}

double UssdInstance::bar_alpha_c() const { return complement_amplitude(std::abs(alpha_c)); }

UssdInstance make_instance(double p_plus, Complex alpha, Complex alpha_c) {
    require_finite(p_plus, "p_plus");
    require_finite(alpha.real(), "alpha");
    require_finite(alpha.imag(), "alpha");
    require_finite(alpha_c.real(), "alpha_c");
    require_finite(alpha_c.imag(), "alpha_c");
    if (p_plus < 0.0 || p_plus > 1.0) {
        throw RangeError("p_plus must lie in [0, 1]");
    }
    if (std::abs(alpha) >= 1.0) {
        throw DegenerateOverlap("|alpha| >= 1: the two states cannot be discriminated");
    }
    double abs_c = std::abs(alpha_c);
    if (abs_c > 1.0 + kStrategyTol) {
        throw RangeError("|alpha_c| must not exceed 1");
    }
    if (abs_c > 1.0) {
        alpha_c /= abs_c;
    }

    UssdInstance inst;
    inst.swapped = p_plus > 0.5;
    if (inst.swapped) {
        p_plus = 1.0 - p_plus;
        alpha = std::conj(alpha);
        alpha_c = std::conj(alpha_c);
    }
    inst.p_plus = p_plus;
    inst.p_minus = 1.0 - p_plus;
    inst.alpha = alpha;
    inst.alpha_c = alpha_c;
    inst.gamma_s = safe_arg(alpha);
    inst.gamma_c = safe_arg(alpha_c);
    inst.gamma = wrap_angle(inst.gamma_s + inst.gamma_c);

    double denom = 1.0 + 2.0 * std::sqrt(inst.p_plus * inst.p_minus) * (alpha * alpha_c).real();
    inst.r_plus = inst.p_plus / denom;
    inst.r_minus = inst.p_minus / denom;
    inst.tilde_alpha = std::sqrt(inst.p_plus / inst.p_minus);
    return inst;
}

Embedding canonical_embedding(const UssdInstance& inst) {
    Embedding e;
    e.xi = Qubit2(1.0, 0.0);
    e.xi_bar = Qubit2(std::conj(inst.alpha), complement_amplitude(inst.abs_alpha()));
    e.phi = Qubit2(1.0, 0.0);
    e.phi_bar = Qubit2(std::conj(inst.alpha_c), inst.bar_alpha_c());
    return e;
}

void validate_embedding(const UssdInstance& inst, const Embedding& emb, const Tolerances& tol) {
    const std::pair<const Qubit2*, const char*> vecs[] = {
        {&emb.xi, "xi"}, {&emb.xi_bar, "xi_bar"}, {&emb.phi, "phi"}, {&emb.phi_bar, "phi_bar"}};
    for (const auto& [v, name] : vecs) {
        if (std::abs(v->squaredNorm() - 1.0) > tol.overlap) {
            throw EmbeddingError(std::string(name) + " is not normalized");
        }
    }
    if (std::abs(emb.xi_bar.dot(emb.xi) - inst.alpha) > tol.overlap) {
        throw EmbeddingError("<xi_bar|xi> does not match alpha");
    }
    if (std::abs(emb.phi_bar.dot(emb.phi) - inst.alpha_c) > tol.overlap) {
        throw EmbeddingError("<phi_bar|phi> does not match alpha_c");
    }
}

PureState build_chi(const UssdInstance& inst, const Embedding& emb) {
    validate_embedding(inst, emb);
    CVector amps = std::sqrt(inst.r_plus) * kron2(emb.xi, emb.phi) +
                   std::sqrt(inst.r_minus) * kron2(emb.xi_bar, emb.phi_bar);
    return PureState(Register{Qubit::S, Qubit::C}, amps);
}

PureState build_chi(const UssdInstance& inst) { return build_chi(inst, canonical_embedding(inst)); }

double bargmann_phase(const UssdInstance& inst, const Embedding& emb, const std::array<double, 3>& gauge) {
    if (inst.p_plus <= 0.0 || inst.p_minus <= 0.0) {
        throw UndefinedPhase("the closed path needs both limits p+ -> 0 and p- -> 0");
    }
    validate_embedding(inst, emb);
    const Complex i(0.0, 1.0);
    CVector chi1 = std::exp(i * gauge[0]) * CVector(kron2(emb.xi_bar, emb.phi_bar));
    CVector chi2 = std::exp(i * gauge[1]) * build_chi(inst, emb).amplitudes();
    CVector chi3 = std::exp(i * gauge[2]) * CVector(kron2(emb.xi, emb.phi));
    Complex o12 = chi1.dot(chi2);
    Complex o23 = chi2.dot(chi3);
    Complex o31 = chi3.dot(chi1);
    constexpr double kFloor = 1e-14;
    if (std::abs(o12) < kFloor || std::abs(o23) < kFloor || std::abs(o31) < kFloor) {
        throw UndefinedPhase("an overlap along the closed path vanishes");
    }
    return wrap_angle(std::arg(o12) + std::arg(o23) + std::arg(o31));
}

double bargmann_phase(const UssdInstance& inst) { return bargmann_phase(inst, canonical_embedding(inst)); }

Qubit2 UssdStrategy::eta() const {
    return Qubit2(std::cos(beta), std::sin(beta) * std::exp(Complex(0.0, delta)));
}

UssdStrategy UssdStrategy::with_eta(double b, double d) const {
    UssdStrategy s = *this;
    s.beta = b;
    s.delta = d;
    return s;
}

void validate_strategy(const UssdInstance& inst, const UssdStrategy& strat) {
    if (std::abs(strat.alpha_plus) > 1.0 + kStrategyTol || std::abs(strat.alpha_minus) > 1.0 + kStrategyTol) {
        throw RangeError("|alpha+-| must not exceed 1");
    }
    if (std::abs(strat.alpha_plus * std::conj(strat.alpha_minus) - inst.alpha) > kStrategyTol) {
        throw RangeError("alpha+ conj(alpha-) must equal alpha");
    }
    if (!(strat.beta >= -kStrategyTol && strat.beta <= kPi / 2 + kStrategyTol)) {
        throw RangeError("beta must lie in [0, pi/2]");
    }
    if (!(strat.delta >= -kStrategyTol && strat.delta < 2 * kPi + kStrategyTol)) {
        throw RangeError("delta must lie in [0, 2 pi)");
    }
    if (std::abs(strat.ancilla_init.squaredNorm() - 1.0) > kDefaultTolerances.normalization) {
        throw RangeError("ancilla_init must be normalized");
    }
}

OptimalCase optimal_case(const UssdInstance& inst) {
    return inst.abs_alpha() < inst.tilde_alpha ? OptimalCase::I : OptimalCase::II;
}

UssdStrategy strategy_with_split(const UssdInstance& inst, double abs_alpha_plus) {
    double a = inst.abs_alpha();
    if (!(abs_alpha_plus >= a - kStrategyTol && abs_alpha_plus <= 1.0 + kStrategyTol)) {
        throw RangeError("|alpha+| must lie in [|alpha|, 1]");
    }
    abs_alpha_plus = std::clamp(abs_alpha_plus, a, 1.0);
    UssdStrategy s;
    s.alpha_plus = std::polar(abs_alpha_plus, inst.gamma_s);
    s.alpha_minus = abs_alpha_plus == 0.0 ? 0.0 : std::min(1.0, a / abs_alpha_plus);
    return s;
}

UssdStrategy optimal_strategy(const UssdInstance& inst) {
    if (optimal_case(inst) == OptimalCase::I) {
        return strategy_with_split(inst, std::sqrt(inst.abs_alpha() / inst.tilde_alpha));
    }
    return strategy_with_split(inst, 1.0);
}

double success_probability(const UssdInstance& inst, const UssdStrategy& strat) {
    validate_strategy(inst, strat);
    double ap = std::norm(strat.alpha_plus);
    double am = std::norm(strat.alpha_minus);
    return inst.r_plus * (1.0 - ap) + inst.r_minus * (1.0 - am);
}

double p_suc_max(const UssdInstance& inst) {
    double a = inst.abs_alpha();
    if (optimal_case(inst) == OptimalCase::I) {
        return inst.r_plus + inst.r_minus - 2.0 * std::sqrt(inst.r_plus * inst.r_minus) * a;
    }
    return inst.r_minus * (1.0 - a * a);
}

Eigen::Vector4cd zeta_plus(const UssdStrategy& strat) {
    Qubit2 eta = strat.eta();
    Eigen::Vector4cd z;
    z << complement_amplitude(std::abs(strat.alpha_plus)), strat.alpha_plus * eta(0), 0.0, strat.alpha_plus * eta(1);
    return z;
}

Eigen::Vector4cd zeta_minus(const UssdStrategy& strat) {
    Qubit2 eta = strat.eta();
    Eigen::Vector4cd z;
    z << 0.0, strat.alpha_minus * eta(0), complement_amplitude(std::abs(strat.alpha_minus)), strat.alpha_minus * eta(1);
    return z;
}

Eigen::Vector4cd SeparabilityParams::zeta1() const {
    if (!decomposition) {
        throw RangeError("no mixture decomposition: the failure probability vanishes");
    }
    const auto& d = *decomposition;
    return d.q1_plus * zeta_plus + d.q1_minus * std::exp(Complex(0.0, d.gamma1)) * zeta_minus;
}

Eigen::Vector4cd SeparabilityParams::zeta2() const {
    if (!decomposition) {
        throw RangeError("no mixture decomposition: the failure probability vanishes");
    }
    const auto& d = *decomposition;
    return d.q2_plus * zeta_plus + d.q2_minus * std::exp(Complex(0.0, d.gamma2)) * zeta_minus;
}

SeparabilityParams separability_params(const UssdInstance& inst, const UssdStrategy& strat) {
    validate_strategy(inst, strat);
    const double rp = inst.r_plus;
    const double rm = inst.r_minus;
    const double ac = inst.abs_alpha_c();
    const Complex i(0.0, 1.0);

    Complex sp = std::sqrt(rp) * strat.alpha_plus + std::sqrt(rm) * strat.alpha_minus * ac * std::exp(-i * inst.gamma_c);
    Complex sm = std::sqrt(rm) * strat.alpha_minus + std::sqrt(rp) * strat.alpha_plus * ac * std::exp(i * inst.gamma_c);

    SeparabilityParams out;
    out.q_plus = std::norm(sp);
    out.q_minus = std::norm(sm);
    out.omega_plus = safe_arg(sp);
    out.omega_minus = safe_arg(sm);

    double abar_p = complement_amplitude(std::abs(strat.alpha_plus));
    double abar_m = complement_amplitude(std::abs(strat.alpha_minus));
    double num = inst.p_minus * out.q_minus * abar_m * abar_m;
    double den = inst.p_plus * out.q_plus * abar_p * abar_p;
    out.beta_star = std::atan2(std::sqrt(num), std::sqrt(den));
    if (num <= kPhaseFloor || den <= kPhaseFloor) {
        out.delta_star = 0.0;
    } else {
        double d = std::fmod(out.omega_plus - out.omega_minus, 2.0 * kPi);
        out.delta_star = d < 0.0 ? d + 2.0 * kPi : d;
        if (out.delta_star >= 2.0 * kPi) {
            out.delta_star = 0.0;
        }
    }

    out.zeta_plus = zeta_plus(strat);
    out.zeta_minus = zeta_minus(strat);
    out.r_plus = rp;
    out.r_minus = rm;
    out.alpha_c = inst.alpha_c;

    double failure = rp * std::norm(strat.alpha_plus) + rm * std::norm(strat.alpha_minus) +
                     2.0 * std::sqrt(rp * rm) * (inst.alpha * inst.alpha_c).real();
    if (failure > kFailureFloor) {
        ZetaDecomposition d;
        d.q1_plus = std::sqrt(rp * out.q_plus / failure);
        d.q1_minus = std::sqrt(rm * out.q_minus / failure);
        d.gamma1 = out.omega_plus - out.omega_minus;
        double scale = inst.bar_alpha_c() * std::sqrt(rp * rm / failure);
        d.q2_plus = std::abs(strat.alpha_minus) * scale;
        d.q2_minus = std::abs(strat.alpha_plus) * scale;
        d.gamma2 = inst.gamma_s - kPi;
        out.decomposition = d;
    }
    return out;
}

UssdStrategy separable_strategy(const UssdInstance& inst) {
    UssdStrategy s = optimal_strategy(inst);
    SeparabilityParams p = separability_params(inst, s);
    return s.with_eta(p.beta_star, p.delta_star);
}

Unitary synthesize_u_sa(const UssdInstance& inst, const UssdStrategy& strat, const Embedding& emb) {
    validate_strategy(inst, strat);
    validate_embedding(inst, emb);
    const UnitaryConstraint constraints[] = {
        {kron2(emb.xi, strat.ancilla_init), zeta_plus(strat)},
        {kron2(emb.xi_bar, strat.ancilla_init), zeta_minus(strat)},
    };
    return complete_unitary(Register{Qubit::S, Qubit::A}, constraints);
}

ProtocolRun run_protocol(const UssdInstance& inst, const UssdStrategy& strat, const Embedding& emb) {
    Unitary u_sa = synthesize_u_sa(inst, strat, emb);
    PureState chi = build_chi(inst, emb);
    PureState ancilla(Register{Qubit::A}, CVector(strat.ancilla_init));

    PureState evolved = apply(u_sa, tensor(chi, ancilla));
    PureState gamma = permute(evolved, Register{Qubit::S, Qubit::A, Qubit::C});
    auto outcomes = projective_measure(gamma, Qubit::A);
    return ProtocolRun{std::move(gamma), std::move(u_sa), std::move(outcomes)};
}

ProtocolRun run_protocol(const UssdInstance& inst, const UssdStrategy& strat) {
    return run_protocol(inst, strat, canonical_embedding(inst));
}

ConservationReport total_coherence_conservation(const UssdInstance& inst, const UssdStrategy& strat,
                                                const Embedding& emb) {
    PureState chi = build_chi(inst, emb);
    ProtocolRun run = run_protocol(inst, strat, emb);
    ConservationReport r;
    r.tangle_before = tangle(chi, {Qubit::C});
    r.tangle_after = tangle(run.gamma, {Qubit::C});
    r.deviation = std::abs(r.tangle_after - r.tangle_before);
    return r;
}

ConservationReport total_coherence_conservation(const UssdInstance& inst, const UssdStrategy& strat) {
    return total_coherence_conservation(inst, strat, canonical_embedding(inst));
}

}  // namespace ussdlab
