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

#include "ussdlab/teleport.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ussdlab/errors.hpp"
#include "ussdlab/parallel.hpp"
#include "ussdlab/quadrature.hpp"

namespace ussdlab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleSlack = 1e-12;

double checked_channel_angle(double rho) {
    if (!std::isfinite(rho) || rho < -kAngleSlack || rho > kPi / 4 + kAngleSlack) {
        throw RangeError("channel_angle must lie in [0, pi/4]");
    }
    return std::clamp(rho, 0.0, kPi / 4);
}

bool degenerate_channel(double rho) { return std::sin(2.0 * rho) >= 1.0; }

double branch_probability(double rho, double mu, BranchSign sign) {
    double x = std::sin(2.0 * rho) * std::cos(mu);
    return 0.5 * (sign == BranchSign::Plus ? 1.0 + x : 1.0 - x);
}

Qubit2 phi_vector(const TeleportInstance& inst) {
    return Qubit2(std::cos(inst.mu / 2), std::sin(inst.mu / 2) * std::exp(Complex(0.0, inst.nu)));
}

}  // namespace

void validate(const TeleportInstance& inst) {
    checked_channel_angle(inst.channel_angle);
    if (!std::isfinite(inst.mu) || inst.mu < 0.0 || inst.mu > kPi) {
        throw RangeError("mu must lie in [0, pi]");
    }
    if (!std::isfinite(inst.nu) || inst.nu < 0.0 || inst.nu >= 2.0 * kPi) {
        throw RangeError("nu must lie in [0, 2 pi)");
    }
    if (inst.frame) {
        for (const Matrix2* u : {&inst.frame->u_b, &inst.frame->u_c}) {
            if ((u->adjoint() * *u - Matrix2::Identity()).cwiseAbs().maxCoeff() > kDefaultTolerances.unitarity) {
                throw RangeError("frame operators must be unitary");
            }
        }
    }
}

PureState channel_state(double channel_angle) {
    double rho = checked_channel_angle(channel_angle);
    CVector amps = CVector::Zero(4);
    amps(0) = (std::cos(rho) + std::sin(rho)) / std::sqrt(2.0);
    amps(3) = (std::cos(rho) - std::sin(rho)) / std::sqrt(2.0);
    return PureState::normalized(Register{Qubit::B, Qubit::C}, amps);
}

PureState channel_state(const TeleportInstance& inst) {
    validate(inst);
    PureState base = channel_state(inst.channel_angle);
    if (!inst.frame) {
        return base;
    }
    return apply(tensor(single_qubit(Qubit::B, inst.frame->u_b), single_qubit(Qubit::C, inst.frame->u_c)), base);
}

PureState state_to_send(const TeleportInstance& inst, Qubit q) {
    return PureState(Register{q}, CVector(phi_vector(inst)));
}

PureState alice_circuit(const TeleportInstance& inst) {
    PureState omega = tensor(state_to_send(inst), channel_state(inst));
    if (inst.frame) {
        omega = apply(single_qubit(Qubit::B, inst.frame->u_b.adjoint()), omega);
    }
    omega = apply(Unitary(Register{Qubit::S, Qubit::B}, gates::cnot()), omega);
    return apply(single_qubit(Qubit::S, gates::hadamard()), omega);
}

BranchRecord branch_to_ussd(const TeleportInstance& inst, BranchSign sign) {
    validate(inst);
    if (degenerate_channel(inst.channel_angle)) {
        throw DegenerateOverlap("rho = pi/4: the branch states coincide");
    }
    const double rho = inst.channel_angle;
    const double s = std::sin(2.0 * rho);
    const bool plus = sign == BranchSign::Plus;

    BranchRecord rec;
    rec.sign = sign;
    rec.probability = branch_probability(rho, inst.mu, sign);
    rec.ussd = make_instance(0.5, Complex(plus ? s : -s, 0.0), Complex(std::cos(inst.mu), 0.0));

    const Matrix2 sx = gates::pauli_x();
    const Matrix2 sz = gates::pauli_z();
    Qubit2 phi = phi_vector(inst);
    rec.embedding.xi = Qubit2(std::cos(rho), plus ? std::sin(rho) : -std::sin(rho));
    rec.embedding.xi_bar = sx * rec.embedding.xi;
    rec.embedding.phi = plus ? phi : Qubit2(sx * phi);
    rec.embedding.phi_bar = plus ? Qubit2(sz * phi) : Qubit2(sx * sz * phi);

    rec.success_probability = p_suc_max(rec.ussd);
    rec.coherences = closed_form_coherences(rec.ussd, separable_strategy(rec.ussd));
    return rec;
}

Correction correction_for(BranchSign sign, UssdOutcome s) {
    if (s == UssdOutcome::Inconclusive) {
        return Correction::Identity;
    }
    bool one = s == UssdOutcome::One;
    if (sign == BranchSign::Plus) {
        return one ? Correction::Z : Correction::Identity;
    }
    return one ? Correction::IY : Correction::X;
}

Matrix2 correction_matrix(Correction c) {
    switch (c) {
        case Correction::Identity:
            return gates::identity();
        case Correction::Z:
            return gates::pauli_z();
        case Correction::X:
            return gates::pauli_x();
        case Correction::IY:
            return Complex(0.0, 1.0) * gates::pauli_y();
    }
    return gates::identity();
}

TeleportRun run_teleport(const TeleportInstance& inst, BranchSign sign, UssdOutcome s) {
    BranchRecord rec = branch_to_ussd(inst, sign);
    TeleportRun run;
    run.correction = correction_for(sign, s);
    run.success = s != UssdOutcome::Inconclusive;

    PureState omega = alice_circuit(inst);
    auto branch = project_out(omega, Qubit::B, sign == BranchSign::Plus ? Qubit2(1.0, 0.0) : Qubit2(0.0, 1.0));
    if (!branch) {
        return run;
    }
    UssdStrategy strat = separable_strategy(rec.ussd);
    Unitary u_sa = synthesize_u_sa(rec.ussd, strat, rec.embedding);
    PureState ancilla(Register{Qubit::A}, CVector(strat.ancilla_init));
    PureState gamma = apply(u_sa, tensor(branch->state, ancilla), {Qubit::S, Qubit::A});

    auto heralded = project_out(gamma, Qubit::A, run.success ? Qubit2(1.0, 0.0) : Qubit2(0.0, 1.0));
    if (!heralded) {
        return run;
    }
    Qubit2 s_basis = s == UssdOutcome::One ? Qubit2(0.0, 1.0) : Qubit2(1.0, 0.0);
    if (s == UssdOutcome::Inconclusive) {
        s_basis = strat.eta();
    }
    auto bob = project_out(heralded->state, Qubit::S, s_basis);
    if (!bob) {
        return run;
    }
    run.probability = branch->probability * heralded->probability * bob->probability;

    Matrix2 fix = correction_matrix(run.correction);
    if (inst.frame) {
        fix = fix * inst.frame->u_c.adjoint();
    }
    PureState out = apply(single_qubit(Qubit::C, fix), bob->state);
    run.fidelity = fidelity(out, state_to_send(inst, Qubit::C));
    run.c_state = std::move(out);
    return run;
}

double total_success_probability(double channel_angle) {
    return 1.0 - std::sin(2.0 * checked_channel_angle(channel_angle));
}

double total_success_probability(const TeleportInstance& inst) {
    validate(inst);
    if (degenerate_channel(inst.channel_angle)) {
        return 0.0;
    }
    double total = 0.0;
    for (BranchSign sign : {BranchSign::Plus, BranchSign::Minus}) {
        BranchRecord rec = branch_to_ussd(inst, sign);
        total += rec.probability * rec.success_probability;
    }
    return total;
}

ClosedFormCoherences branch_coherences(const TeleportInstance& inst, BranchSign sign) {
    validate(inst);
    const double s = std::sin(2.0 * inst.channel_angle);
    const double c2 = std::cos(2.0 * inst.channel_angle);
    const double p = branch_probability(inst.channel_angle, inst.mu, sign);
    ClosedFormCoherences out;
    if (p <= 0.0) {
        return out;
    }
    double pre = std::pow(std::sin(inst.mu), 2) / (4.0 * p * p);
    out.total = pre * c2 * c2;
    out.a_sc = pre * 2.0 * (s - s * s);
    out.genuine = out.a_sc;
    return out;
}

double square_mean_root(double channel_angle, CoherenceKind kind, int nodes) {
    double rho = checked_channel_angle(channel_angle);
    if (nodes < 1) {
        throw RangeError("quadrature needs at least one node");
    }
    if (degenerate_channel(rho)) {
        return 0.0;
    }
    QuadratureRule rule = gauss_legendre(nodes, 0.0, kPi);
    double integral = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        TeleportInstance t;
        t.channel_angle = rho;
        t.mu = rule.nodes[i];
        double sum = 0.0;
        for (BranchSign sign : {BranchSign::Plus, BranchSign::Minus}) {
            ClosedFormCoherences c = branch_coherences(t, sign);
            double v = 0.0;
            switch (kind) {
                case CoherenceKind::Total:
                    v = c.total;
                    break;
                case CoherenceKind::ASC:
                    v = c.a_sc;
                    break;
                case CoherenceKind::SC:
                    v = c.total - c.a_sc;
                    break;
            }
            sum += branch_probability(rho, t.mu, sign) * std::sqrt(std::max(0.0, v));
        }
        integral += rule.weights[i] * sum * std::sin(t.mu);
    }
    double mean = 0.5 * integral;
    return mean * mean;
}

std::vector<Fig4Row> fig4_sweep(const std::vector<double>& tangles, int nodes) {
    for (double t : tangles) {
        if (!std::isfinite(t) || t < 0.0 || t > 1.0) {
            throw RangeError("channel tangle must lie in [0, 1]");
        }
    }
    return parallel_map(tangles.size(), [&](std::size_t i) {
        Fig4Row row;
        row.tangle = tangles[i];
        double rho = 0.5 * std::acos(std::sqrt(row.tangle));
        if (degenerate_channel(rho)) {
            row.proportion = 1.0;
            return row;
        }
        row.c_total = square_mean_root(rho, CoherenceKind::Total, nodes);
        row.c_s_c = square_mean_root(rho, CoherenceKind::SC, nodes);
        row.c_a_sc = square_mean_root(rho, CoherenceKind::ASC, nodes);
        row.proportion = row.c_total > 0.0 ? row.c_a_sc / row.c_total : 1.0;
        return row;
    });
}

}  // namespace ussdlab
