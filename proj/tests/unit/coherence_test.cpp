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

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "ussdlab/coherence.hpp"
#include "ussdlab/errors.hpp"
#include "ussdlab/ussd.hpp"

namespace ussdlab {
namespace {

using testing::Gen;
using testing::kPi;

const Register kSCA{Qubit::S, Qubit::C, Qubit::A};

PureState ghz() {
    CVector v = CVector::Zero(8);
    v(0) = v(7) = 1.0 / std::sqrt(2.0);
    return PureState(kSCA, v);
}

PureState w_state() {
    CVector v = CVector::Zero(8);
    v(1) = v(2) = v(4) = 1.0 / std::sqrt(3.0);
    return PureState(kSCA, v);
}

DensityMatrix werner(double p) {
    Eigen::Vector4cd bell(1.0, 0.0, 0.0, 1.0);
    bell /= std::sqrt(2.0);
    CMatrix m = p * bell * bell.adjoint() + (1.0 - p) / 4.0 * CMatrix::Identity(4, 4);
    return DensityMatrix(Register{Qubit::S, Qubit::A}, m);
}

PureState local_rotate(const PureState& psi, Gen& gen) {
    PureState out = psi;
    for (Qubit q : psi.reg().labels()) {
        out = apply(single_qubit(q, gen.unitary2()), out, {q});
    }
    return out;
}

double ledger_gap(const CoherenceLedger& x, const CoherenceLedger& y) {
    return std::max({std::abs(x.total - y.total), std::abs(x.s_ca - y.s_ca), std::abs(x.c_as - y.c_as),
                     std::abs(x.a_sc - y.a_sc), std::abs(x.s_c - y.s_c), std::abs(x.c_a - y.c_a),
                     std::abs(x.a_s - y.a_s), std::abs(x.genuine - y.genuine)});
}

TEST(WoottersTest, BellIsMaximal) { EXPECT_NEAR(wootters_concurrence(werner(1.0)), 1.0, 1e-12); }

TEST(WoottersTest, ProductIsZero) {
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = 1.0;
    EXPECT_NEAR(wootters_concurrence(DensityMatrix(Register{Qubit::S, Qubit::A}, m)), 0.0, 1e-15);
}

TEST(WoottersTest, WernerFamily) {
    // C = max(0, (3p - 1) / 2) for the Werner mixture.
    for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.77, 0.99}) {
        EXPECT_NEAR(wootters_concurrence(werner(p)), std::max(0.0, (3 * p - 1) / 2), 1e-12) << "p " << p;
    }
}

TEST(WoottersTest, WrongDimension) {
    EXPECT_THROW(wootters_concurrence(DensityMatrix(Register{Qubit::S}, CMatrix::Identity(2, 2) / 2.0)),
                 ShapeError);
    EXPECT_THROW(wootters_concurrence(ghz().density()), ShapeError);
}

TEST(WoottersTest, SeparableReducedStateAtSeparabilityAngles) {
    UssdInstance inst = make_instance(0.2, 0.4, 0.0);
    ProtocolRun run = run_protocol(inst, separable_strategy(inst));
    EXPECT_LT(wootters_concurrence(partial_trace(run.gamma, {Qubit::S, Qubit::A})), 1e-10);
}

TEST(WoottersProperty, PureStatesAgreeWithAmplitudeFormula) {
    Gen gen(201);
    for (int trial = 0; trial < 300; ++trial) {
        PureState psi = gen.state(Register{Qubit::S, Qubit::A});
        double direct = amplitude_concurrence(Eigen::Vector4cd(psi.amplitudes()));
        ASSERT_NEAR(wootters_concurrence(psi.density()), direct, 1e-10);
    }
}

TEST(WoottersProperty, LocalUnitaryInvariance) {
    Gen gen(202);
    for (int trial = 0; trial < 200; ++trial) {
        PureState psi = gen.state3();
        DensityMatrix rho = partial_trace(psi, {Qubit::S, Qubit::A});
        double before = wootters_concurrence(rho);
        DensityMatrix after = partial_trace(local_rotate(psi, gen), {Qubit::S, Qubit::A});
        ASSERT_NEAR(wootters_concurrence(after), before, 1e-9);
    }
}

TEST(AmplitudeConcurrenceTest, BellAndDeterminantForm) {
    EXPECT_NEAR(amplitude_concurrence(Eigen::Vector4cd(1, 0, 0, 1) / std::sqrt(2.0)), 1.0, 1e-15);
    Gen gen(203);
    for (int trial = 0; trial < 100; ++trial) {
        // Unnormalized vectors are taken as given.
        Eigen::Vector4cd v(gen.gaussian(), gen.gaussian(), gen.gaussian(), gen.gaussian());
        double direct = 2.0 * std::abs(v(0) * v(3) - v(1) * v(2));
        ASSERT_NEAR(amplitude_concurrence(v), direct, 1e-10);
    }
}

TEST(AmplitudeConcurrenceTest, ZetaVectorsVanishAtSeparability) {
    Gen gen(204);
    for (int trial = 0; trial < 50; ++trial) {
        UssdInstance inst = gen.case_i_instance();
        UssdStrategy s = separable_strategy(inst);
        SeparabilityParams p = separability_params(inst, s);
        ASSERT_TRUE(p.decomposition.has_value());
        ASSERT_LT(amplitude_concurrence(p.zeta1()), 1e-10);
        ASSERT_LT(amplitude_concurrence(p.zeta2()), 1e-10);
    }
}

TEST(PureConcurrenceTest, BellAndPartitionErrors) {
    PureState bell(Register{Qubit::S, Qubit::A}, Eigen::Vector4cd(1, 0, 0, 1) / std::sqrt(2.0));
    EXPECT_NEAR(pure_concurrence(bell, {Qubit::S}), 1.0, 1e-15);
    EXPECT_THROW(pure_concurrence(bell, std::span<const Qubit>{}), PartitionError);
    EXPECT_THROW(pure_concurrence(bell, {Qubit::S, Qubit::A}), PartitionError);
    EXPECT_THROW(tangle(ghz(), {Qubit::S, Qubit::S}), PartitionError);
    EXPECT_THROW(tangle(ghz(), {Qubit::B}), UnknownQubit);
}

TEST(PureConcurrenceProperty, TangleIsLinearEntropy) {
    Gen gen(205);
    for (int trial = 0; trial < 300; ++trial) {
        PureState psi = gen.state3();
        for (Qubit q : psi.reg().labels()) {
            double purity = partial_trace(psi, {q}).purity();
            ASSERT_NEAR(tangle(psi, {q}), 2.0 * (1.0 - purity), 1e-10);
            double c = pure_concurrence(psi, {q});
            ASSERT_NEAR(c * c, tangle(psi, {q}), 1e-12);
        }
        // Complementary partitions give the same value.
        ASSERT_NEAR(tangle(psi, {Qubit::C, Qubit::A}), tangle(psi, {Qubit::S}), 1e-12);
    }
}

TEST(ThreeTangleTest, ReferenceStates) {
    EXPECT_NEAR(three_tangle(ghz()), 1.0, 1e-12);
    EXPECT_NEAR(three_tangle(w_state()), 0.0, 1e-10);
    Gen gen(206);
    PureState product = tensor(gen.state(Register{Qubit::S}), gen.state(Register{Qubit::C, Qubit::A}));
    EXPECT_NEAR(three_tangle(product), 0.0, 1e-12);
    EXPECT_THROW(three_tangle(PureState::basis(Register{Qubit::S, Qubit::A}, 0)), ShapeError);
}

TEST(LedgerTest, ProductStateIsAllZero) {
    CoherenceLedger l = ledger(PureState::basis(kSCA, 0));
    EXPECT_EQ(ledger_gap(l, CoherenceLedger{}), 0.0);
}

TEST(LedgerTest, GhzAndW) {
    CoherenceLedger g = ledger(ghz());
    EXPECT_NEAR(g.genuine, 1.0, 1e-12);
    EXPECT_NEAR(g.s_c + g.c_a + g.a_s, 0.0, 1e-12);
    CoherenceLedger w = ledger(w_state());
    EXPECT_NEAR(w.genuine, 0.0, 1e-10);
    EXPECT_NEAR(w.s_ca, 8.0 / 9.0, 1e-12);
    EXPECT_NEAR(w.s_c, 4.0 / 9.0, 1e-12);
}

TEST(LedgerTest, RejectsOtherRegisters) {
    PureState sba = PureState::basis(Register{Qubit::S, Qubit::B, Qubit::C}, 0);
    EXPECT_THROW(ledger(sba), ShapeError);
    EXPECT_THROW(ckw_residual(PureState::basis(Register{Qubit::S, Qubit::A}, 0), Qubit::S), ShapeError);
}

TEST(LedgerTest, CaseTwoIsDirectProduct) {
    UssdInstance inst = make_instance(0.4, 0.9, std::polar(0.5, 0.3));
    ProtocolRun run = run_protocol(inst, separable_strategy(inst));
    CoherenceLedger l = ledger(run.gamma);
    ClosedFormCoherences cf = closed_form_coherences(inst, optimal_strategy(inst));
    EXPECT_NEAR(l.c_a, cf.total, 1e-12);
    EXPECT_NEAR(l.a_sc, cf.total, 1e-12);
    EXPECT_NEAR(l.total, cf.total, 1e-12);
    EXPECT_NEAR(l.s_ca, 0.0, 1e-12);
    EXPECT_NEAR(l.s_c, 0.0, 1e-12);
    EXPECT_NEAR(l.genuine, 0.0, 1e-12);
}

TEST(LedgerProperty, MonogamyOnRandomStates) {
    Gen gen(207);
    for (int trial = 0; trial < 1000; ++trial) {
        PureState psi = gen.state3();
        CoherenceLedger l = ledger(psi);
        ASSERT_LT(l.decomposition_spread(), 1e-9) << "trial " << trial;
        ASSERT_LT(l.pivot_spread(), 1e-9) << "trial " << trial;
        ASSERT_NEAR(l.genuine, three_tangle(psi), 1e-9) << "trial " << trial;
        ASSERT_GE(l.genuine, -1e-10) << "trial " << trial;
        for (Qubit q : psi.reg().labels()) {
            ASSERT_NEAR(ckw_residual(psi, q), l.genuine, 1e-9);
        }
    }
}

TEST(LedgerProperty, LocalUnitaryInvariance) {
    Gen gen(208);
    for (int trial = 0; trial < 200; ++trial) {
        PureState psi = gen.state3();
        ASSERT_LT(ledger_gap(ledger(psi), ledger(local_rotate(psi, gen))), 1e-9);
    }
}

TEST(ClosedFormTest, SpotValue) {
    for (double gamma : {0.0, 1.0, kPi}) {
        UssdInstance inst = make_instance(0.2, std::polar(0.4, gamma), 0.0);
        ClosedFormCoherences c = closed_form_coherences(inst, optimal_strategy(inst));
        EXPECT_NEAR(c.total, 4 * 0.2 * 0.8 * 1.0 * 0.84, 1e-15);
    }
}

TEST(ClosedFormTest, FullEnvironmentOverlapVanishes) {
    UssdInstance inst = make_instance(0.3, std::polar(0.3, 0.4), std::polar(1.0, 0.7));
    ClosedFormCoherences c = closed_form_coherences(inst, optimal_strategy(inst));
    EXPECT_EQ(c.total, 0.0);
    EXPECT_EQ(c.a_sc, 0.0);
    EXPECT_EQ(c.genuine, 0.0);
}

TEST(ClosedFormProperty, MatchesLedgerAtSeparabilityAngles) {
    Gen gen(209);
    for (int trial = 0; trial < 200; ++trial) {
        UssdInstance inst = gen.instance();
        UssdStrategy s = separable_strategy(inst);
        ClosedFormCoherences c = closed_form_coherences(inst, s);
        CoherenceLedger l = ledger(run_protocol(inst, s).gamma);
        ASSERT_NEAR(c.total, l.total, 1e-10);
        ASSERT_NEAR(c.a_sc, l.a_sc, 1e-10);
        ASSERT_NEAR(c.genuine, l.genuine, 1e-10);
    }
}

TEST(ClosedFormProperty, GenuineMatchesAtAnyEta) {
    // The genuine part holds for every eta; the other two pick up C_A:S away
    // from the separability angles.
    Gen gen(210);
    for (int trial = 0; trial < 200; ++trial) {
        UssdInstance inst = gen.instance();
        UssdStrategy s = optimal_strategy(inst).with_eta(gen.uniform(0.0, kPi / 2), gen.uniform(0.0, 2 * kPi));
        ClosedFormCoherences c = closed_form_coherences(inst, s);
        CoherenceLedger l = ledger(run_protocol(inst, s).gamma);
        ASSERT_NEAR(c.genuine, l.genuine, 1e-10);
        ASSERT_NEAR(c.total + l.a_s, l.total, 1e-10);
        ASSERT_NEAR(c.a_sc + l.a_s, l.a_sc, 1e-10);
    }
}

TEST(CoherenceBandTest, FlatWithoutEnvironmentOverlap) {
    CoherenceBand b = coherence_band(0.4, 0.5, 0.0);
    EXPECT_TRUE(b.flat);
    EXPECT_TRUE(b.argmax.empty());
    EXPECT_NEAR(b.max_ratio, b.min_ratio, 1e-13);
}

TEST(CoherenceBandTest, ExtremaLocations) {
    for (double ac : {0.3, 0.8}) {
        CoherenceBand b = coherence_band(0.4, 0.5, ac);
        ASSERT_FALSE(b.flat);
        ASSERT_EQ(b.argmin.size(), 2u);
        for (double g : b.argmin) {
            EXPECT_NEAR(std::cos(g), -ac, 1e-6);
        }
        for (double g : b.argmax) {
            EXPECT_NEAR(std::abs(std::sin(g)), 0.0, 1e-5);
        }
        // Refined minimum agrees with the closed form at the analytic location.
        UssdInstance at = make_instance(0.4, std::polar(0.5, std::acos(-ac)), ac);
        ClosedFormCoherences c = closed_form_coherences(at, separable_strategy(at));
        EXPECT_NEAR(b.min_ratio, c.genuine / c.total, 1e-10);
        EXPECT_GT(b.a_sc_ratio, 0.0);
    }
}

TEST(CoherenceBandTest, RejectsDegenerateInput) {
    EXPECT_THROW(coherence_band(0.4, 0.5, 0.8, 4), RangeError);
    EXPECT_THROW(coherence_band(0.4, 0.5, 1.0), RangeError);
    EXPECT_THROW(coherence_band(0.4, -0.1, 0.5), RangeError);
}

}  // namespace
}  // namespace ussdlab
