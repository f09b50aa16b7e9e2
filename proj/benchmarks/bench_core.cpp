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


#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "ussdlab/coherence.hpp"
#include "ussdlab/teleport.hpp"
#include "ussdlab/ussd.hpp"

namespace {

using namespace ussdlab;

const UssdInstance kInstance = make_instance(0.3, std::polar(0.35, 1.0), std::polar(0.6, -0.4));

void BM_Wootters(benchmark::State& state) {
    PureState gamma = run_protocol(kInstance, separable_strategy(kInstance)).gamma;
    DensityMatrix rho = partial_trace(gamma, {Qubit::S, Qubit::A});
    for (auto _ : state) benchmark::DoNotOptimize(wootters_concurrence(rho));
}
BENCHMARK(BM_Wootters);

void BM_Ledger(benchmark::State& state) {
    PureState gamma = run_protocol(kInstance, separable_strategy(kInstance)).gamma;
    for (auto _ : state) benchmark::DoNotOptimize(ledger(gamma));
}
BENCHMARK(BM_Ledger);

void BM_RunProtocol(benchmark::State& state) {
    UssdStrategy s = separable_strategy(kInstance);
    for (auto _ : state) benchmark::DoNotOptimize(run_protocol(kInstance, s));
}
BENCHMARK(BM_RunProtocol);

void BM_CompleteUnitary(benchmark::State& state) {
    // Two-state overlap 0.5 mapped onto a pair with the same Gram matrix.
    const double c = 0.5, s = std::sqrt(0.75);
    CVector in0 = CVector::Unit(4, 0), in1 = CVector::Zero(4);
    in1(0) = c;
    in1(2) = s;
    CVector out0 = CVector::Zero(4), out1 = CVector::Zero(4);
    out0(0) = std::sqrt(0.5);
    out0(1) = std::sqrt(0.5);
    out1(0) = std::sqrt(0.5) * c;
    out1(1) = std::sqrt(0.5) * c;
    out1(3) = s;
    std::vector<UnitaryConstraint> cons{{in0, out0}, {in1, out1}};
    Register reg{Qubit::S, Qubit::A};
    for (auto _ : state) benchmark::DoNotOptimize(complete_unitary(reg, cons));
}
BENCHMARK(BM_CompleteUnitary);

void BM_SquareMeanRoot(benchmark::State& state) {
    int nodes = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(square_mean_root(0.3, CoherenceKind::Total, nodes));
}
BENCHMARK(BM_SquareMeanRoot)->Arg(32)->Arg(64)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
