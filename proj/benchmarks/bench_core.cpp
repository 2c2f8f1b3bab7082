/*
 Copyright 2026 The ddc Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#include <benchmark/benchmark.h>

#include "ddc/attack_destab.hpp"
#include "ddc/attack_h2.hpp"
#include "ddc/experiments.hpp"
#include "ddc/sdp.hpp"
#include "ddc/synthesis.hpp"

namespace {

using namespace ddc;

void BM_FiniteHorizonGain(benchmark::State& state) {
    const auto spec = build_fake_system(example1_target_gain(), 1.0);
    const Matrix W = Matrix::Identity(3, 3);
    const Index T = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(finite_horizon_l2_gain(spec.realization, W, T));
}
BENCHMARK(BM_FiniteHorizonGain)->Arg(16)->Arg(64)->Arg(256);

void BM_SdpTraceProgram(benchmark::State& state) {
    const Index n = state.range(0);
    Matrix C = Matrix::Random(n, n);
    C = C * C.transpose() + Matrix::Identity(n, n);
    sdp::Problem p;
    const auto X = p.add_symmetric_variable("X", n);
    p.add_psd(sdp::Affine::of(X) - C);
    p.minimize(sdp::Affine::of(X).trace());
    for (auto _ : state) benchmark::DoNotOptimize(sdp::solve(p).objective);
}
BENCHMARK(BM_SdpTraceProgram)->Arg(3)->Arg(6)->Arg(10);

HankelPair example2_data(Index T) {
    const auto sys = example2_plant();
    return to_hankel(collect_dataset(sys, gen_pe_input(1, T, 4, 7)));
}

void BM_H2Gain(benchmark::State& state) {
    const auto h = example2_data(state.range(0));
    const auto w = PerformanceWeights::identity(3, 1);
    for (auto _ : state) benchmark::DoNotOptimize(h2_gain(h, w).objective);
}
BENCHMARK(BM_H2Gain)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_FeasibilityCheck(benchmark::State& state) {
    const auto sys = example1_plant();
    const auto h = to_hankel(collect_dataset(sys, gen_pe_input(1, 16, 4, 7)));
    const Matrix K = example1_target_gain();
    for (auto _ : state) benchmark::DoNotOptimize(feasibility_check(K, h).margin);
}
BENCHMARK(BM_FeasibilityCheck)->Unit(benchmark::kMillisecond);

void BM_AdversaryStep(benchmark::State& state) {
    const auto h = example2_data(20);
    const auto w = PerformanceWeights::identity(3, 1);
    const auto op = operator_step(h, w);
    const auto cfg = DetectorConfig::identity(3, 31.622776601683793);
    for (auto _ : state) benchmark::DoNotOptimize(adversary_step(h, op.Q, op.X, w, cfg).objective);
}
BENCHMARK(BM_AdversaryStep)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
