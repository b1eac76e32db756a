// Copyright 2026 The hexq Authors
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

#include <benchmark/benchmark.h>

#include "hexq/circuit.hpp"
#include "hexq/extrema.hpp"
#include "hexq/mps.hpp"
#include "hexq/statevec.hpp"

namespace {

using namespace hexq;

IsingInstance instance(const char *layout) {
    return generate_instance(build_heavy_hex(layout), CoefficientMode::random_pm1, 1);
}

QaoaAngles angles(int p) {
    QaoaAngles a;
    for (int j = 0; j < p; j++) {
        a.betas.push_back(0.1 + 0.05 * j);
        a.gammas.push_back(0.3 - 0.02 * j);
    }
    return a;
}

void BM_PhaseSeparator(benchmark::State &state) {
    auto cost = cost_vector(instance("guadalupe16"));
    auto s = StateVector::uniform(16);
    for (auto _ : state) {
        apply_phase(s, cost, 0.37);
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
}
BENCHMARK(BM_PhaseSeparator);

void BM_Mixer(benchmark::State &state) {
    auto s = StateVector::uniform(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        apply_mixer(s, 0.21);
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
}
BENCHMARK(BM_Mixer)->Arg(16)->Arg(20);

void BM_Gradient(benchmark::State &state) {
    auto cost = cost_vector(instance("guadalupe16"));
    auto a = angles(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gradient(cost, a));
    }
}
BENCHMARK(BM_Gradient)->Arg(1)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_BruteForce(benchmark::State &state) {
    auto inst = instance("guadalupe16");
    for (auto _ : state) {
        benchmark::DoNotOptimize(brute_force_extrema(inst));
    }
}
BENCHMARK(BM_BruteForce)->Unit(benchmark::kMillisecond);

void BM_Anneal(benchmark::State &state) {
    auto inst = instance("eagle127");
    AnnealParams params;
    params.restarts = 4;
    params.sweeps_per_restart = 1000;
    for (auto _ : state) {
        benchmark::DoNotOptimize(anneal_extrema(inst, params));
    }
}
BENCHMARK(BM_Anneal)->Unit(benchmark::kMillisecond);

void BM_MpsEvolve(benchmark::State &state) {
    auto inst = instance("eagle127");
    auto a = angles(2);
    MpsOptions opts;
    opts.chi_max = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto r = evolve_mps(inst, a, opts);
        benchmark::DoNotOptimize(r.state.max_bond_dimension());
    }
}
BENCHMARK(BM_MpsEvolve)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_BuildCircuit(benchmark::State &state) {
    auto inst = instance("heron156");
    auto a = angles(49);
    auto coloring = edge_coloring(inst.graph, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(emit_qasm(build_circuit(inst, a, coloring)));
    }
}
BENCHMARK(BM_BuildCircuit)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
