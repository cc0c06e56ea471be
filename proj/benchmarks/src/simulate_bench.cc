// Copyright 2026 The pauli-mrf Authors
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

#include <map>

#include "pauli_mrf/channel.h"
#include "pauli_mrf/estimator.h"
#include "pauli_mrf/model_generation.h"

using namespace pauli_mrf;

namespace {

const PauliChannel &chain_channel(uint32_t n) {
    static std::map<uint32_t, PauliChannel> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        GenerationParams p;
        p.num_qubits = n;
        it = cache.emplace(n, PauliChannel::from_model(generate_model(p))).first;
    }
    return it->second;
}

// Shots per second of batch_simulate; the argument is the worker count.
void BM_BatchSimulate(benchmark::State &state) {
    uint32_t threads = static_cast<uint32_t>(state.range(0));
    const PauliChannel &channel = chain_channel(8);
    SpamModel spam = SpamModel::depolarizing(8, 0.01, 0.01);
    constexpr uint64_t kShots = 100'000;
    for (auto _ : state) {
        ShotBank bank = batch_simulate(channel, spam, {{1, kShots}}, 1, threads);
        benchmark::DoNotOptimize(bank.outcomes().data());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * kShots));
}
BENCHMARK(BM_BatchSimulate)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_SimulateShot(benchmark::State &state) {
    const PauliChannel &channel = chain_channel(8);
    SpamModel spam = SpamModel::noiseless(8);
    Rng rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_shot(channel, spam, 2, rng));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SimulateShot);

// All weight <= 2 eigenvalues at n = 8 from one bank.
void BM_BatchEstimate(benchmark::State &state) {
    const PauliChannel &channel = chain_channel(8);
    auto bank = std::make_shared<const ShotBank>(
        batch_simulate(channel, SpamModel::noiseless(8), {{1, 200'000}, {2, 200'000}}, 2));
    auto paulis = paulis_up_to_weight(8, 2);
    for (auto _ : state) {
        AlphaEstimator est(bank);
        benchmark::DoNotOptimize(batch_estimate(paulis, est).size());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * paulis.size()));
}
BENCHMARK(BM_BatchEstimate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
