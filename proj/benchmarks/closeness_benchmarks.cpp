// Copyright 2026 The closeness-lab Authors
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

#include <vector>

#include <benchmark/benchmark.h>

#include "closeness/approx_degree.hpp"
#include "closeness/certificate.hpp"
#include "closeness/pattern_matrix.hpp"
#include "closeness/protocol.hpp"
#include "closeness/quantum_oracle.hpp"
#include "closeness/sketching.hpp"

namespace {

using namespace closeness;

std::vector<std::int64_t> occurrences(std::size_t n, std::int64_t t, std::uint64_t seed) {
    InstanceSpec spec;
    spec.n = n;
    spec.t = t;
    Rng rng(seed);
    const auto x = sample_occurrences(DiscreteDistribution::uniform(n), spec, rng);
    return {x.counts().begin(), x.counts().end()};
}

void BM_SketchSumReference(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto family = HashFamily::build(n);
    const auto x = occurrences(n, static_cast<std::int64_t>(n / 3), 1);
    const auto sparse = SparseVector::from_dense(x);
    Rng rng(2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sketch_sum(family, family.draw_index(rng), sparse));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(sparse.index.size()));
}
BENCHMARK(BM_SketchSumReference)->Arg(256)->Arg(4096)->Arg(16384);

void BM_SketchSumPacked(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto family = HashFamily::build(n);
    const auto x = occurrences(n, static_cast<std::int64_t>(n / 3), 1);
    const PackedSketchInput packed(family, SparseVector::from_dense(x));
    Rng rng(2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(packed.sum(family.draw_index(rng)));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(packed.size()));
}
BENCHMARK(BM_SketchSumPacked)->Arg(256)->Arg(4096)->Arg(16384);

void BM_OracleMirrorCall(benchmark::State& state) {
    const std::size_t n = 4096;
    const auto family = HashFamily::build(n);
    const Alice alice(family, occurrences(n, 1291, 3));
    const Bob bob(family, occurrences(n, 1291, 4));
    const auto layout = RegisterLayout::for_instance(family, effective_t(alice, bob));
    Rng rng(5);
    for (auto _ : state) {
        MirrorRegisters r;
        r.I = family.draw_index(rng);
        oracle_apply_mirror(r, family, alice, bob, OracleDirection::Forward, layout, nullptr);
        benchmark::DoNotOptimize(r.Y);
    }
}
BENCHMARK(BM_OracleMirrorCall);

void BM_AmplitudeEstimation(benchmark::State& state) {
    const auto family = HashFamily::build(2);
    const std::vector<std::int64_t> l{3, -2};
    const auto w = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        CommLedger ledger;
        benchmark::DoNotOptimize(amplitude_estimation_statevector(family, l, w, ledger).estimate);
    }
}
BENCHMARK(BM_AmplitudeEstimation)->DenseRange(3, 7, 2)->Unit(benchmark::kMillisecond);

void BM_ClassicalProtocolRun(benchmark::State& state) {
    ProtocolConfig config;
    config.spec.n = 4096;
    config.spec.t = 1291;
    config.spec.epsilon = 0.5;
    config.c_alpha = 1.0;
    const auto [p, q] = make_far_pair(config.spec);
    Rng rng(6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_protocol(p, q, config, rng).verdict.delta_estimate);
    }
}
BENCHMARK(BM_ClassicalProtocolRun)->Unit(benchmark::kMillisecond);

void BM_DegreeLp(benchmark::State& state) {
    const auto f = registry_function("PMAJ_" + std::to_string(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_degree_lp(f, static_cast<std::size_t>(state.range(0)) / 2).eta);
    }
}
BENCHMARK(BM_DegreeLp)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_SpectralNormNumeric(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto phi = registry_function("PMAJ_2").real_values();
    const auto m = build_pattern_matrix(n, 2, phi);
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectral_norm_numeric(m));
    }
}
BENCHMARK(BM_SpectralNormNumeric)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
