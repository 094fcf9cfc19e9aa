// Serial vs OpenMP evaluation of the per-probe invariant pipeline.

#include <benchmark/benchmark.h>

#include "moebius/examples.hpp"
#include "moebius/invariants.hpp"
#include "moebius/probes.hpp"
#include "moebius/reduction.hpp"

using namespace moebius;

namespace {

void run_analyze(benchmark::State& state, ExecutionMode mode) {
    const Immersion f = make_catalog("catenoid-cylinder", static_cast<int>(state.range(0))).f;
    const auto probes = sample_probes(f.domain(), static_cast<int>(state.range(1)), 42);
    for (auto _ : state) {
        auto rows = map_probes(probes, [&](const Vec& p) { return analyze(f, p); }, mode);
        benchmark::DoNotOptimize(rows.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_AnalyzeSerial(benchmark::State& state) { run_analyze(state, ExecutionMode::Serial); }
void BM_AnalyzeParallel(benchmark::State& state) { run_analyze(state, ExecutionMode::Parallel); }

void run_reduction(benchmark::State& state, ExecutionMode mode) {
    const Immersion f = make_catalog("sinh-spiral-rotational", 5).f;
    const auto probes = sample_probes(f.domain(), static_cast<int>(state.range(0)), 42);
    for (auto _ : state) benchmark::DoNotOptimize(reduction_check(f, probes, {}, mode).q_values);
}

void BM_ReductionSerial(benchmark::State& state) { run_reduction(state, ExecutionMode::Serial); }
void BM_ReductionParallel(benchmark::State& state) { run_reduction(state, ExecutionMode::Parallel); }

}  // namespace

BENCHMARK(BM_AnalyzeSerial)->Args({4, 32})->Args({6, 32})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnalyzeParallel)->Args({4, 32})->Args({6, 32})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ReductionSerial)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReductionParallel)->Arg(20)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
