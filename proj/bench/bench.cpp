// Serial reference against the OpenMP kernels. Arguments: dimension, jobs.
#include <benchmark/benchmark.h>

#include "nicelie/driver.hpp"
#include "nicelie/enumerate.hpp"

using namespace nicelie;

static void enumerate_nice(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Parallelism par{static_cast<int>(state.range(1))};
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_nice_diagrams(n, par));
}

static void classify(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Parallelism par{static_cast<int>(state.range(1))};
    for (auto _ : state) benchmark::DoNotOptimize(classify_dimension(n, par));
}

BENCHMARK(enumerate_nice)->ArgsProduct({{6, 7, 8}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(classify)->ArgsProduct({{6, 7, 8}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
