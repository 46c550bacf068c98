// Serial vs OpenMP subset search in the exhaustive oracle, plus pipeline
// throughput for reference.

#include <benchmark/benchmark.h>

#include "ats/gen.hpp"
#include "ats/oracle.hpp"
#include "ats/pipeline.hpp"

namespace {

ats::Graph oracle_input(std::int64_t n) {
    return ats::near_tree_planar({static_cast<std::size_t>(n), 4, 1, ats::WeightMode::uniform_random(1, 9)});
}

void BM_OracleSerial(benchmark::State& state) {
    ats::Graph g = oracle_input(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ats::min_balanced_separator_serial(g, ats::kTwoThirds, g.num_vertices()));
}

void BM_OracleParallel(benchmark::State& state) {
    ats::Graph g = oracle_input(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ats::min_balanced_separator(g, ats::kTwoThirds, g.num_vertices()));
}

void BM_Separate(benchmark::State& state) {
    ats::Graph g = ats::near_tree_planar({static_cast<std::size_t>(state.range(0)), 16, 1, ats::WeightMode::unit()});
    for (auto _ : state) benchmark::DoNotOptimize(ats::separate(g));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_OracleSerial)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleParallel)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Separate)->RangeMultiplier(10)->Range(10000, 1000000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
