// Parallel outage kernel against the serial reference on identical workloads.
// Arguments: trials per run; the parallel variant also takes a worker count.

#include <benchmark/benchmark.h>

#include <vector>

#include "rislab/montecarlo.hpp"

using namespace rislab;

namespace {

const std::vector<double> kDb{0.0, 5.0, 10.0, 15.0};

struct Workload {
    ChannelDims dims;
    SchemeConfig config;
};

Workload siso_fr() { return {ChannelDims(1, 60, 1), SchemeConfig::make(SchemeKind::FR, 60, 2)}; }
Workload mimo_pr() { return {ChannelDims(2, 3, 2), SchemeConfig::pure_reflect(3)}; }

template <Workload (*Make)()>
void BM_Serial(benchmark::State& state) {
    const Workload w = Make();
    const SnrGrid grid = SnrGrid::from_db(kDb, 1.0);
    const auto trials = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(serial::estimate_outage(w.dims, w.config, grid, trials, RngSpec{1}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Workload (*Make)()>
void BM_Parallel(benchmark::State& state) {
    const Workload w = Make();
    const SnrGrid grid = SnrGrid::from_db(kDb, 1.0);
    const auto trials = static_cast<std::uint64_t>(state.range(0));
    const RunOptions opts{static_cast<int>(state.range(1))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_outage(w.dims, w.config, grid, trials, RngSpec{1}, opts));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_Serial<siso_fr>)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel<siso_fr>)->Args({100000, 1})->Args({100000, 2})->Args({100000, 4})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Serial<mimo_pr>)->Arg(400000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel<mimo_pr>)->Args({400000, 1})->Args({400000, 2})->Args({400000, 4})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
