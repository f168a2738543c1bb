#include <benchmark/benchmark.h>

#include "azitrack/arraysim.hpp"

using namespace azitrack;

namespace {

SynthesisResult make_snapshots(int frames, int bins) {
    const auto geom = ArrayGeometry::uniform_circle(12, 0.05);
    TruthTable truth(frames);
    for (auto& row : truth) row = {TruthPoint{wrap(0.9), true}};
    std::vector<double> freqs(bins);
    for (int i = 0; i < bins; ++i) freqs[i] = 1000.0 + 4000.0 * double(i) / double(bins);
    return synthesize(geom, truth, {1.0}, 0.05, freqs, 1);
}

void bm_doa_serial(benchmark::State& state) {
    const auto geom = ArrayGeometry::uniform_circle(12, 0.05);
    const auto synth = make_snapshots(int(state.range(0)), 16);
    for (auto _ : state) {
        auto est = estimate_doa_bins_serial(synth.snapshots, geom, deg2rad(1.0));
        benchmark::DoNotOptimize(est);
    }
    state.SetItemsProcessed(state.iterations() * int64_t(synth.snapshots.size()));
}

void bm_doa_parallel(benchmark::State& state) {
    const auto geom = ArrayGeometry::uniform_circle(12, 0.05);
    const auto synth = make_snapshots(int(state.range(0)), 16);
    for (auto _ : state) {
        auto est = estimate_doa_bins(synth.snapshots, geom, deg2rad(1.0));
        benchmark::DoNotOptimize(est);
    }
    state.SetItemsProcessed(state.iterations() * int64_t(synth.snapshots.size()));
}

} // namespace

BENCHMARK(bm_doa_serial)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_doa_parallel)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
