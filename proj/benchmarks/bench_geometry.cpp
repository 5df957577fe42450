#include <benchmark/benchmark.h>

#include "ckdisc/geometry.hpp"
#include "ckdisc/rng.hpp"

using namespace ckdisc;

static void BM_SegmentCells(benchmark::State& state) {
    const double n = static_cast<double>(state.range(0));
    SplitMix64 rng(1);
    std::vector<Segment> probes;
    for (int i = 0; i < 64; ++i) {
        probes.push_back({{rng.uniform(0.0, n), rng.uniform(0.0, n)},
                          {rng.uniform(0.0, n), rng.uniform(0.0, n)}});
    }
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(segment_cells(probes[i++ & 63]));
    }
}
BENCHMARK(BM_SegmentCells)->Arg(8)->Arg(64)->Arg(256);

static void BM_CircleCells(benchmark::State& state) {
    const double n = static_cast<double>(state.range(0));
    SplitMix64 rng(2);
    std::vector<Circle> probes;
    for (int i = 0; i < 64; ++i) {
        probes.push_back({{rng.uniform(0.0, n), rng.uniform(0.0, n)}, rng.uniform(n / 8, n / 4)});
    }
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(circle_cells(probes[i++ & 63]));
    }
}
BENCHMARK(BM_CircleCells)->Arg(8)->Arg(64)->Arg(256);
