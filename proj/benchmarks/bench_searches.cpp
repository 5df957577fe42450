#include <benchmark/benchmark.h>

#include "ckdisc/arc_disc.hpp"
#include "ckdisc/coloring.hpp"
#include "ckdisc/line_disc.hpp"

using namespace ckdisc;

static void BM_ExactSegmentSearch(benchmark::State& state) {
    const Coloring board = Coloring::random(static_cast<int>(state.range(0)), 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(max_segment_discrepancy(board));
    }
}
BENCHMARK(BM_ExactSegmentSearch)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_SampledSegmentSup(benchmark::State& state) {
    const Coloring board = Coloring::random(128, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sampled_segment_sup(board, static_cast<std::size_t>(state.range(0)), 11));
    }
}
BENCHMARK(BM_SampledSegmentSup)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_Projection(benchmark::State& state) {
    const Coloring board = Coloring::random(static_cast<int>(state.range(0)), 7);
    const Vec2 u{0.6, 0.8};
    for (auto _ : state) {
        benchmark::DoNotOptimize(project_onto(board, u));
    }
}
BENCHMARK(BM_Projection)->Arg(16)->Arg(64)->Arg(256);

static void BM_CircleSupSearch(benchmark::State& state) {
    const Coloring board = Coloring::parity(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(circle_sup_search(board, 1.0, 8));
    }
}
BENCHMARK(BM_CircleSupSearch)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
