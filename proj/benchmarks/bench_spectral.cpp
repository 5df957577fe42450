#include <benchmark/benchmark.h>

#include "ckdisc/coloring.hpp"
#include "ckdisc/spectral.hpp"

using namespace ckdisc;

static void BM_BesselJ0(benchmark::State& state) {
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bessel_j0(x));
        x += 0.37;
        if (x > 200.0) x = 0.0;
    }
}
BENCHMARK(BM_BesselJ0);

static void BM_Fhat(benchmark::State& state) {
    const Coloring board = Coloring::random(static_cast<int>(state.range(0)), 3);
    double r = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fhat(board, {r, 0.7 * r}));
        r += 0.01;
    }
}
BENCHMARK(BM_Fhat)->Arg(8)->Arg(16);

static void BM_RingEnergy(benchmark::State& state) {
    double x = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ring_energy(x, 2.0));
        x = x > 50.0 ? 1.0 : x * 1.5;
    }
}
BENCHMARK(BM_RingEnergy)->Unit(benchmark::kMicrosecond);
