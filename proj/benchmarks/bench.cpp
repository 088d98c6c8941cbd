// Microbenchmarks for the hot paths: the transform engine, maxima scanning,
// the closed-form element transform, and the zero-phase filter.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "elan/cwt.hpp"
#include "elan/detect.hpp"
#include "elan/element_theory.hpp"
#include "elan/preprocess.hpp"

namespace {

elan::TimeSeries noise(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    elan::TimeSeries x;
    x.values.resize(n);
    for (auto& v : x.values) v = elan::standard_normal(rng);
    return x;
}

void bm_cwt_fft(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const elan::MorseParams params(3.0, 1.0);
    const elan::ScaleGrid grid = elan::make_scale_grid(params, 8.0, 256.0, 8);
    const elan::TimeSeries x = noise(n, 1);
    for (auto _ : state) benchmark::DoNotOptimize(elan::cwt_fft(x, params, grid));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n * grid.size()));
}
BENCHMARK(bm_cwt_fft)->Arg(1024)->Arg(4096)->Arg(16384);

void bm_find_maxima(benchmark::State& state) {
    const elan::MorseParams params(3.0, 1.0);
    const elan::ScaleGrid grid = elan::make_scale_grid(params, 8.0, 256.0, 8);
    const elan::Scalogram sg = elan::cwt_fft(noise(4096, 2), params, grid);
    const double floor = 1e-12 * sg.max_modulus();
    for (auto _ : state) benchmark::DoNotOptimize(elan::find_maxima(sg, floor));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(sg.coeffs.size()));
}
BENCHMARK(bm_find_maxima);

void bm_zeta(benchmark::State& state) {
    const elan::ElementParams p(3.0, 3.0, 1.0);
    double tau = -8.0;
    for (auto _ : state) {
        tau = tau < 8.0 ? tau + 1e-3 : -8.0;
        benchmark::DoNotOptimize(elan::zeta(p, tau, 0.75));
    }
}
BENCHMARK(bm_zeta);

void bm_filtfilt(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    elan::FilterSpec spec;
    spec.cutoff_freq = 3.0;  // cycles per time unit
    elan::TimeSeries x = noise(n, 3);
    x.dt = 1.0 / 365.2425;
    for (auto _ : state) benchmark::DoNotOptimize(elan::butterworth_highpass(x, spec));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}
BENCHMARK(bm_filtfilt)->Arg(1024)->Arg(16384);

}  // namespace

BENCHMARK_MAIN();
