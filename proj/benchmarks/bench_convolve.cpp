#include <benchmark/benchmark.h>

#include <random>

#include "wga/algebra.hpp"

namespace {

wga::AlgebraElement random_dense_segment(const wga::GroupSpec& spec, std::int64_t half_width,
                                         std::mt19937_64& rng) {
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    wga::AlgebraElement f(spec);
    for (std::int64_t n = -half_width; n <= half_width; ++n)
        f.add_at(wga::make_element(spec, {n}), wga::Complex{amp(rng), amp(rng)});
    return f;
}

void BM_ConvolveDirect(benchmark::State& state) {
    auto spec = wga::make_group_spec(1, {});
    std::mt19937_64 rng(1);
    auto f = random_dense_segment(spec, state.range(0), rng);
    auto g = random_dense_segment(spec, state.range(0), rng);
    for (auto _ : state) {
        auto h = wga::convolve(f, g, wga::ConvolvePath::Direct);
        benchmark::DoNotOptimize(h);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ConvolveDirect)->RangeMultiplier(2)->Range(8, 256)->Complexity();

void BM_ConvolveFft(benchmark::State& state) {
    auto spec = wga::make_group_spec(1, {});
    std::mt19937_64 rng(1);
    auto f = random_dense_segment(spec, state.range(0), rng);
    auto g = random_dense_segment(spec, state.range(0), rng);
    for (auto _ : state) {
        auto h = wga::convolve(f, g, wga::ConvolvePath::Fft);
        benchmark::DoNotOptimize(h);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ConvolveFft)->RangeMultiplier(2)->Range(8, 1024)->Complexity();

void BM_PowerRepeatedSquaring(benchmark::State& state) {
    auto spec = wga::make_group_spec(1, {});
    std::mt19937_64 rng(2);
    auto f = random_dense_segment(spec, 4, rng);
    for (auto _ : state) {
        auto p = wga::power(f, state.range(0));
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_PowerRepeatedSquaring)->RangeMultiplier(4)->Range(4, 256);

} // namespace
