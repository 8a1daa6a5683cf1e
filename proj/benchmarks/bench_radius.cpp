#include <benchmark/benchmark.h>

#include <random>

#include "wga/parse.hpp"
#include "wga/spectrum.hpp"

namespace {

void BM_WeightRadiusLadder(benchmark::State& state) {
    auto spec = wga::make_group_spec(1, {});
    auto w = wga::parse_weight("poly:1", spec);
    auto one = wga::make_element(spec, {1});
    const std::int64_t top = std::int64_t{1} << state.range(0);
    for (auto _ : state) {
        auto r = wga::weight_radius(w, one, top);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_WeightRadiusLadder)->DenseRange(10, 20, 5);

void BM_NormLimitLadder(benchmark::State& state) {
    auto spec = wga::make_group_spec(1, {});
    auto w = wga::parse_weight("poly:1", spec);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    wga::AlgebraElement f(spec);
    for (std::int64_t n = -4; n <= 4; ++n)
        f.add_at(wga::make_element(spec, {n}), wga::Complex{amp(rng), amp(rng)});
    const std::int64_t top = std::int64_t{1} << state.range(0);
    for (auto _ : state) {
        auto r = wga::spectral_radius_normlimit(f, w, top);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_NormLimitLadder)->DenseRange(6, 12, 2);

void BM_BoundaryOracle(benchmark::State& state) {
    auto spec = wga::make_group_spec(1, {});
    auto w = wga::parse_weight("poly:1", spec);
    auto cs = wga::character_space(w, 1 << 16);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    wga::AlgebraElement f(spec);
    for (std::int64_t n = -8; n <= 8; ++n)
        f.add_at(wga::make_element(spec, {n}), wga::Complex{amp(rng), amp(rng)});
    for (auto _ : state) {
        auto r = wga::spectral_radius_oracle(f, cs, state.range(0));
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_BoundaryOracle)->RangeMultiplier(4)->Range(256, 16384);

} // namespace
