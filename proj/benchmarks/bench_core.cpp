#include "kakeya/blind.hpp"
#include "kakeya/se2.hpp"
#include "kakeya/sweep.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace kakeya;

static void BM_Star(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-2, 2);
    std::vector<Rot> xs;
    for (int i = 0; i < 1024; ++i) xs.push_back(Rot::from_coords({u(rng), u(rng)}, u(rng)));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(star(xs[i & 1023], xs[(i + 1) & 1023]));
        ++i;
    }
}
BENCHMARK(BM_Star);

static void BM_ZigzagSplit(benchmark::State& state) {
    const Rot x = rot_from_center({0.5, 1.0}, 1.2);
    const Rot x0 = rot_from_center({0.0, 0.3}, 0.2);
    for (auto _ : state) benchmark::DoNotOptimize(zigzag_split(x, x0, 64));
}
BENCHMARK(BM_ZigzagSplit);

static void BM_SweepTranslation(benchmark::State& state) {
    const Scene circle = make_circle(1.0, 720);
    SweepOptions opt;
    opt.grid_max = static_cast<int>(state.range(0));
    opt.two_resolution = false;
    const SweepPlan plan = single_step(rot_translation({2, 0}));
    for (auto _ : state) benchmark::DoNotOptimize(sweep_area(circle, plan, opt).area);
}
BENCHMARK(BM_SweepTranslation)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_SweepRotation(benchmark::State& state) {
    const Scene circle = make_circle(1.0, 720);
    SweepOptions opt;
    opt.grid_max = static_cast<int>(state.range(0));
    opt.two_resolution = false;
    const SweepPlan plan = single_step(rot_from_center({3, 0}, kPi / 2));
    for (auto _ : state) benchmark::DoNotOptimize(sweep_area(circle, plan, opt).area);
}
BENCHMARK(BM_SweepRotation)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_Dilation(benchmark::State& state) {
    const Scene circle = make_circle(1.0, 720);
    SweepOptions opt;
    opt.grid_max = 1024;
    const RasterGrid g = sweep_raster(circle, single_step(rot_translation({1, 0})), opt);
    for (auto _ : state) benchmark::DoNotOptimize(g.dilated(0.01).occupied());
}
BENCHMARK(BM_Dilation)->Unit(benchmark::kMillisecond);

static void BM_TranslationPlan(benchmark::State& state) {
    const Scene circle = make_circle(1.0, 180);
    for (auto _ : state) benchmark::DoNotOptimize(build_translation_plan(circle, {2, 0}, 3.0).segments.size());
}
BENCHMARK(BM_TranslationPlan)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
