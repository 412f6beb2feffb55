#include <benchmark/benchmark.h>

#include "hypcyl/geometry.hpp"
#include "hypcyl/line_measure.hpp"
#include "hypcyl/rng.hpp"

using namespace hypcyl;

static void BM_Dist(benchmark::State& state) {
    RngStream rng(1, 0);
    const int d = static_cast<int>(state.range(0));
    const Point a = sample_point_in_ball(rng, d, 3.0);
    const Point b = sample_point_in_ball(rng, d, 3.0);
    for (auto _ : state) benchmark::DoNotOptimize(dist(a, b));
}
BENCHMARK(BM_Dist)->Arg(2)->Arg(3)->Arg(4);

static void BM_PointLineDist(benchmark::State& state) {
    RngStream rng(2, 0);
    const int d = static_cast<int>(state.range(0));
    const Point x = sample_point_in_ball(rng, d, 3.0);
    const Geodesic line = sample_line_hitting_ball(rng, d, 3.0);
    for (auto _ : state) benchmark::DoNotOptimize(dist_point_geodesic(x, line).d);
}
BENCHMARK(BM_PointLineDist)->Arg(2)->Arg(3);

static void BM_LineLineDist(benchmark::State& state) {
    RngStream rng(3, 0);
    const int d = static_cast<int>(state.range(0));
    const Geodesic a = sample_line_hitting_ball(rng, d, 4.0);
    const Geodesic b = sample_line_hitting_ball(rng, d, 4.0);
    for (auto _ : state) benchmark::DoNotOptimize(cosh_sq_dist_geodesics(a, b));
}
BENCHMARK(BM_LineLineDist)->Arg(2)->Arg(3);

static void BM_SampleLine(benchmark::State& state) {
    RngStream rng(4, 0);
    const int d = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sample_line_hitting_ball(rng, d, 6.0));
}
BENCHMARK(BM_SampleLine)->Arg(2)->Arg(3);
