#include <benchmark/benchmark.h>

#include "hypcyl/branching.hpp"
#include "hypcyl/cylinder_process.hpp"
#include "hypcyl/particles.hpp"
#include "hypcyl/rng.hpp"

using namespace hypcyl;

static void BM_BuildGraph(benchmark::State& state) {
    RngStream rng(5, 0);
    const double u = static_cast<double>(state.range(0)) / 100.0;
    const auto real = realize(rng, u, 2, 6.0);
    for (auto _ : state) {
        auto graph = build_graph(real);
        benchmark::DoNotOptimize(graph.n_components);
    }
    state.SetComplexityN(static_cast<int>(real.lines.size()));
}
BENCHMARK(BM_BuildGraph)->Arg(10)->Arg(50)->Arg(100)->Complexity(benchmark::oNSquared);

static void BM_SimulateZeta(benchmark::State& state) {
    const ZetaOptions opts{0.1, 2.0, 4};
    std::uint64_t stream = 0;
    for (auto _ : state) {
        RngStream rng(6, stream++);
        benchmark::DoNotOptimize(simulate_zeta(rng, opts));
    }
}
BENCHMARK(BM_SimulateZeta);

static void BM_CatalanTable(benchmark::State& state) {
    for (auto _ : state) {
        CatalanTriangle table(static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(table.at(0, table.n_max()));
    }
}
BENCHMARK(BM_CatalanTable)->Arg(20)->Arg(60);

static void BM_FnLogSpace(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(log_F_n(150, 1.0, 0.3));
}
BENCHMARK(BM_FnLogSpace);
