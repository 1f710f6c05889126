#include <random>

#include <benchmark/benchmark.h>

#include "leosim/coverage.hpp"
#include "leosim/engine.hpp"
#include "leosim/topology.hpp"

using namespace leosim;

namespace {

ConstellationSpec shell(int m, int n) { return {m, n, 550.0, 53.0, ShellType::walker_delta, 1}; }

void BM_MinHopPath(benchmark::State& state) {
    const int size = static_cast<int>(state.range(0));
    const Constellation c(shell(size, size));
    const Torus torus(c.spec());
    const auto pos = c.positions_at(1234.0);
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> pick(0, size - 1);
    for (auto _ : state) {
        const SatelliteId a{pick(rng), pick(rng)}, b{pick(rng), pick(rng)};
        benchmark::DoNotOptimize(min_hop_path(torus, a, b, pos));
    }
}
BENCHMARK(BM_MinHopPath)->Arg(10)->Arg(20)->Arg(30);

void BM_DistancesFrom(benchmark::State& state) {
    const Constellation c(shell(20, 22));
    const Torus torus(c.spec());
    const auto pos = c.positions_at(0.0);
    for (auto _ : state) benchmark::DoNotOptimize(min_hop_distances_from(torus, {3, 5}, pos));
}
BENCHMARK(BM_DistancesFrom);

void BM_CoverageDay(benchmark::State& state) {
    const Constellation c(shell(static_cast<int>(state.range(0)), 22));
    for (auto _ : state)
        benchmark::DoNotOptimize(coverage_probability(c, {45.0, -140.0}, 50.0, 86164.1, 1.0));
}
BENCHMARK(BM_CoverageDay)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_ScenarioHour(benchmark::State& state) {
    ScenarioConfig cfg;
    cfg.horizon_s = 3600.0;
    cfg.target.fixed = GeodeticPoint{45.0, -140.0};
    std::uint64_t seed = 1;
    for (auto _ : state) benchmark::DoNotOptimize(run_scenario(cfg, seed++));
}
BENCHMARK(BM_ScenarioHour)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
