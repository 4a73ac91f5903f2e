#include <benchmark/benchmark.h>

#include <memory>

#include "dicola/citest.hpp"
#include "dicola/decompose.hpp"
#include "dicola/dicola.hpp"
#include "dicola/fci.hpp"
#include "dicola/oracle.hpp"
#include "dicola/synth.hpp"

using namespace dicola;

namespace {

Scenario scenario(int n, double degree, int latents, std::uint64_t seed = 3) {
    Rng rng(seed);
    return make_scenario(n, degree, latents, rng);
}

void BM_MSeparation(benchmark::State& state) {
    const auto sc = scenario(static_cast<int>(state.range(0)), 3.0, 2);
    const auto& g = sc.true_mag;
    const int n = g.size();
    std::vector<int> z;
    for (int v = 2; v < n; v += 2) z.push_back(v);
    for (auto _ : state) benchmark::DoNotOptimize(m_separated(g, 0, 1, z));
}
BENCHMARK(BM_MSeparation)->Arg(20)->Arg(40)->Arg(80);

void BM_LatentProjection(benchmark::State& state) {
    const auto sc = scenario(static_cast<int>(state.range(0)), 3.0, 4);
    for (auto _ : state) benchmark::DoNotOptimize(latent_project(sc.dag, sc.observed));
}
BENCHMARK(BM_LatentProjection)->Arg(20)->Arg(40);

void BM_FisherZ(benchmark::State& state) {
    const auto sc = scenario(20, 3.0, 0);
    Rng rng(4);
    auto data = std::make_shared<const Dataset>(sample(sc.sem, 2000, rng));
    FisherZTester t(data);
    std::vector<int> z;
    for (int v = 2; v < 2 + state.range(0); ++v) z.push_back(v);
    for (auto _ : state) benchmark::DoNotOptimize(t.test_independence(0, 1, z));
}
BENCHMARK(BM_FisherZ)->Arg(0)->Arg(4)->Arg(12);

void BM_ConstructUig(benchmark::State& state) {
    const auto sc = scenario(static_cast<int>(state.range(0)), 3.0, 2);
    OracleTester t(sc.true_mag);
    for (auto _ : state) benchmark::DoNotOptimize(construct_uig(sc.observed, t));
}
BENCHMARK(BM_ConstructUig)->Arg(20)->Arg(40);

void BM_JunctionTree(benchmark::State& state) {
    const auto sc = scenario(static_cast<int>(state.range(0)), 3.0, 2);
    const auto aug = augmented_graph(sc.true_mag);
    for (auto _ : state) benchmark::DoNotOptimize(junction_tree(aug));
}
BENCHMARK(BM_JunctionTree)->Arg(40)->Arg(100);

void BM_OracleFci(benchmark::State& state) {
    const auto sc = scenario(static_cast<int>(state.range(0)), 3.0, 2);
    for (auto _ : state) {
        OracleTester t(sc.true_mag);
        benchmark::DoNotOptimize(fci(sc.observed, t));
    }
}
BENCHMARK(BM_OracleFci)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_OracleDicola(benchmark::State& state) {
    const auto sc = scenario(static_cast<int>(state.range(0)), 3.0, 2);
    const FciLearner base;
    for (auto _ : state) {
        OracleTester t(sc.true_mag);
        benchmark::DoNotOptimize(run_dicola(sc.observed, t, base));
    }
}
BENCHMARK(BM_OracleDicola)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
