#include "debatenet/bicm.hpp"
#include "debatenet/rng.hpp"

#include <benchmark/benchmark.h>

using namespace debatenet;

namespace {

DegreeSequence random_sequence(std::uint32_t tops, std::uint32_t bottoms, double density,
                               std::uint64_t seed) {
    SeededRng rng(seed);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t i = 0; i < tops; ++i)
        for (std::uint32_t a = 0; a < bottoms; ++a)
            if (rng.bernoulli(density)) pairs.emplace_back(i, a);
    return BipartiteGraph::from_pairs(tops, bottoms, std::move(pairs)).degrees();
}

void solve_fixed_point(benchmark::State& state) {
    auto seq = random_sequence(200, 1000, 0.01 * static_cast<double>(state.range(0)), 7);
    for (auto _ : state) {
        auto sol = solve_bicm(seq);
        benchmark::DoNotOptimize(sol.residual);
    }
}

void solve_newton(benchmark::State& state) {
    auto seq = random_sequence(200, 1000, 0.01 * static_cast<double>(state.range(0)), 7);
    SolverConfig cfg;
    cfg.method = SolveMethod::newton;
    for (auto _ : state) {
        auto sol = solve_bicm(seq, cfg);
        benchmark::DoNotOptimize(sol.residual);
    }
}

} // namespace

BENCHMARK(solve_fixed_point)->Arg(1)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(solve_newton)->Arg(1)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);
