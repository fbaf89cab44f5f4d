#include "debatenet/bicm.hpp"
#include "debatenet/projection.hpp"
#include "debatenet/rng.hpp"
#include "debatenet/synthgen.hpp"

#include <benchmark/benchmark.h>

using namespace debatenet;

namespace {

void poisson_binomial_exact(benchmark::State& state) {
    SeededRng rng(11);
    std::vector<double> probs(static_cast<std::size_t>(state.range(0)));
    for (auto& p : probs) p = 0.3 * rng.uniform01();
    auto observed = static_cast<std::uint32_t>(probs.size() / 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(poisson_binomial_tail(probs, observed));
}

void validate_planted(benchmark::State& state) {
    PlantedBipartiteSpec spec;
    auto side = static_cast<std::uint32_t>(state.range(0));
    spec.blocks = {{side, side * 10u}, {side, side * 10u}};
    spec.p_in = 0.3;
    spec.p_out = 0.02;
    spec.rng_seed = 3;
    auto planted = gen_planted_bipartite(spec);
    auto sol = solve_bicm(planted.graph.degrees());
    for (auto _ : state) {
        auto proj = validate_projection(planted.graph, sol, 0.05);
        benchmark::DoNotOptimize(proj.edges.size());
    }
}

} // namespace

BENCHMARK(poisson_binomial_exact)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(validate_planted)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
