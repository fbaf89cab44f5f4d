#include "debatenet/community.hpp"
#include "debatenet/rng.hpp"

#include <benchmark/benchmark.h>

using namespace debatenet;

namespace {

WeightedGraph planted_weighted(std::uint32_t per_camp, std::uint64_t seed) {
    SeededRng rng(seed);
    std::vector<WeightedGraph::Edge> edges;
    auto camp = [&](std::uint32_t u) { return u / per_camp; };
    for (std::uint32_t u = 0; u < 4 * per_camp; ++u)
        for (std::uint32_t v = u + 1; v < 4 * per_camp; ++v) {
            double p = camp(u) == camp(v) ? 40.0 / per_camp : 1.0 / per_camp;
            if (rng.bernoulli(p)) edges.push_back({u, v, 1.0});
        }
    return WeightedGraph::build(4 * per_camp, edges, /*directed=*/false);
}

void louvain_planted(benchmark::State& state) {
    auto g = planted_weighted(static_cast<std::uint32_t>(state.range(0)), 5);
    for (auto _ : state) {
        auto comm = louvain(g, 1.0, 7);
        benchmark::DoNotOptimize(comm.label_names.size());
    }
}

void propagate_planted(benchmark::State& state) {
    auto per_camp = static_cast<std::uint32_t>(state.range(0));
    auto g = planted_weighted(per_camp, 5);
    std::map<std::uint32_t, std::string> seed_map;
    for (std::uint32_t c = 0; c < 4; ++c)
        for (std::uint32_t k = 0; k < per_camp / 20; ++k)
            seed_map[c * per_camp + k] = "camp" + std::to_string(c);
    auto seeds = make_assignment(4 * per_camp, seed_map);
    for (auto _ : state) {
        auto out = propagate_labels(g, seeds, {.max_sweeps = 100, .rng_seed = 1});
        benchmark::DoNotOptimize(out.labeled_count());
    }
}

} // namespace

BENCHMARK(louvain_planted)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(propagate_planted)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);
