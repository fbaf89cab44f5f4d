#include "debatenet/bicm.hpp"
#include "debatenet/projection.hpp"
#include "debatenet/rng.hpp"
#include "debatenet/synthgen.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

using namespace debatenet;

namespace {

BipartiteGraph random_graph(std::uint64_t seed, std::uint32_t tops, std::uint32_t bottoms,
                            double density) {
    SeededRng rng(seed);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t i = 0; i < tops; ++i)
        for (std::uint32_t a = 0; a < bottoms; ++a)
            if (rng.bernoulli(density)) pairs.emplace_back(i, a);
    return BipartiteGraph::from_pairs(tops, bottoms, std::move(pairs));
}

std::vector<double> random_probs(SeededRng& rng, std::size_t n) {
    std::vector<double> probs(n);
    for (auto& p : probs) p = rng.uniform01();
    return probs;
}

} // namespace

TEST_CASE("two tops sharing one bottom co-occur once") {
    auto g = BipartiteGraph::from_pairs(2, 1, {{0, 0}, {1, 0}});
    auto table = cooccurrence_counts(g);
    REQUIRE(table.entries.size() == 1);
    CHECK(table.entries[0].i == 0);
    CHECK(table.entries[0].j == 1);
    CHECK(table.entries[0].count == 1);
}

TEST_CASE("disjoint neighborhoods are absent from the table") {
    auto g = BipartiteGraph::from_pairs(2, 2, {{0, 0}, {1, 1}});
    CHECK(cooccurrence_counts(g).entries.empty());
}

TEST_CASE("co-occurrence counts match the brute-force intersection") {
    auto g = random_graph(9, 20, 100, 0.15);
    auto table = cooccurrence_counts(g);
    auto brute = oracles::cooccurrence_brute(g);
    REQUIRE(table.entries.size() == brute.size());
    for (const auto& e : table.entries) {
        auto it = brute.find({e.i, e.j});
        REQUIRE(it != brute.end());
        CHECK(it->second == e.count);
    }
}

TEST_CASE("tail at zero observations is exactly one") {
    std::vector<double> probs = {0.3, 0.99, 0.0};
    CHECK(poisson_binomial_tail(probs, 0) == 1.0);
}

TEST_CASE("symmetric binomial tail") {
    std::vector<double> probs = {0.5, 0.5, 0.5};
    CHECK(poisson_binomial_tail(probs, 2) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("worked three-trial example") {
    std::vector<double> probs = {0.1, 0.2, 0.7};
    CHECK(poisson_binomial_tail(probs, 2) == doctest::Approx(0.202).epsilon(1e-12));
    CHECK(oracles::pb_tail_enumeration(probs, 2) == doctest::Approx(0.202).epsilon(1e-12));
}

TEST_CASE("exact convolution matches enumeration for small n") {
    SeededRng rng(1234);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 1 + rng.below(15);
        auto probs = random_probs(rng, n);
        for (std::uint32_t v = 0; v <= n; ++v) {
            double dp = poisson_binomial_tail(probs, v);
            double enumd = oracles::pb_tail_enumeration(probs, v);
            CHECK(std::abs(dp - enumd) < 1e-12);
        }
    }
}

TEST_CASE("degenerate probabilities shift the support deterministically") {
    std::vector<double> probs = {1.0, 1.0, 0.5, 0.0};
    CHECK(poisson_binomial_tail(probs, 2) == 1.0);
    CHECK(poisson_binomial_tail(probs, 3) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(poisson_binomial_tail(probs, 4) == 0.0);
    for (std::uint32_t v = 0; v <= 4; ++v)
        CHECK(std::abs(poisson_binomial_tail(probs, v) -
                       oracles::pb_tail_enumeration(probs, v)) < 1e-14);
}

TEST_CASE("tail is non-increasing in the observed count") {
    SeededRng rng(77);
    auto probs = random_probs(rng, 12);
    double prev = 2.0;
    for (std::uint32_t v = 0; v <= 12; ++v) {
        double tail = poisson_binomial_tail(probs, v);
        CHECK(tail <= prev + 1e-15);
        prev = tail;
    }
}

TEST_CASE("observed beyond the trial count is a domain error") {
    std::vector<double> probs = {0.5, 0.5};
    CHECK_THROWS_AS(poisson_binomial_tail(probs, 3), std::domain_error);
}

TEST_CASE("poisson approximation stays close above the cutoff") {
    SeededRng rng(3);
    std::vector<double> probs(600);
    for (auto& p : probs) p = 0.02 * rng.uniform01();
    double exact = poisson_binomial_tail(probs, 12, /*exact_cutoff=*/4096);
    double approx = poisson_binomial_tail(probs, 12, /*exact_cutoff=*/64);
    CHECK(approx == doctest::Approx(exact).epsilon(0.05));
}

TEST_CASE("all-zero p-values are all accepted") {
    std::vector<double> p = {0.0, 0.0, 0.0};
    auto bh = bh_fdr(p, 0.05);
    CHECK(bh.accepted.size() == 3);
    CHECK(bh.threshold == 0.0);
}

TEST_CASE("step-up thresholds accept exactly the first two") {
    std::vector<double> p = {0.01, 0.02, 0.04, 0.5};
    auto bh = bh_fdr(p, 0.05);
    CHECK(bh.accepted == std::vector<std::size_t>{0, 1});
    CHECK(bh.threshold == doctest::Approx(0.02));
}

TEST_CASE("nothing significant accepts nothing with threshold zero") {
    std::vector<double> p = {0.9, 0.8};
    auto bh = bh_fdr(p, 0.05);
    CHECK(bh.accepted.empty());
    CHECK(bh.threshold == 0.0);
}

TEST_CASE("empty input accepts nothing") {
    std::vector<double> p;
    auto bh = bh_fdr(p, 0.05);
    CHECK(bh.accepted.empty());
}

TEST_CASE("acceptance set equals the direct-definition oracle") {
    SeededRng rng(404);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t m = 1 + rng.below(200);
        std::vector<double> p(m);
        for (auto& v : p) {
            v = rng.uniform01();
            if (rng.bernoulli(0.3)) v *= 0.01; // sprinkle significant values
        }
        auto bh = bh_fdr(p, 0.1);
        auto direct = oracles::bh_direct(p, 0.1);
        CHECK(bh.accepted == direct);
    }
}

TEST_CASE("raising the level never removes an accepted pair") {
    SeededRng rng(505);
    std::vector<double> p(300);
    for (auto& v : p) v = rng.uniform01() * (rng.bernoulli(0.4) ? 0.02 : 1.0);
    auto low = bh_fdr(p, 0.02);
    auto high = bh_fdr(p, 0.2);
    CHECK(std::includes(high.accepted.begin(), high.accepted.end(), low.accepted.begin(),
                        low.accepted.end()));
}

TEST_CASE("complete graph validates nothing") {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t i = 0; i < 4; ++i)
        for (std::uint32_t a = 0; a < 6; ++a) pairs.emplace_back(i, a);
    auto g = BipartiteGraph::from_pairs(4, 6, pairs);
    auto sol = solve_bicm(g.degrees());
    auto proj = validate_projection(g, sol, 0.05);
    CHECK(proj.edges.empty());
    CHECK(proj.tested_pairs == 6); // all pairs co-occur, none significant
}

TEST_CASE("hand-built graph matches the full oracle route") {
    // 4 tops x 6 bottoms: tops 0,1 share most neighbors, 2,3 are sparse
    auto g = BipartiteGraph::from_pairs(
        4, 6,
        {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 0}, {1, 1}, {1, 2}, {1, 3},
         {2, 4}, {2, 0}, {3, 5}, {3, 1}});
    auto sol = solve_bicm(g.degrees(), {.tolerance = 1e-10});
    const double fdr = 0.05;
    auto proj = validate_projection(g, sol, fdr);

    // oracle: enumeration p-values for every co-occurring pair, then direct BH
    auto brute = oracles::cooccurrence_brute(g);
    std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, double>> tested;
    for (const auto& [pair, count] : brute) {
        std::vector<double> probs;
        for (std::uint32_t a = 0; a < 6; ++a) {
            double prod =
                link_probability(sol, pair.first, a) * link_probability(sol, pair.second, a);
            if (prod > 0.0) probs.push_back(prod);
        }
        tested.push_back({pair, oracles::pb_tail_enumeration(probs, count)});
    }
    std::vector<double> pvals;
    for (const auto& [pair, p] : tested) pvals.push_back(p);
    auto accepted = oracles::bh_direct(pvals, fdr);

    REQUIRE(proj.tested_pairs == tested.size());
    REQUIRE(proj.edges.size() == accepted.size());
    for (std::size_t k = 0; k < accepted.size(); ++k) {
        const auto& [pair, p] = tested[accepted[k]];
        bool found = false;
        for (const auto& e : proj.edges)
            if (e.i == pair.first && e.j == pair.second) {
                found = true;
                CHECK(e.p_value == doctest::Approx(p).epsilon(1e-10));
            }
        CHECK(found);
    }
}

TEST_CASE("planted blocks validate mostly within blocks") {
    PlantedBipartiteSpec spec;
    spec.blocks = {{20, 200}, {20, 200}};
    spec.p_in = 0.45;
    spec.p_out = 0.02;
    spec.rng_seed = 8;
    auto planted = gen_planted_bipartite(spec);
    auto sol = solve_bicm(planted.graph.degrees());
    auto proj = validate_projection(planted.graph, sol, 0.05);
    REQUIRE(!proj.edges.empty());
    std::size_t intra = 0, cross = 0;
    for (const auto& e : proj.edges)
        (planted.top_block[e.i] == planted.top_block[e.j] ? intra : cross)++;
    std::size_t intra_pairs = 2 * (20 * 19 / 2);
    std::size_t cross_pairs = 20 * 20;
    double intra_rate = static_cast<double>(intra) / intra_pairs;
    double cross_rate = static_cast<double>(cross) / cross_pairs;
    CHECK(intra_rate > cross_rate);
    CHECK(intra_rate > 0.5);
}

TEST_CASE("validated set is invariant under bottom relabeling") {
    auto g = random_graph(44, 12, 60, 0.25);
    auto sol = solve_bicm(g.degrees(), {.tolerance = 1e-10});
    auto proj = validate_projection(g, sol, 0.1);

    SeededRng rng(9);
    std::vector<std::uint32_t> perm(60);
    for (std::uint32_t a = 0; a < 60; ++a) perm[a] = a;
    rng.shuffle(perm);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (auto [i, a] : g.edges()) pairs.emplace_back(i, perm[a]);
    auto permuted = BipartiteGraph::from_pairs(12, 60, std::move(pairs));
    auto sol2 = solve_bicm(permuted.degrees(), {.tolerance = 1e-10});
    auto proj2 = validate_projection(permuted, sol2, 0.1);

    auto key = [](const ValidatedProjection& p) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
        for (const auto& e : p.edges) edges.emplace_back(e.i, e.j);
        return edges;
    };
    CHECK(key(proj) == key(proj2));
}

TEST_CASE("worker count does not change the projection") {
    auto g = random_graph(66, 18, 90, 0.2);
    auto sol = solve_bicm(g.degrees());
    ProjectionConfig one{.fdr_level = 0.1, .exact_cutoff = 4096, .threads = 1};
    ProjectionConfig four{.fdr_level = 0.1, .exact_cutoff = 4096, .threads = 4};
    auto a = validate_projection(g, sol, one);
    auto b = validate_projection(g, sol, four);
    REQUIRE(a.edges.size() == b.edges.size());
    for (std::size_t k = 0; k < a.edges.size(); ++k) {
        CHECK(a.edges[k].i == b.edges[k].i);
        CHECK(a.edges[k].j == b.edges[k].j);
        CHECK(a.edges[k].p_value == b.edges[k].p_value);
    }
}

TEST_CASE("dimension mismatch between graph and solution is rejected") {
    auto g = random_graph(2, 5, 8, 0.4);
    auto other = random_graph(2, 6, 8, 0.4);
    auto sol = solve_bicm(other.degrees());
    CHECK_THROWS_AS(validate_projection(g, sol, 0.05), std::invalid_argument);
}
