#include "debatenet/bicm.hpp"
#include "debatenet/errors.hpp"
#include "debatenet/rng.hpp"
#include "debatenet/synthgen.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

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

} // namespace

TEST_CASE("symmetric unit degrees force probability one half") {
    DegreeSequence seq{{1, 1}, {1, 1}};
    auto sol = solve_bicm(seq);
    for (std::uint32_t i = 0; i < 2; ++i)
        for (std::uint32_t a = 0; a < 2; ++a)
            CHECK(link_probability(sol, i, a) == doctest::Approx(0.5).epsilon(1e-7));
    auto [top, bottom] = expected_degrees(sol);
    CHECK(top[0] == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(bottom[1] == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("complete graph saturates every node") {
    DegreeSequence seq{{2, 2}, {2, 2}};
    auto sol = solve_bicm(seq);
    CHECK(sol.saturated_top.size() == 2);
    for (std::uint32_t i = 0; i < 2; ++i)
        for (std::uint32_t a = 0; a < 2; ++a) CHECK(link_probability(sol, i, a) == 1.0);
    auto [top, bottom] = expected_degrees(sol);
    CHECK(top == std::vector<double>{2.0, 2.0});
    CHECK(bottom == std::vector<double>{2.0, 2.0});
}

TEST_CASE("cascaded boundary extraction reproduces the forced graph") {
    // top degrees [2,1] against bottom [2,1]: every entry is forced
    DegreeSequence seq{{2, 1}, {2, 1}};
    auto sol = solve_bicm(seq);
    CHECK(link_probability(sol, 0, 0) == 1.0);
    CHECK(link_probability(sol, 0, 1) == 1.0);
    CHECK(link_probability(sol, 1, 0) == 1.0);
    CHECK(link_probability(sol, 1, 1) == 0.0);
    auto [top, bottom] = expected_degrees(sol);
    CHECK(top == std::vector<double>{2.0, 1.0});
    CHECK(bottom == std::vector<double>{2.0, 1.0});
    CHECK(sol.residual == 0.0);
}

TEST_CASE("zero-degree nodes get zero probability everywhere") {
    DegreeSequence seq{{1, 0}, {1, 0}};
    auto sol = solve_bicm(seq);
    CHECK(link_probability(sol, 1, 0) == 0.0);
    CHECK(link_probability(sol, 1, 1) == 0.0);
    CHECK(link_probability(sol, 0, 1) == 0.0);
}

TEST_CASE("interior solve matches the generic gradient-ascent fit") {
    DegreeSequence seq{{2, 1}, {1, 1, 1}};
    auto sol = solve_bicm(seq, {.tolerance = 1e-10});
    auto oracle_p = oracles::mle_gradient_probabilities(seq, 1e-11);
    for (std::uint32_t i = 0; i < 2; ++i)
        for (std::uint32_t a = 0; a < 3; ++a)
            CHECK(link_probability(sol, i, a) ==
                  doctest::Approx(oracle_p[i][a]).epsilon(1e-6));

    auto [top, bottom] = expected_degrees(sol);
    for (std::uint32_t i = 0; i < 2; ++i)
        CHECK(std::abs(top[i] - seq.top[i]) < 1e-8);
    for (std::uint32_t a = 0; a < 3; ++a)
        CHECK(std::abs(bottom[a] - seq.bottom[a]) < 1e-8);
}

TEST_CASE("random instance matches the gradient oracle") {
    auto g = random_graph(2, 6, 10, 0.4);
    auto seq = g.degrees();
    bool interior = true;
    for (auto k : seq.top) interior &= (k > 0 && k < 10);
    for (auto d : seq.bottom) interior &= (d > 0 && d < 6);
    REQUIRE(interior);
    auto sol = solve_bicm(seq, {.tolerance = 1e-11});
    auto oracle_p = oracles::mle_gradient_probabilities(seq, 1e-11);
    for (std::uint32_t i = 0; i < 6; ++i)
        for (std::uint32_t a = 0; a < 10; ++a)
            CHECK(link_probability(sol, i, a) ==
                  doctest::Approx(oracle_p[i][a]).epsilon(1e-5));
}

TEST_CASE("ensemble enumeration reproduces the link marginal") {
    DegreeSequence seq{{2, 1}, {1, 1, 1}};
    auto sol = solve_bicm(seq, {.tolerance = 1e-12, .method = SolveMethod::newton});
    auto stats = oracles::enumerate_ensemble(sol);
    CHECK(stats.total_probability == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(stats.marginal_00 == doctest::Approx(link_probability(sol, 0, 0)).epsilon(1e-9));
    for (std::uint32_t i = 0; i < 2; ++i)
        CHECK(stats.mean_top_degree[i] == doctest::Approx(seq.top[i]).epsilon(1e-8));
}

TEST_CASE("expected degrees match observations on a larger random graph") {
    auto g = random_graph(99, 50, 200, 0.08);
    auto seq = g.degrees();
    auto sol = solve_bicm(seq);
    auto [top, bottom] = expected_degrees(sol);
    double worst = 0.0;
    for (std::uint32_t i = 0; i < 50; ++i)
        worst = std::max(worst, std::abs(top[i] - seq.top[i]));
    for (std::uint32_t a = 0; a < 200; ++a)
        worst = std::max(worst, std::abs(bottom[a] - seq.bottom[a]));
    CHECK(worst < 1e-8);
}

TEST_CASE("log likelihood of the empty graph is zero") {
    auto g = BipartiteGraph::from_pairs(3, 3, {});
    auto sol = solve_bicm(g.degrees());
    CHECK(log_likelihood(sol, g) == 0.0);
}

TEST_CASE("log likelihood of the symmetric two-by-two case") {
    auto g = BipartiteGraph::from_pairs(2, 2, {{0, 0}, {1, 1}});
    auto sol = solve_bicm(g.degrees());
    CHECK(log_likelihood(sol, g) == doctest::Approx(4.0 * std::log(0.5)).epsilon(1e-7));
}

TEST_CASE("converged likelihood dominates perturbed multipliers") {
    auto g = random_graph(1, 10, 20, 0.35);
    auto seq = g.degrees();
    for (auto k : seq.top) REQUIRE(k > 0);
    for (auto d : seq.bottom) REQUIRE(d > 0);
    auto sol = solve_bicm(seq, {.tolerance = 1e-11});
    double best = log_likelihood(sol, g);
    SeededRng rng(4242);
    for (int trial = 0; trial < 100; ++trial) {
        auto x = sol.x;
        auto y = sol.y;
        for (auto& v : x) v *= std::exp(0.2 * (rng.uniform01() - 0.5));
        for (auto& v : y) v *= std::exp(0.2 * (rng.uniform01() - 0.5));
        CHECK(oracles::log_likelihood_at(x, y, g) <= best + 1e-9);
    }
}

TEST_CASE("forced probability contradicting an observation is an error") {
    // complete solution against a graph with a missing edge
    DegreeSequence seq{{2, 2}, {2, 2}};
    auto sol = solve_bicm(seq);
    auto sparse = BipartiteGraph::from_pairs(2, 2, {{0, 0}, {0, 1}, {1, 0}});
    CHECK_THROWS_AS(log_likelihood(sol, sparse), std::invalid_argument);
}

TEST_CASE("reduced and per-node systems agree to twelve digits") {
    auto g = random_graph(1, 8, 12, 0.35);
    auto seq = g.degrees();
    bool interior = true;
    for (auto k : seq.top) interior &= (k > 0 && k < 12);
    for (auto d : seq.bottom) interior &= (d > 0 && d < 8);
    REQUIRE(interior);
    SolverConfig grouped{.tolerance = 1e-14, .max_iterations = 100000,
                         .method = SolveMethod::newton};
    SolverConfig full = grouped;
    full.reduce_by_degree = false;
    auto a = solve_bicm(seq, grouped);
    auto b = solve_bicm(seq, full);
    for (std::uint32_t i = 0; i < 8; ++i)
        for (std::uint32_t al = 0; al < 12; ++al)
            CHECK(std::abs(link_probability(a, i, al) - link_probability(b, i, al)) <=
                  1e-12);
}

TEST_CASE("scale gauge leaves probabilities unchanged") {
    auto g = random_graph(5, 6, 9, 0.4);
    auto sol = solve_bicm(g.degrees());
    const double c = 3.7;
    for (std::uint32_t i = 0; i < 6; ++i)
        for (std::uint32_t a = 0; a < 9; ++a) {
            double xy = (sol.x[i] * c) * (sol.y[a] / c);
            CHECK(xy / (1.0 + xy) ==
                  doctest::Approx(link_probability(sol, i, a)).epsilon(1e-12));
        }
}

TEST_CASE("probability is monotone in the top multiplier") {
    double y = 0.8;
    double prev = -1.0;
    for (double x : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        double p = x * y / (1.0 + x * y);
        CHECK(p > prev);
        prev = p;
    }
}

TEST_CASE("newton and fixed point find the same probabilities") {
    auto g = random_graph(77, 20, 60, 0.15);
    auto seq = g.degrees();
    auto fp = solve_bicm(seq, {.tolerance = 1e-12});
    auto nt = solve_bicm(seq, {.tolerance = 1e-12, .method = SolveMethod::newton});
    for (std::uint32_t i = 0; i < 20; ++i)
        for (std::uint32_t a = 0; a < 60; ++a)
            CHECK(link_probability(fp, i, a) ==
                  doctest::Approx(link_probability(nt, i, a)).epsilon(1e-8));
}

TEST_CASE("inconsistent sequences are rejected") {
    CHECK_THROWS_AS(solve_bicm({{2, 1}, {1, 1}}), std::invalid_argument); // sums differ
    CHECK_THROWS_AS(solve_bicm({{4}, {2, 2}}), std::invalid_argument); // degree out of range
    CHECK_THROWS_AS(solve_bicm({{2, 0}, {2, 0}}), std::invalid_argument); // non-graphical
}

TEST_CASE("non-convergence carries the residual") {
    auto g = random_graph(3, 30, 80, 0.2);
    try {
        solve_bicm(g.degrees(), {.tolerance = 1e-12, .max_iterations = 2});
        FAIL("expected convergence_error");
    } catch (const convergence_error& e) {
        CHECK(e.residual() > 1e-12);
        CHECK(e.iterations() == 2);
    }
}

TEST_CASE("solution dump reloads bit-exactly") {
    auto g = random_graph(21, 12, 30, 0.25);
    auto sol = solve_bicm(g.degrees());
    std::ostringstream out;
    dump_solution(sol, out);
    std::istringstream in(out.str());
    auto reloaded = load_solution(in);
    CHECK(reloaded.x == sol.x);
    CHECK(reloaded.y == sol.y);
    CHECK(reloaded.residual == sol.residual);
    CHECK(reloaded.saturated_top == sol.saturated_top);
    CHECK(reloaded.top_stage == sol.top_stage);
}
