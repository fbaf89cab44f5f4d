#pragma once

#include "debatenet/bipartite_graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

namespace debatenet {

enum class SolveMethod { fixed_point, newton };

struct SolverConfig {
    double tolerance = 1e-8;  // max absolute expected-degree error
    long max_iterations = 10000;
    SolveMethod method = SolveMethod::fixed_point;
    double damping = 1.0;  // in (0, 1]; convex-combination step in log space
    bool reduce_by_degree = true;  // one multiplier per distinct degree value
};

/// Converged maximum-entropy ensemble constrained on both degree sequences.
/// Link probability for pair (i, a) is x[i]*y[a] / (1 + x[i]*y[a]).
/// Zero-degree nodes carry x (or y) == 0; nodes whose degree equals the
/// opposite layer size are listed as saturated and force probability 1.
struct BicmSolution {
    std::vector<double> x;  // top multipliers, e^{-theta_i}; 0 for zero/saturated slots
    std::vector<double> y;  // bottom multipliers
    std::vector<std::uint32_t> saturated_top;     // sorted
    std::vector<std::uint32_t> saturated_bottom;  // sorted
    // Extraction stage per node (0 = solved in the interior system). Boundary
    // nodes leave one at a time; for a pair of extracted nodes the earlier
    // stage decides the forced probability.
    std::vector<std::uint32_t> top_stage;
    std::vector<std::uint32_t> bottom_stage;
    double residual = 0.0;
    long iterations = 0;

    bool top_saturated(std::uint32_t i) const;
    bool bottom_saturated(std::uint32_t a) const;
    std::uint32_t top_count() const { return static_cast<std::uint32_t>(x.size()); }
    std::uint32_t bottom_count() const { return static_cast<std::uint32_t>(y.size()); }
};

/// Solves the bipartite configuration model for the given degree sequence.
/// Throws std::invalid_argument on inconsistent/non-graphical sequences and
/// convergence_error when the tolerance is not reached in max_iterations.
BicmSolution solve_bicm(const DegreeSequence& seq, const SolverConfig& cfg = {});

/// Probability of edge (i, a) in the ensemble; exact 0/1 on forced pairs.
double link_probability(const BicmSolution& sol, std::uint32_t i, std::uint32_t a);

/// Ensemble-expected degrees (top, bottom) computed from pair probabilities.
std::pair<std::vector<double>, std::vector<double>>
expected_degrees(const BicmSolution& sol);

/// Log-probability of observing graph `g` under the ensemble. Forced pairs
/// contribute zero; a forced probability contradicting an observed entry
/// throws std::invalid_argument.
double log_likelihood(const BicmSolution& sol, const BipartiteGraph& g);

/// JSON dump with full decimal precision; round-trips bit-exactly.
void dump_solution(const BicmSolution& sol, std::ostream& out);
BicmSolution load_solution(std::istream& in);

} // namespace debatenet
