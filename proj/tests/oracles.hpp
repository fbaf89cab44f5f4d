// Independent reference implementations used only to check production code.
// These deliberately take the slow, direct route: exhaustive enumeration,
// textbook definitions, generic optimization.
#pragma once

#include "debatenet/bicm.hpp"
#include "debatenet/bipartite_graph.hpp"
#include "debatenet/community.hpp"
#include "debatenet/weighted_graph.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace oracles {

/// P(V >= observed) by summing over all 2^n outcomes.
double pb_tail_enumeration(std::span<const double> probs, std::uint32_t observed);

/// Benjamini-Hochberg acceptance transcribed from the definition: every index
/// is checked independently against the step-up threshold.
std::vector<std::size_t> bh_direct(std::span<const double> p_values, double fdr_level);

/// Shared-neighbor counts by pairwise set intersection.
std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t>
cooccurrence_brute(const debatenet::BipartiteGraph& g);

/// Modularity via the delta-sum form (1/2W) sum_ij [A_ij - g k_i k_j / 2W].
double modularity_delta_form(const debatenet::WeightedGraph& g,
                             const debatenet::CommunityAssignment& a, double resolution);

/// Full-ensemble statistics for tiny systems: enumerate every binary matrix
/// weighted by the independent pair probabilities of the solution.
struct EnsembleStats {
    double total_probability = 0.0;
    std::vector<double> mean_top_degree;
    std::vector<double> mean_bottom_degree;
    double marginal_00 = 0.0; // P(a_00 = 1)
};
EnsembleStats enumerate_ensemble(const debatenet::BicmSolution& sol);

/// Generic maximum-likelihood fit by backtracking gradient ascent on the
/// log-multipliers; returns the pair-probability matrix. Interior degree
/// sequences only (no saturated or zero-degree nodes).
std::vector<std::vector<double>> mle_gradient_probabilities(
    const debatenet::DegreeSequence& seq, double grad_tolerance = 1e-10,
    long max_steps = 200000);

/// Log-likelihood of a graph under arbitrary multiplier vectors.
double log_likelihood_at(std::span<const double> x, std::span<const double> y,
                         const debatenet::BipartiteGraph& g);

} // namespace oracles
