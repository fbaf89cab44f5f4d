#pragma once

#include "debatenet/id_index.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace debatenet {

/// Weighted graph with strictly positive edge weights, immutable after
/// construction. Undirected graphs store each edge once under canonical
/// (min, max) ordering; adjacency exposes both directions.
class WeightedGraph {
public:
    struct Edge {
        std::uint32_t u, v;
        double weight;
    };

    /// Merges parallel edges by summing weights. Throws std::invalid_argument
    /// on non-positive weights, out-of-range endpoints, or self-loops unless
    /// `allow_self_loops`.
    static WeightedGraph build(std::uint32_t node_count, std::span<const Edge> edges,
                               bool directed, bool allow_self_loops = false);

    std::uint32_t node_count() const { return node_count_; }
    std::size_t edge_count() const { return edges_.size(); }
    bool directed() const { return directed_; }

    /// Sum of stored edge weights (each undirected edge counted once).
    double total_weight() const { return total_weight_; }

    /// For undirected graphs: incident weight with self-loops counted twice,
    /// so that strengths sum to 2 * total_weight(). For directed graphs:
    /// out-strength.
    double strength(std::uint32_t u) const { return strength_.at(u); }

    /// Neighbors with weights; for undirected graphs both directions appear,
    /// a self-loop appears once. Sorted by neighbor index.
    std::span<const std::pair<std::uint32_t, double>> neighbors(std::uint32_t u) const;

    /// Canonical edge list sorted by (u, v).
    const std::vector<Edge>& edges() const { return edges_; }

private:
    std::uint32_t node_count_ = 0;
    bool directed_ = false;
    double total_weight_ = 0.0;
    std::vector<Edge> edges_;
    std::vector<double> strength_;
    std::vector<std::size_t> adj_ptr_;
    std::vector<std::pair<std::uint32_t, double>> adj_;
};

struct WeightedBuildResult {
    WeightedGraph graph;
    IdIndex ids;
};

/// Builds from (u_id, v_id, weight) triples; ids indexed in first-seen order.
WeightedBuildResult build_weighted_graph(
    std::span<const std::tuple<std::string, std::string, double>> edge_list,
    bool directed, bool allow_self_loops = false);

/// Text format: "u<TAB>v<TAB>weight" per line.
void dump_weighted(const WeightedGraph& g, const IdIndex& ids, std::ostream& out);
WeightedBuildResult load_weighted(std::istream& in, bool directed,
                                  bool allow_self_loops = false);

} // namespace debatenet
