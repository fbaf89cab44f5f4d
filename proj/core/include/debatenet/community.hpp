#pragma once

#include "debatenet/weighted_graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace debatenet {

/// Per-node community labels. Labels are interned strings; `unlabeled` marks
/// nodes that no label reached.
struct CommunityAssignment {
    static constexpr std::int32_t unlabeled = -1;

    std::vector<std::int32_t> label;       // per node index
    std::vector<std::string> label_names;  // label id -> name

    bool is_labeled(std::uint32_t node) const { return label.at(node) != unlabeled; }
    const std::string& name_of(std::uint32_t node) const {
        return label_names.at(static_cast<std::size_t>(label.at(node)));
    }
    std::size_t node_count() const { return label.size(); }
    std::size_t labeled_count() const;
};

/// Builds an assignment from explicit (node, label-name) seeds; unnamed nodes
/// stay unlabeled. Label ids are assigned in lexicographic name order.
CommunityAssignment make_assignment(std::uint32_t node_count,
                                    const std::map<std::uint32_t, std::string>& seeds);

/// Greedy modularity optimization (local moves + aggregation). Node visiting
/// order is drawn from the seeded generator; output is deterministic for a
/// fixed seed. Throws std::invalid_argument on a graph without edges.
CommunityAssignment louvain(const WeightedGraph& g, double resolution = 1.0,
                            std::uint64_t rng_seed = 0);

/// Q = sum_c [ w_c / W - resolution * (s_c / 2W)^2 ] with W the total edge
/// weight, w_c the intra-community weight and s_c the community strength.
/// Throws std::invalid_argument when a node is missing from the assignment.
double modularity(const WeightedGraph& g, const CommunityAssignment& a,
                  double resolution = 1.0);

struct PropagationConfig {
    int max_sweeps = 100;
    bool seed_frozen = true;
    std::uint64_t rng_seed = 0;
};

/// Asynchronous majority-weight label propagation from seeded nodes, visiting
/// updatable nodes in seeded-random order each sweep. Ties resolve to the
/// lexicographically smallest label name. Nodes in components without a seed
/// remain unlabeled. Throws std::invalid_argument when no node is seeded.
CommunityAssignment propagate_labels(const WeightedGraph& g,
                                     const CommunityAssignment& seeds,
                                     const PropagationConfig& cfg);

/// NMI (2I / (H1 + H2)) over nodes labeled in both assignments; 1.0 when both
/// partitions are single-cluster and identical in support.
double normalized_mutual_information(const CommunityAssignment& a,
                                     const CommunityAssignment& b);

/// Export "node_id<TAB>label" (unlabeled nodes carry `__unlabeled__`).
void dump_assignment(const CommunityAssignment& a, const IdIndex& ids, std::ostream& out);
/// Seeds input in the same format; unknown ids throw format_error.
CommunityAssignment load_assignment(std::istream& in, const IdIndex& ids);

} // namespace debatenet
