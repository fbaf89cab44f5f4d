#pragma once

#include "debatenet/id_index.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace debatenet {

/// Observed degrees of both layers. Invariant: sum(top) == sum(bottom).
struct DegreeSequence {
    std::vector<std::uint32_t> top;    // one entry per top (verified) node
    std::vector<std::uint32_t> bottom; // one entry per bottom (unverified) node
};

/// Binary bipartite incidence, immutable after construction.
/// Stored in both row-major (per top node) and column-major (per bottom node)
/// sparse form; neighbor lists are sorted.
class BipartiteGraph {
public:
    /// Builds from index pairs, collapsing duplicates. Pairs must be in range.
    static BipartiteGraph from_pairs(std::uint32_t top_count, std::uint32_t bottom_count,
                                     std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs);

    std::uint32_t top_count() const { return top_count_; }
    std::uint32_t bottom_count() const { return bottom_count_; }
    std::size_t edge_count() const { return row_adj_.size(); }

    std::span<const std::uint32_t> top_neighbors(std::uint32_t i) const;
    std::span<const std::uint32_t> bottom_neighbors(std::uint32_t a) const;

    bool has_edge(std::uint32_t i, std::uint32_t a) const;

    DegreeSequence degrees() const;

    /// Edges in (top, bottom) lexicographic order.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;

private:
    std::uint32_t top_count_ = 0;
    std::uint32_t bottom_count_ = 0;
    std::vector<std::size_t> row_ptr_;
    std::vector<std::uint32_t> row_adj_;
    std::vector<std::size_t> col_ptr_;
    std::vector<std::uint32_t> col_adj_;
};

struct BipartiteBuildResult {
    BipartiteGraph graph;
    IdIndex top_ids;
    IdIndex bottom_ids;
};

/// Builds the binary incidence from (top_id, bottom_id) pairs; duplicates
/// collapse to one edge, indices are assigned in first-seen order.
/// Throws std::invalid_argument on an empty edge list.
BipartiteBuildResult build_bipartite(
    std::span<const std::pair<std::string, std::string>> edge_list);

DegreeSequence degrees(const BipartiteGraph& g);

/// Edge-list text format: one "top_id<TAB>bottom_id" line per edge, UTF-8.
void dump_bipartite(const BipartiteGraph& g, const IdIndex& top_ids,
                    const IdIndex& bottom_ids, std::ostream& out);
BipartiteBuildResult load_bipartite(std::istream& in);

} // namespace debatenet
