#pragma once

#include "debatenet/bicm.hpp"
#include "debatenet/bipartite_graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace debatenet {

/// Observed co-occurrences: for top pair (i, j), i < j, the number of shared
/// bottom neighbors. Pairs with zero co-occurrence are omitted.
struct CooccurrenceTable {
    struct Entry {
        std::uint32_t i, j;
        std::uint32_t count;
    };
    std::uint32_t node_count = 0;
    std::vector<Entry> entries; // sorted by (i, j)
};

CooccurrenceTable cooccurrence_counts(const BipartiteGraph& g);

/// One-sided tail P(V >= observed) of the Poisson-binomial distribution with
/// the given success probabilities. Exact O(n^2) convolution when the number
/// of nonzero probabilities is at most `exact_cutoff`; Poisson approximation
/// with matching rate above it. Throws std::domain_error when observed exceeds
/// the number of trials.
double poisson_binomial_tail(std::span<const double> probs, std::uint32_t observed,
                             std::size_t exact_cutoff = 4096);

struct BhResult {
    std::vector<std::size_t> accepted; // indices into the input vector, sorted
    double threshold = 0.0;            // largest accepted p-value; 0 when none
};

/// Benjamini-Hochberg step-up procedure at the given false-discovery level.
BhResult bh_fdr(std::span<const double> p_values, double fdr_level);

/// Monopartite projection onto the top layer keeping statistically
/// significant pairs only.
struct ValidatedProjection {
    struct Edge {
        std::uint32_t i, j;
        std::uint32_t cooccurrence;
        double p_value;
    };
    std::uint32_t node_count = 0;
    std::vector<Edge> edges; // sorted by (i, j)
    double fdr_level = 0.0;
    double bh_threshold = 0.0;
    std::size_t tested_pairs = 0;
};

struct ProjectionConfig {
    double fdr_level = 0.05;
    std::size_t exact_cutoff = 4096;
    int threads = 1;
};

ValidatedProjection validate_projection(const BipartiteGraph& g, const BicmSolution& sol,
                                        const ProjectionConfig& cfg);
ValidatedProjection validate_projection(const BipartiteGraph& g, const BicmSolution& sol,
                                        double fdr_level);

/// Edge-list export "i<TAB>j<TAB>cooccurrence<TAB>p_value" with original ids.
void dump_projection(const ValidatedProjection& proj, const IdIndex& top_ids,
                     std::ostream& out);
/// Companion JSON header (fdr level, threshold, tested pairs).
void dump_projection_header(const ValidatedProjection& proj, std::ostream& out);

} // namespace debatenet
