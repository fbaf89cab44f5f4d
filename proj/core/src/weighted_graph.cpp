#include "debatenet/weighted_graph.hpp"

#include "debatenet/errors.hpp"
#include "debatenet/text_io.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

namespace debatenet {

WeightedGraph WeightedGraph::build(std::uint32_t node_count, std::span<const Edge> edges,
                                   bool directed, bool allow_self_loops) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> merged;
    for (const Edge& e : edges) {
        if (e.u >= node_count || e.v >= node_count)
            throw std::invalid_argument("weighted edge endpoint out of range");
        if (!(e.weight > 0.0))
            throw std::invalid_argument("edge weight must be strictly positive");
        if (e.u == e.v && !allow_self_loops)
            throw std::invalid_argument("self-loop rejected (not enabled)");
        auto key = (!directed && e.v < e.u) ? std::make_pair(e.v, e.u)
                                            : std::make_pair(e.u, e.v);
        merged[key] += e.weight;
    }

    WeightedGraph g;
    g.node_count_ = node_count;
    g.directed_ = directed;
    g.edges_.reserve(merged.size());
    for (const auto& [key, w] : merged) {
        g.edges_.push_back({key.first, key.second, w});
        g.total_weight_ += w;
    }

    g.strength_.assign(node_count, 0.0);
    std::vector<std::size_t> deg(node_count, 0);
    for (const Edge& e : g.edges_) {
        deg[e.u]++;
        if (e.u != e.v && !directed) deg[e.v]++;
        if (directed) {
            g.strength_[e.u] += e.weight;
        } else {
            g.strength_[e.u] += e.weight;
            g.strength_[e.v] += e.weight; // self-loop counted twice on purpose
        }
    }
    g.adj_ptr_.assign(node_count + 1, 0);
    for (std::uint32_t u = 0; u < node_count; ++u) g.adj_ptr_[u + 1] = g.adj_ptr_[u] + deg[u];
    g.adj_.resize(g.adj_ptr_.back());
    std::vector<std::size_t> cursor(g.adj_ptr_.begin(), g.adj_ptr_.end() - 1);
    for (const Edge& e : g.edges_) {
        g.adj_[cursor[e.u]++] = {e.v, e.weight};
        if (e.u != e.v && !directed) g.adj_[cursor[e.v]++] = {e.u, e.weight};
    }
    for (std::uint32_t u = 0; u < node_count; ++u)
        std::sort(g.adj_.begin() + static_cast<std::ptrdiff_t>(g.adj_ptr_[u]),
                  g.adj_.begin() + static_cast<std::ptrdiff_t>(g.adj_ptr_[u + 1]));
    return g;
}

std::span<const std::pair<std::uint32_t, double>>
WeightedGraph::neighbors(std::uint32_t u) const {
    if (u >= node_count_) throw std::out_of_range("node index out of range");
    return {adj_.data() + adj_ptr_[u], adj_ptr_[u + 1] - adj_ptr_[u]};
}

WeightedBuildResult build_weighted_graph(
    std::span<const std::tuple<std::string, std::string, double>> edge_list,
    bool directed, bool allow_self_loops) {
    WeightedBuildResult result;
    std::vector<WeightedGraph::Edge> edges;
    edges.reserve(edge_list.size());
    for (const auto& [u_id, v_id, w] : edge_list)
        edges.push_back({result.ids.add(u_id), result.ids.add(v_id), w});
    result.graph =
        WeightedGraph::build(result.ids.size(), edges, directed, allow_self_loops);
    return result;
}

void dump_weighted(const WeightedGraph& g, const IdIndex& ids, std::ostream& out) {
    // endpoints and lines ordered by id so the dump does not depend on index
    // assignment; reload then re-dump is bit-identical
    std::vector<std::tuple<std::string, std::string, double>> lines;
    lines.reserve(g.edge_count());
    for (const auto& e : g.edges()) {
        std::string u = ids.id_of(e.u), v = ids.id_of(e.v);
        if (!g.directed() && v < u) std::swap(u, v);
        lines.emplace_back(std::move(u), std::move(v), e.weight);
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& [u, v, w] : lines)
        out << u << '\t' << v << '\t' << format_double(w) << '\n';
}

WeightedBuildResult load_weighted(std::istream& in, bool directed, bool allow_self_loops) {
    std::vector<std::tuple<std::string, std::string, double>> edge_list;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split(line, '\t');
        if (fields.size() != 3)
            throw format_error("weighted edge list: expected 3 fields at line " +
                               std::to_string(lineno));
        edge_list.emplace_back(std::string(fields[0]), std::string(fields[1]),
                               parse_double(fields[2]));
    }
    return build_weighted_graph(edge_list, directed, allow_self_loops);
}

} // namespace debatenet
