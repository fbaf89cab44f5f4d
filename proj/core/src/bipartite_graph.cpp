#include "debatenet/bipartite_graph.hpp"

#include "debatenet/errors.hpp"
#include "debatenet/text_io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace debatenet {

BipartiteGraph BipartiteGraph::from_pairs(
    std::uint32_t top_count, std::uint32_t bottom_count,
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs) {
    for (const auto& [i, a] : pairs) {
        if (i >= top_count || a >= bottom_count)
            throw std::invalid_argument("bipartite edge index out of range");
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    BipartiteGraph g;
    g.top_count_ = top_count;
    g.bottom_count_ = bottom_count;
    g.row_ptr_.assign(top_count + 1, 0);
    g.col_ptr_.assign(bottom_count + 1, 0);
    g.row_adj_.reserve(pairs.size());
    for (const auto& [i, a] : pairs) g.row_ptr_[i + 1]++;
    for (std::uint32_t i = 0; i < top_count; ++i) g.row_ptr_[i + 1] += g.row_ptr_[i];
    for (const auto& [i, a] : pairs) g.row_adj_.push_back(a);

    for (const auto& [i, a] : pairs) g.col_ptr_[a + 1]++;
    for (std::uint32_t a = 0; a < bottom_count; ++a) g.col_ptr_[a + 1] += g.col_ptr_[a];
    g.col_adj_.resize(pairs.size());
    std::vector<std::size_t> cursor(g.col_ptr_.begin(), g.col_ptr_.end() - 1);
    for (const auto& [i, a] : pairs) g.col_adj_[cursor[a]++] = i;
    return g;
}

std::span<const std::uint32_t> BipartiteGraph::top_neighbors(std::uint32_t i) const {
    if (i >= top_count_) throw std::out_of_range("top index out of range");
    return {row_adj_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
}

std::span<const std::uint32_t> BipartiteGraph::bottom_neighbors(std::uint32_t a) const {
    if (a >= bottom_count_) throw std::out_of_range("bottom index out of range");
    return {col_adj_.data() + col_ptr_[a], col_ptr_[a + 1] - col_ptr_[a]};
}

bool BipartiteGraph::has_edge(std::uint32_t i, std::uint32_t a) const {
    auto nb = top_neighbors(i);
    return std::binary_search(nb.begin(), nb.end(), a);
}

DegreeSequence BipartiteGraph::degrees() const {
    DegreeSequence seq;
    seq.top.resize(top_count_);
    seq.bottom.resize(bottom_count_);
    for (std::uint32_t i = 0; i < top_count_; ++i)
        seq.top[i] = static_cast<std::uint32_t>(row_ptr_[i + 1] - row_ptr_[i]);
    for (std::uint32_t a = 0; a < bottom_count_; ++a)
        seq.bottom[a] = static_cast<std::uint32_t>(col_ptr_[a + 1] - col_ptr_[a]);
    return seq;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> BipartiteGraph::edges() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    out.reserve(row_adj_.size());
    for (std::uint32_t i = 0; i < top_count_; ++i)
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
            out.emplace_back(i, row_adj_[k]);
    return out;
}

BipartiteBuildResult build_bipartite(
    std::span<const std::pair<std::string, std::string>> edge_list) {
    if (edge_list.empty())
        throw std::invalid_argument("build_bipartite: empty edge list");
    BipartiteBuildResult result;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(edge_list.size());
    for (const auto& [top_id, bottom_id] : edge_list) {
        pairs.emplace_back(result.top_ids.add(top_id), result.bottom_ids.add(bottom_id));
    }
    result.graph = BipartiteGraph::from_pairs(result.top_ids.size(),
                                              result.bottom_ids.size(), std::move(pairs));
    return result;
}

DegreeSequence degrees(const BipartiteGraph& g) { return g.degrees(); }

void dump_bipartite(const BipartiteGraph& g, const IdIndex& top_ids,
                    const IdIndex& bottom_ids, std::ostream& out) {
    // id-lexicographic order keeps the dump a pure function of the labeled
    // graph, so dump(load(dump(g))) is bit-identical
    std::vector<std::pair<std::string, std::string>> lines;
    lines.reserve(g.edge_count());
    for (const auto& [i, a] : g.edges())
        lines.emplace_back(top_ids.id_of(i), bottom_ids.id_of(a));
    std::sort(lines.begin(), lines.end());
    for (const auto& [top, bottom] : lines) out << top << '\t' << bottom << '\n';
}

BipartiteBuildResult load_bipartite(std::istream& in) {
    std::vector<std::pair<std::string, std::string>> edge_list;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split(line, '\t');
        if (fields.size() != 2)
            throw format_error("bipartite edge list: expected 2 fields at line " +
                               std::to_string(lineno));
        edge_list.emplace_back(std::string(fields[0]), std::string(fields[1]));
    }
    return build_bipartite(edge_list);
}

} // namespace debatenet
