#include "debatenet/community.hpp"

#include "debatenet/errors.hpp"
#include "debatenet/rng.hpp"
#include "debatenet/text_io.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace debatenet {

namespace {

constexpr const char* kUnlabeledMarker = "__unlabeled__";

// Aggregated working graph for Louvain levels. Self-loop weight w contributes
// w to total weight and 2w to the node strength.
struct LevelGraph {
    std::uint32_t n = 0;
    double total_weight = 0.0;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adj; // self-loop once
    std::vector<double> self_loop;
    std::vector<double> strength;
};

LevelGraph from_weighted(const WeightedGraph& g) {
    LevelGraph lg;
    lg.n = g.node_count();
    lg.total_weight = g.total_weight();
    lg.adj.resize(lg.n);
    lg.self_loop.assign(lg.n, 0.0);
    lg.strength.assign(lg.n, 0.0);
    for (std::uint32_t u = 0; u < lg.n; ++u) {
        lg.strength[u] = g.strength(u);
        for (const auto& [v, w] : g.neighbors(u)) {
            if (v == u)
                lg.self_loop[u] = w;
            else
                lg.adj[u].push_back({v, w});
        }
    }
    return lg;
}

// One pass structure: local moves until stable, then report the community of
// every node. Returns number of moves performed.
std::size_t local_moves(const LevelGraph& lg, double resolution, SeededRng& rng,
                        std::vector<std::uint32_t>& comm) {
    const double two_w = 2.0 * lg.total_weight;
    std::vector<double> comm_strength(lg.n, 0.0);
    for (std::uint32_t u = 0; u < lg.n; ++u) comm_strength[comm[u]] += lg.strength[u];

    std::vector<std::uint32_t> order(lg.n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    std::vector<double> link_weight(lg.n, 0.0);
    std::vector<std::uint32_t> touched;
    std::size_t total_moves = 0;
    const int max_passes = 1000;
    for (int pass = 0; pass < max_passes; ++pass) {
        std::size_t moves = 0;
        for (std::uint32_t u : order) {
            std::uint32_t c0 = comm[u];
            touched.clear();
            touched.push_back(c0);
            for (const auto& [v, w] : lg.adj[u]) {
                std::uint32_t c = comm[v];
                if (link_weight[c] == 0.0 && c != c0) touched.push_back(c);
                link_weight[c] += w;
            }
            comm_strength[c0] -= lg.strength[u];

            // score(c) = l_c - resolution * k_u * s_c / 2W; self-loop cancels
            auto score = [&](std::uint32_t c) {
                return link_weight[c] -
                       resolution * lg.strength[u] * comm_strength[c] / two_w;
            };
            std::uint32_t best = c0;
            double best_score = score(c0);
            for (std::uint32_t c : touched) {
                if (c == c0) continue;
                double s = score(c);
                if (s > best_score || (s == best_score && c < best && best != c0)) {
                    best = c;
                    best_score = s;
                }
            }
            comm[u] = best;
            comm_strength[best] += lg.strength[u];
            if (best != c0) ++moves;
            for (std::uint32_t c : touched) link_weight[c] = 0.0;
        }
        total_moves += moves;
        if (moves == 0) break;
    }
    return total_moves;
}

// Renumbers communities by first appearance over node index order.
std::uint32_t renumber(std::vector<std::uint32_t>& comm) {
    std::vector<std::int64_t> remap(comm.size(), -1);
    std::uint32_t next = 0;
    for (auto& c : comm) {
        if (remap[c] < 0) remap[c] = next++;
        c = static_cast<std::uint32_t>(remap[c]);
    }
    return next;
}

LevelGraph aggregate(const LevelGraph& lg, const std::vector<std::uint32_t>& comm,
                     std::uint32_t n_comm) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> edges;
    for (std::uint32_t u = 0; u < lg.n; ++u) {
        if (lg.self_loop[u] > 0.0) {
            std::uint32_t c = comm[u];
            edges[{c, c}] += lg.self_loop[u];
        }
        for (const auto& [v, w] : lg.adj[u]) {
            if (v < u) continue; // each undirected edge once
            std::uint32_t cu = comm[u], cv = comm[v];
            if (cu > cv) std::swap(cu, cv);
            edges[{cu, cv}] += w;
        }
    }
    LevelGraph out;
    out.n = n_comm;
    out.adj.resize(n_comm);
    out.self_loop.assign(n_comm, 0.0);
    out.strength.assign(n_comm, 0.0);
    for (const auto& [key, w] : edges) {
        out.total_weight += w;
        if (key.first == key.second) {
            out.self_loop[key.first] = w;
            out.strength[key.first] += 2.0 * w;
        } else {
            out.adj[key.first].push_back({key.second, w});
            out.adj[key.second].push_back({key.first, w});
            out.strength[key.first] += w;
            out.strength[key.second] += w;
        }
    }
    return out;
}

} // namespace

std::size_t CommunityAssignment::labeled_count() const {
    std::size_t n = 0;
    for (auto l : label)
        if (l != unlabeled) ++n;
    return n;
}

CommunityAssignment make_assignment(std::uint32_t node_count,
                                    const std::map<std::uint32_t, std::string>& seeds) {
    CommunityAssignment a;
    a.label.assign(node_count, CommunityAssignment::unlabeled);
    for (const auto& [node, name] : seeds) {
        if (node >= node_count) throw std::invalid_argument("seed node out of range");
        if (name == kUnlabeledMarker)
            throw std::invalid_argument("label name collides with the unlabeled marker");
        a.label_names.push_back(name);
    }
    std::sort(a.label_names.begin(), a.label_names.end());
    a.label_names.erase(std::unique(a.label_names.begin(), a.label_names.end()),
                        a.label_names.end());
    for (const auto& [node, name] : seeds) {
        auto it = std::lower_bound(a.label_names.begin(), a.label_names.end(), name);
        a.label[node] = static_cast<std::int32_t>(it - a.label_names.begin());
    }
    return a;
}

CommunityAssignment louvain(const WeightedGraph& g, double resolution,
                            std::uint64_t rng_seed) {
    if (g.directed())
        throw std::invalid_argument("louvain expects an undirected graph");
    if (g.edge_count() == 0)
        throw std::invalid_argument("louvain expects a graph with at least one edge");

    SeededRng rng(rng_seed);
    LevelGraph level = from_weighted(g);
    std::vector<std::uint32_t> node_comm(g.node_count());
    std::iota(node_comm.begin(), node_comm.end(), 0);

    while (true) {
        std::vector<std::uint32_t> comm(level.n);
        std::iota(comm.begin(), comm.end(), 0);
        std::size_t moves = local_moves(level, resolution, rng, comm);
        if (moves == 0) break;
        std::uint32_t n_comm = renumber(comm);
        for (auto& c : node_comm) c = comm[c];
        if (n_comm == level.n) break;
        level = aggregate(level, comm, n_comm);
    }

    std::uint32_t n_final = renumber(node_comm);
    CommunityAssignment out;
    out.label.resize(g.node_count());
    for (std::uint32_t u = 0; u < g.node_count(); ++u)
        out.label[u] = static_cast<std::int32_t>(node_comm[u]);
    out.label_names.reserve(n_final);
    for (std::uint32_t c = 0; c < n_final; ++c) out.label_names.push_back(std::to_string(c));
    return out;
}

double modularity(const WeightedGraph& g, const CommunityAssignment& a,
                  double resolution) {
    if (a.label.size() != g.node_count())
        throw std::invalid_argument("assignment does not cover the graph");
    for (std::uint32_t u = 0; u < g.node_count(); ++u)
        if (a.label[u] == CommunityAssignment::unlabeled)
            throw std::invalid_argument("node missing from assignment");
    double total = g.total_weight();
    if (total <= 0.0) throw std::invalid_argument("modularity needs positive total weight");

    std::map<std::int32_t, double> intra, strength;
    for (const auto& e : g.edges())
        if (a.label[e.u] == a.label[e.v]) intra[a.label[e.u]] += e.weight;
    for (std::uint32_t u = 0; u < g.node_count(); ++u)
        strength[a.label[u]] += g.strength(u);

    double q = 0.0;
    for (const auto& [c, s] : strength) {
        double w_c = 0.0;
        if (auto it = intra.find(c); it != intra.end()) w_c = it->second;
        double frac = s / (2.0 * total);
        q += w_c / total - resolution * frac * frac;
    }
    return q;
}

CommunityAssignment propagate_labels(const WeightedGraph& g,
                                     const CommunityAssignment& seeds,
                                     const PropagationConfig& cfg) {
    if (cfg.max_sweeps < 1) throw std::invalid_argument("max_sweeps must be >= 1");
    if (seeds.label.size() != g.node_count())
        throw std::invalid_argument("seed assignment does not cover the graph");
    if (seeds.labeled_count() == 0)
        throw std::invalid_argument("label propagation needs at least one seeded node");

    CommunityAssignment out = seeds;

    // rank labels by name so ties resolve to the lexicographically smallest
    std::vector<std::uint32_t> rank(out.label_names.size());
    {
        std::vector<std::uint32_t> by_name(out.label_names.size());
        std::iota(by_name.begin(), by_name.end(), 0);
        std::sort(by_name.begin(), by_name.end(), [&](std::uint32_t a, std::uint32_t b) {
            return out.label_names[a] < out.label_names[b];
        });
        for (std::uint32_t r = 0; r < by_name.size(); ++r) rank[by_name[r]] = r;
    }

    std::vector<std::uint32_t> updatable;
    for (std::uint32_t u = 0; u < g.node_count(); ++u)
        if (!cfg.seed_frozen || seeds.label[u] == CommunityAssignment::unlabeled)
            updatable.push_back(u);

    SeededRng rng(cfg.rng_seed);
    std::vector<double> weight(out.label_names.size(), 0.0);
    std::vector<std::int32_t> touched;
    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
        rng.shuffle(updatable);
        std::size_t changes = 0;
        for (std::uint32_t u : updatable) {
            touched.clear();
            for (const auto& [v, w] : g.neighbors(u)) {
                if (v == u) continue;
                std::int32_t l = out.label[v];
                if (l == CommunityAssignment::unlabeled) continue;
                if (weight[l] == 0.0) touched.push_back(l);
                weight[l] += w;
            }
            if (!touched.empty()) {
                std::int32_t best = touched.front();
                for (std::int32_t l : touched) {
                    if (weight[l] > weight[best] ||
                        (weight[l] == weight[best] && rank[l] < rank[best]))
                        best = l;
                }
                if (best != out.label[u]) {
                    out.label[u] = best;
                    ++changes;
                }
            }
            for (std::int32_t l : touched) weight[l] = 0.0;
        }
        if (changes == 0) break;
    }
    return out;
}

double normalized_mutual_information(const CommunityAssignment& a,
                                     const CommunityAssignment& b) {
    if (a.label.size() != b.label.size())
        throw std::invalid_argument("assignments cover different node sets");
    std::map<std::pair<std::int32_t, std::int32_t>, double> joint;
    std::map<std::int32_t, double> ma, mb;
    double n = 0.0;
    for (std::size_t u = 0; u < a.label.size(); ++u) {
        if (a.label[u] == CommunityAssignment::unlabeled ||
            b.label[u] == CommunityAssignment::unlabeled)
            continue;
        joint[{a.label[u], b.label[u]}] += 1.0;
        ma[a.label[u]] += 1.0;
        mb[b.label[u]] += 1.0;
        n += 1.0;
    }
    if (n == 0.0) return 0.0;
    double h_a = 0.0, h_b = 0.0, mi = 0.0;
    for (const auto& [c, cnt] : ma) h_a -= cnt / n * std::log(cnt / n);
    for (const auto& [c, cnt] : mb) h_b -= cnt / n * std::log(cnt / n);
    for (const auto& [key, cnt] : joint)
        mi += cnt / n * std::log(cnt * n / (ma[key.first] * mb[key.second]));
    if (h_a + h_b == 0.0) return 1.0; // both trivial partitions
    return 2.0 * mi / (h_a + h_b);
}

void dump_assignment(const CommunityAssignment& a, const IdIndex& ids, std::ostream& out) {
    for (std::uint32_t u = 0; u < a.label.size(); ++u) {
        out << ids.id_of(u) << '\t';
        if (a.label[u] == CommunityAssignment::unlabeled)
            out << kUnlabeledMarker;
        else
            out << a.label_names[static_cast<std::size_t>(a.label[u])];
        out << '\n';
    }
}

CommunityAssignment load_assignment(std::istream& in, const IdIndex& ids) {
    std::map<std::uint32_t, std::string> seeds;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split(line, '\t');
        if (fields.size() != 2)
            throw format_error("assignment: expected 2 fields at line " +
                               std::to_string(lineno));
        if (fields[1] == kUnlabeledMarker) continue;
        auto idx = ids.find(fields[0]);
        if (!idx)
            throw format_error("assignment references unknown node id '" +
                               std::string(fields[0]) + "'");
        seeds[*idx] = std::string(fields[1]);
    }
    return make_assignment(ids.size(), seeds);
}

} // namespace debatenet
