#include "debatenet/projection.hpp"

#include "debatenet/errors.hpp"
#include "debatenet/text_io.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace debatenet {

CooccurrenceTable cooccurrence_counts(const BipartiteGraph& g) {
    // iterate bottom nodes and count their top-neighbor pairs
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> counts;
    for (std::uint32_t a = 0; a < g.bottom_count(); ++a) {
        auto tops = g.bottom_neighbors(a);
        for (std::size_t s = 0; s < tops.size(); ++s)
            for (std::size_t t = s + 1; t < tops.size(); ++t)
                counts[{tops[s], tops[t]}]++;
    }
    CooccurrenceTable table;
    table.node_count = g.top_count();
    table.entries.reserve(counts.size());
    for (const auto& [pair, count] : counts)
        table.entries.push_back({pair.first, pair.second, count});
    return table;
}

namespace {

// Kahan-compensated accumulator
struct Compensated {
    double sum = 0.0, c = 0.0;
    void add(double v) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            c += (sum - t) + v;
        else
            c += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + c; }
};

double poisson_tail(double rate, std::uint32_t observed) {
    if (observed == 0) return 1.0;
    if (rate <= 0.0) return 0.0;
    // sum the upper tail from k = observed upward; start term via lgamma
    double log_term = -rate + observed * std::log(rate) - std::lgamma(observed + 1.0);
    double term = std::exp(log_term);
    Compensated acc;
    double k = observed;
    while (term > 0.0) {
        acc.add(term);
        k += 1.0;
        term *= rate / k;
        if (term < acc.value() * 1e-18 && k > rate) break;
    }
    return std::min(1.0, acc.value());
}

} // namespace

double poisson_binomial_tail(std::span<const double> probs, std::uint32_t observed,
                             std::size_t exact_cutoff) {
    std::size_t certain = 0;
    std::vector<double> active;
    active.reserve(probs.size());
    for (double p : probs) {
        if (p < 0.0 || p > 1.0 || std::isnan(p))
            throw std::invalid_argument("success probability outside [0, 1]");
        if (p == 1.0)
            ++certain;
        else if (p > 0.0)
            active.push_back(p);
    }
    if (observed > probs.size())
        throw std::domain_error("observed count exceeds number of trials");
    if (observed <= certain) return 1.0;
    std::uint32_t v = observed - static_cast<std::uint32_t>(certain);
    if (v > active.size()) return 0.0; // support shifted by certain successes
    if (active.empty()) return v == 0 ? 1.0 : 0.0;

    if (active.size() > exact_cutoff) {
        double rate = std::accumulate(active.begin(), active.end(), 0.0);
        return poisson_tail(rate, v);
    }

    // exact convolution over counts
    std::vector<double> pmf(active.size() + 1, 0.0);
    pmf[0] = 1.0;
    std::size_t upto = 0;
    for (double p : active) {
        ++upto;
        for (std::size_t k = upto; k > 0; --k)
            pmf[k] = pmf[k] * (1.0 - p) + pmf[k - 1] * p;
        pmf[0] *= (1.0 - p);
    }
    // accumulate the tail from the largest support value downward
    Compensated tail;
    for (std::size_t k = pmf.size(); k-- > v;) tail.add(pmf[k]);
    return std::min(1.0, std::max(0.0, tail.value()));
}

BhResult bh_fdr(std::span<const double> p_values, double fdr_level) {
    if (!(fdr_level > 0.0) || !(fdr_level < 1.0))
        throw std::invalid_argument("fdr level must be in (0, 1)");
    BhResult result;
    const std::size_t m = p_values.size();
    if (m == 0) return result;
    for (double p : p_values)
        if (p < 0.0 || p > 1.0 || std::isnan(p))
            throw std::invalid_argument("p-value outside [0, 1]");

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });

    double threshold = -1.0;
    for (std::size_t r = m; r >= 1; --r) {
        double p = p_values[order[r - 1]];
        if (p <= static_cast<double>(r) * fdr_level / static_cast<double>(m)) {
            threshold = p;
            break;
        }
    }
    if (threshold < 0.0) return result; // nothing accepted, threshold 0

    result.threshold = threshold;
    for (std::size_t idx = 0; idx < m; ++idx)
        if (p_values[idx] <= threshold) result.accepted.push_back(idx);
    return result;
}

ValidatedProjection validate_projection(const BipartiteGraph& g, const BicmSolution& sol,
                                        const ProjectionConfig& cfg) {
    if (g.top_count() != sol.top_count() || g.bottom_count() != sol.bottom_count())
        throw std::invalid_argument("solution and graph dimensions differ");

    CooccurrenceTable table = cooccurrence_counts(g);
    std::vector<double> p_values(table.entries.size());

    auto compute_range = [&](std::size_t begin, std::size_t end) {
        std::vector<double> pair_probs;
        pair_probs.reserve(g.bottom_count());
        for (std::size_t e = begin; e < end; ++e) {
            const auto& entry = table.entries[e];
            pair_probs.clear();
            for (std::uint32_t a = 0; a < g.bottom_count(); ++a) {
                double prod =
                    link_probability(sol, entry.i, a) * link_probability(sol, entry.j, a);
                if (prod > 0.0) pair_probs.push_back(prod);
            }
            p_values[e] = poisson_binomial_tail(pair_probs, entry.count, cfg.exact_cutoff);
        }
    };

    int workers = std::max(1, cfg.threads);
    if (workers == 1 || table.entries.size() < 64) {
        compute_range(0, table.entries.size());
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (table.entries.size() + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            std::size_t begin = static_cast<std::size_t>(w) * chunk;
            std::size_t end = std::min(table.entries.size(), begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(compute_range, begin, end);
        }
        for (auto& t : pool) t.join();
    }

    BhResult bh = bh_fdr(p_values, cfg.fdr_level);

    ValidatedProjection proj;
    proj.node_count = g.top_count();
    proj.fdr_level = cfg.fdr_level;
    proj.bh_threshold = bh.threshold;
    proj.tested_pairs = table.entries.size();
    proj.edges.reserve(bh.accepted.size());
    for (std::size_t idx : bh.accepted) {
        const auto& entry = table.entries[idx];
        proj.edges.push_back({entry.i, entry.j, entry.count, p_values[idx]});
    }
    return proj;
}

ValidatedProjection validate_projection(const BipartiteGraph& g, const BicmSolution& sol,
                                        double fdr_level) {
    ProjectionConfig cfg;
    cfg.fdr_level = fdr_level;
    return validate_projection(g, sol, cfg);
}

void dump_projection(const ValidatedProjection& proj, const IdIndex& top_ids,
                     std::ostream& out) {
    for (const auto& e : proj.edges)
        out << top_ids.id_of(e.i) << '\t' << top_ids.id_of(e.j) << '\t' << e.cooccurrence
            << '\t' << format_double(e.p_value) << '\n';
}

void dump_projection_header(const ValidatedProjection& proj, std::ostream& out) {
    out << "{\"fdr_level\":" << format_double(proj.fdr_level)
        << ",\"bh_threshold\":" << format_double(proj.bh_threshold)
        << ",\"tested_pairs\":" << proj.tested_pairs
        << ",\"validated_edges\":" << proj.edges.size()
        << ",\"node_count\":" << proj.node_count << "}\n";
}

} // namespace debatenet
