#include "debatenet/bicm.hpp"

#include "debatenet/errors.hpp"
#include "debatenet/text_io.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace debatenet {

namespace {

double sigmoid(double t) {
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    double e = std::exp(t);
    return e / (1.0 + e);
}

double softplus(double t) {
    if (t > 35.0) return t;
    return std::log1p(std::exp(t));
}

// Boundary-node extraction. Nodes whose remaining degree hits 0 (no partners
// left to assign) or the full remaining opposite-layer size (every partner
// forced) leave the system one at a time; the extraction stage number decides
// forced probabilities for pairs of extracted nodes (earliest extraction wins).
struct Peeled {
    std::vector<std::uint32_t> top_stage, bottom_stage; // 0 = still active
    std::vector<std::uint8_t> top_sat, bottom_sat;
    std::vector<std::int64_t> rem_top, rem_bottom; // remaining degrees of active nodes
    std::uint32_t active_top = 0, active_bottom = 0;
};

Peeled peel(const DegreeSequence& seq) {
    const auto n_top = static_cast<std::uint32_t>(seq.top.size());
    const auto n_bottom = static_cast<std::uint32_t>(seq.bottom.size());
    Peeled p;
    p.top_stage.assign(n_top, 0);
    p.bottom_stage.assign(n_bottom, 0);
    p.top_sat.assign(n_top, 0);
    p.bottom_sat.assign(n_bottom, 0);
    p.rem_top.assign(seq.top.begin(), seq.top.end());
    p.rem_bottom.assign(seq.bottom.begin(), seq.bottom.end());
    p.active_top = n_top;
    p.active_bottom = n_bottom;

    std::uint32_t stage = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::uint32_t i = 0; i < n_top; ++i) {
            if (p.top_stage[i] != 0) continue;
            if (p.rem_top[i] < 0 || p.rem_top[i] > p.active_bottom)
                throw std::invalid_argument("degree sequence is not graphical");
            if (p.rem_top[i] == 0) {
                p.top_stage[i] = stage++;
                p.active_top--;
                changed = true;
            } else if (p.rem_top[i] == static_cast<std::int64_t>(p.active_bottom)) {
                p.top_stage[i] = stage++;
                p.top_sat[i] = 1;
                p.active_top--;
                for (std::uint32_t a = 0; a < n_bottom; ++a)
                    if (p.bottom_stage[a] == 0) p.rem_bottom[a]--;
                changed = true;
            }
        }
        for (std::uint32_t a = 0; a < n_bottom; ++a) {
            if (p.bottom_stage[a] != 0) continue;
            if (p.rem_bottom[a] < 0 || p.rem_bottom[a] > p.active_top)
                throw std::invalid_argument("degree sequence is not graphical");
            if (p.rem_bottom[a] == 0) {
                p.bottom_stage[a] = stage++;
                p.active_bottom--;
                changed = true;
            } else if (p.rem_bottom[a] == static_cast<std::int64_t>(p.active_top)) {
                p.bottom_stage[a] = stage++;
                p.bottom_sat[a] = 1;
                p.active_bottom--;
                for (std::uint32_t i = 0; i < n_top; ++i)
                    if (p.top_stage[i] == 0) p.rem_top[i]--;
                changed = true;
            }
        }
    }
    // final range check for the interior problem
    for (std::uint32_t i = 0; i < n_top; ++i)
        if (p.top_stage[i] == 0 &&
            (p.rem_top[i] <= 0 || p.rem_top[i] >= p.active_bottom))
            throw std::invalid_argument("degree sequence is not graphical");
    for (std::uint32_t a = 0; a < n_bottom; ++a)
        if (p.bottom_stage[a] == 0 &&
            (p.rem_bottom[a] <= 0 || p.rem_bottom[a] >= p.active_top))
            throw std::invalid_argument("degree sequence is not graphical");
    return p;
}

// One multiplier per distinct remaining degree value; classes sorted by degree
// so the reduced system is invariant under node relabeling.
struct Classes {
    std::vector<double> degree;        // constraint per member node
    std::vector<double> count;         // members per class
    std::vector<std::uint32_t> of_node; // node -> class (active nodes only)
};

Classes group_nodes(const std::vector<std::int64_t>& rem,
                    const std::vector<std::uint32_t>& stage, bool reduce) {
    Classes c;
    c.of_node.assign(rem.size(), 0);
    if (reduce) {
        std::vector<std::int64_t> values;
        for (std::size_t i = 0; i < rem.size(); ++i)
            if (stage[i] == 0) values.push_back(rem[i]);
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        c.degree.assign(values.begin(), values.end());
        c.count.assign(values.size(), 0.0);
        for (std::size_t i = 0; i < rem.size(); ++i) {
            if (stage[i] != 0) continue;
            auto it = std::lower_bound(values.begin(), values.end(), rem[i]);
            auto k = static_cast<std::uint32_t>(it - values.begin());
            c.of_node[i] = k;
            c.count[k] += 1.0;
        }
    } else {
        for (std::size_t i = 0; i < rem.size(); ++i) {
            if (stage[i] != 0) continue;
            c.of_node[i] = static_cast<std::uint32_t>(c.degree.size());
            c.degree.push_back(static_cast<double>(rem[i]));
            c.count.push_back(1.0);
        }
    }
    return c;
}

// max_c |sum_b m_b * sigma(lx_c + ly_b) - k_c| over both layers
double residual_norm(const Classes& top, const Classes& bot,
                     const std::vector<double>& lx, const std::vector<double>& ly) {
    double worst = 0.0;
    for (std::size_t c = 0; c < lx.size(); ++c) {
        double s = 0.0;
        for (std::size_t b = 0; b < ly.size(); ++b)
            s += bot.count[b] * sigmoid(lx[c] + ly[b]);
        worst = std::max(worst, std::abs(s - top.degree[c]));
    }
    for (std::size_t b = 0; b < ly.size(); ++b) {
        double s = 0.0;
        for (std::size_t c = 0; c < lx.size(); ++c)
            s += top.count[c] * sigmoid(lx[c] + ly[b]);
        worst = std::max(worst, std::abs(s - bot.degree[b]));
    }
    return worst;
}

double logsumexp(const std::vector<double>& terms) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double t : terms) mx = std::max(mx, t);
    double s = 0.0;
    for (double t : terms) s += std::exp(t - mx);
    return mx + std::log(s);
}

long fixed_point_solve(const Classes& top, const Classes& bot, std::vector<double>& lx,
                       std::vector<double>& ly, const SolverConfig& cfg, long budget,
                       double* out_residual) {
    std::vector<double> terms;
    long it = 0;
    double res = residual_norm(top, bot, lx, ly);
    while (res > cfg.tolerance && it < budget) {
        ++it;
        for (std::size_t c = 0; c < lx.size(); ++c) {
            terms.clear();
            for (std::size_t b = 0; b < ly.size(); ++b)
                terms.push_back(std::log(bot.count[b]) + ly[b] - softplus(lx[c] + ly[b]));
            double proposed = std::log(top.degree[c]) - logsumexp(terms);
            lx[c] += cfg.damping * (proposed - lx[c]);
        }
        for (std::size_t b = 0; b < ly.size(); ++b) {
            terms.clear();
            for (std::size_t c = 0; c < lx.size(); ++c)
                terms.push_back(std::log(top.count[c]) + lx[c] - softplus(lx[c] + ly[b]));
            double proposed = std::log(bot.degree[b]) - logsumexp(terms);
            ly[b] += cfg.damping * (proposed - ly[b]);
        }
        res = residual_norm(top, bot, lx, ly);
    }
    *out_residual = res;
    return it;
}

long newton_solve(const Classes& top, const Classes& bot, std::vector<double>& lx,
                  std::vector<double>& ly, const SolverConfig& cfg, long budget,
                  double* out_residual) {
    const auto nc = static_cast<Eigen::Index>(lx.size());
    const auto nb = static_cast<Eigen::Index>(ly.size());
    Eigen::VectorXd r(nc + nb);
    Eigen::MatrixXd jac(nc + nb, nc + nb);
    long it = 0;
    double res = residual_norm(top, bot, lx, ly);
    while (res > cfg.tolerance && it < budget) {
        ++it;
        jac.setZero();
        for (Eigen::Index c = 0; c < nc; ++c) {
            double s = 0.0, ds = 0.0;
            for (Eigen::Index b = 0; b < nb; ++b) {
                double sg = sigmoid(lx[c] + ly[b]);
                double d = sg * (1.0 - sg);
                s += bot.count[b] * sg;
                ds += bot.count[b] * d;
                jac(c, nc + b) = bot.count[b] * d;
            }
            r(c) = s - top.degree[c];
            jac(c, c) = ds;
        }
        for (Eigen::Index b = 0; b < nb; ++b) {
            double s = 0.0, ds = 0.0;
            for (Eigen::Index c = 0; c < nc; ++c) {
                double sg = sigmoid(lx[c] + ly[b]);
                double d = sg * (1.0 - sg);
                s += top.count[c] * sg;
                ds += top.count[c] * d;
                jac(nc + b, c) = top.count[c] * d;
            }
            r(nc + b) = s - bot.degree[b];
            jac(nc + b, nc + b) = ds;
        }
        // the gauge direction (shift lx up, ly down) is a null vector of the
        // Jacobian; a rank-revealing QR handles it
        Eigen::VectorXd step = jac.colPivHouseholderQr().solve(-r);
        double mx = step.cwiseAbs().maxCoeff();
        if (mx > 5.0) step *= 5.0 / mx;
        for (Eigen::Index c = 0; c < nc; ++c) lx[c] += step(c);
        for (Eigen::Index b = 0; b < nb; ++b) ly[b] += step(nc + b);
        res = residual_norm(top, bot, lx, ly);
    }
    *out_residual = res;
    return it;
}

} // namespace

bool BicmSolution::top_saturated(std::uint32_t i) const {
    return std::binary_search(saturated_top.begin(), saturated_top.end(), i);
}

bool BicmSolution::bottom_saturated(std::uint32_t a) const {
    return std::binary_search(saturated_bottom.begin(), saturated_bottom.end(), a);
}

BicmSolution solve_bicm(const DegreeSequence& seq, const SolverConfig& cfg) {
    if (!(cfg.tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
    if (cfg.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    if (!(cfg.damping > 0.0) || cfg.damping > 1.0)
        throw std::invalid_argument("damping must be in (0, 1]");

    const auto n_top = static_cast<std::uint32_t>(seq.top.size());
    const auto n_bottom = static_cast<std::uint32_t>(seq.bottom.size());
    std::uint64_t sum_top = std::accumulate(seq.top.begin(), seq.top.end(), std::uint64_t{0});
    std::uint64_t sum_bottom =
        std::accumulate(seq.bottom.begin(), seq.bottom.end(), std::uint64_t{0});
    if (sum_top != sum_bottom)
        throw std::invalid_argument("degree sums differ between layers");
    for (auto k : seq.top)
        if (k > n_bottom) throw std::invalid_argument("top degree exceeds bottom layer size");
    for (auto d : seq.bottom)
        if (d > n_top) throw std::invalid_argument("bottom degree exceeds top layer size");

    Peeled peeled = peel(seq);

    BicmSolution sol;
    sol.x.assign(n_top, 0.0);
    sol.y.assign(n_bottom, 0.0);
    sol.top_stage = peeled.top_stage;
    sol.bottom_stage = peeled.bottom_stage;
    for (std::uint32_t i = 0; i < n_top; ++i)
        if (peeled.top_sat[i]) sol.saturated_top.push_back(i);
    for (std::uint32_t a = 0; a < n_bottom; ++a)
        if (peeled.bottom_sat[a]) sol.saturated_bottom.push_back(a);

    if (peeled.active_top == 0 || peeled.active_bottom == 0) {
        sol.residual = 0.0;
        sol.iterations = 0;
        return sol;
    }

    Classes top = group_nodes(peeled.rem_top, peeled.top_stage, cfg.reduce_by_degree);
    Classes bot = group_nodes(peeled.rem_bottom, peeled.bottom_stage, cfg.reduce_by_degree);

    double edges = 0.0;
    for (std::size_t c = 0; c < top.degree.size(); ++c) edges += top.count[c] * top.degree[c];

    std::vector<double> lx(top.degree.size()), ly(bot.degree.size());
    for (std::size_t c = 0; c < lx.size(); ++c)
        lx[c] = std::log(top.degree[c]) - 0.5 * std::log(edges);
    for (std::size_t b = 0; b < ly.size(); ++b)
        ly[b] = std::log(bot.degree[b]) - 0.5 * std::log(edges);

    double res = 0.0;
    long used = 0;
    if (cfg.method == SolveMethod::fixed_point) {
        used = fixed_point_solve(top, bot, lx, ly, cfg, cfg.max_iterations, &res);
    } else {
        // short fixed-point warm start stabilizes Newton on skewed sequences
        long warm = std::min<long>(20, cfg.max_iterations / 2);
        used = fixed_point_solve(top, bot, lx, ly, cfg, warm, &res);
        if (res > cfg.tolerance)
            used += newton_solve(top, bot, lx, ly, cfg, cfg.max_iterations - used, &res);
    }
    sol.residual = res;
    sol.iterations = used;
    if (res > cfg.tolerance)
        throw convergence_error("bicm solver did not converge (residual " +
                                    format_double(res) + ")",
                                res, used);

    for (std::uint32_t i = 0; i < n_top; ++i)
        if (peeled.top_stage[i] == 0) sol.x[i] = std::exp(lx[top.of_node[i]]);
    for (std::uint32_t a = 0; a < n_bottom; ++a)
        if (peeled.bottom_stage[a] == 0) sol.y[a] = std::exp(ly[bot.of_node[a]]);
    return sol;
}

double link_probability(const BicmSolution& sol, std::uint32_t i, std::uint32_t a) {
    if (i >= sol.top_count()) throw std::out_of_range("top index out of range");
    if (a >= sol.bottom_count()) throw std::out_of_range("bottom index out of range");
    std::uint32_t si = sol.top_stage.empty() ? 0 : sol.top_stage[i];
    std::uint32_t sa = sol.bottom_stage.empty() ? 0 : sol.bottom_stage[a];
    if (si == 0 && sa == 0) {
        double xy = sol.x[i] * sol.y[a];
        return xy / (1.0 + xy);
    }
    // forced pair: the earliest extraction decides
    bool use_top = (sa == 0) || (si != 0 && si < sa);
    if (use_top) return sol.top_saturated(i) ? 1.0 : 0.0;
    return sol.bottom_saturated(a) ? 1.0 : 0.0;
}

std::pair<std::vector<double>, std::vector<double>>
expected_degrees(const BicmSolution& sol) {
    std::vector<double> top(sol.top_count(), 0.0), bottom(sol.bottom_count(), 0.0);
    for (std::uint32_t i = 0; i < sol.top_count(); ++i) {
        for (std::uint32_t a = 0; a < sol.bottom_count(); ++a) {
            double p = link_probability(sol, i, a);
            top[i] += p;
            bottom[a] += p;
        }
    }
    return {std::move(top), std::move(bottom)};
}

double log_likelihood(const BicmSolution& sol, const BipartiteGraph& g) {
    if (g.top_count() != sol.top_count() || g.bottom_count() != sol.bottom_count())
        throw std::invalid_argument("solution and graph dimensions differ");
    double ll = 0.0;
    for (std::uint32_t i = 0; i < g.top_count(); ++i) {
        for (std::uint32_t a = 0; a < g.bottom_count(); ++a) {
            bool edge = g.has_edge(i, a);
            double p = link_probability(sol, i, a);
            if (p == 1.0) {
                if (!edge)
                    throw std::invalid_argument(
                        "forced probability 1 contradicts an absent edge");
                continue;
            }
            if (p == 0.0) {
                if (edge)
                    throw std::invalid_argument(
                        "forced probability 0 contradicts an observed edge");
                continue;
            }
            ll += edge ? std::log(p) : std::log1p(-p);
        }
    }
    return ll;
}

void dump_solution(const BicmSolution& sol, std::ostream& out) {
    auto write_doubles = [&](const std::vector<double>& v) {
        out << '[';
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out << ',';
            out << format_double(v[i]);
        }
        out << ']';
    };
    auto write_u32 = [&](const std::vector<std::uint32_t>& v) {
        out << '[';
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out << ',';
            out << v[i];
        }
        out << ']';
    };
    out << "{\"x\":";
    write_doubles(sol.x);
    out << ",\"y\":";
    write_doubles(sol.y);
    out << ",\"saturated_top\":";
    write_u32(sol.saturated_top);
    out << ",\"saturated_bottom\":";
    write_u32(sol.saturated_bottom);
    out << ",\"top_stage\":";
    write_u32(sol.top_stage);
    out << ",\"bottom_stage\":";
    write_u32(sol.bottom_stage);
    out << ",\"residual\":" << format_double(sol.residual);
    out << ",\"iterations\":" << sol.iterations << "}\n";
}

BicmSolution load_solution(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw format_error(std::string("bad solution file: ") + e.what());
    }
    BicmSolution sol;
    sol.x = j.at("x").get<std::vector<double>>();
    sol.y = j.at("y").get<std::vector<double>>();
    sol.saturated_top = j.at("saturated_top").get<std::vector<std::uint32_t>>();
    sol.saturated_bottom = j.at("saturated_bottom").get<std::vector<std::uint32_t>>();
    sol.top_stage = j.at("top_stage").get<std::vector<std::uint32_t>>();
    sol.bottom_stage = j.at("bottom_stage").get<std::vector<std::uint32_t>>();
    sol.residual = j.at("residual").get<double>();
    sol.iterations = j.at("iterations").get<long>();
    return sol;
}

} // namespace debatenet
