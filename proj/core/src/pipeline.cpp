#include "debatenet/pipeline.hpp"

#include "debatenet/errors.hpp"
#include "debatenet/text_io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace debatenet {

NetworkBuildResult build_networks(std::span<const TweetRecord> records) {
    // verified iff any record shows the account as a verified author
    std::unordered_map<std::string, bool> verified;
    for (const TweetRecord& rec : records) {
        auto [it, inserted] = verified.emplace(rec.author_id, rec.author_verified);
        if (!inserted) it->second = it->second || rec.author_verified;
    }
    auto is_verified = [&](const std::string& id) {
        auto it = verified.find(id);
        return it != verified.end() && it->second;
    };

    NetworkBuildResult out;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> bipartite_pairs;
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> retweet_weight;

    for (const TweetRecord& rec : records) {
        if (!rec.is_retweet()) continue;
        const std::string& retweeter = rec.author_id;
        const std::string& source = *rec.retweeted_author_id;
        if (retweeter == source) {
            out.self_retweets_skipped++;
            continue;
        }
        out.retweet_records++;
        std::uint32_t u = out.retweet_ids.add(retweeter);
        std::uint32_t v = out.retweet_ids.add(source);
        auto key = u < v ? std::make_pair(u, v) : std::make_pair(v, u);
        retweet_weight[key] += 1.0;

        if (is_verified(source) && !is_verified(retweeter)) {
            std::uint32_t top = out.verified_ids.add(source);
            std::uint32_t bottom = out.unverified_ids.add(retweeter);
            bipartite_pairs.emplace_back(top, bottom);
        }
    }
    if (out.retweet_records == 0)
        throw std::invalid_argument("no retweet interactions in the record set");
    if (bipartite_pairs.empty())
        throw std::invalid_argument(
            "no retweets of verified authors by unverified users; nothing to validate");

    out.bipartite = BipartiteGraph::from_pairs(out.verified_ids.size(),
                                               out.unverified_ids.size(),
                                               std::move(bipartite_pairs));
    std::vector<WeightedGraph::Edge> edges;
    edges.reserve(retweet_weight.size());
    for (const auto& [key, w] : retweet_weight) edges.push_back({key.first, key.second, w});
    out.retweet = WeightedGraph::build(out.retweet_ids.size(), edges, /*directed=*/false);
    return out;
}

FilterResult filter_validated(std::span<const TweetRecord> records,
                              const IdIndex& user_ids, const CommunityAssignment& labels,
                              const std::set<std::string>& political_labels) {
    FilterResult out;
    for (const TweetRecord& rec : records) {
        auto idx = user_ids.find(rec.author_id);
        if (!idx || !labels.is_labeled(*idx)) {
            out.dropped_unlabeled++;
            continue;
        }
        if (!political_labels.contains(labels.name_of(*idx))) {
            out.dropped_nonpolitical++;
            continue;
        }
        out.kept.push_back(rec);
    }
    return out;
}

LabelMap LabelMap::from_csv(std::istream& in) {
    LabelMap map;
    std::vector<std::string> fields;
    bool first = true;
    while (read_csv_record(in, fields)) {
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (first) {
            first = false;
            if (fields.size() == 3 && fields[0] == "community_id") continue;
        }
        if (fields.size() != 3)
            throw format_error("label map: expected community_id,label,political_flag");
        bool political;
        if (fields[2] == "true" || fields[2] == "1")
            political = true;
        else if (fields[2] == "false" || fields[2] == "0")
            political = false;
        else
            throw format_error("label map: political_flag must be boolean");
        map.entries.push_back({fields[0], fields[1], political});
    }
    if (map.entries.empty()) throw format_error("label map: no entries");
    return map;
}

std::set<std::string> LabelMap::political_labels() const {
    std::set<std::string> out;
    for (const auto& e : entries)
        if (e.political) out.insert(e.label);
    return out;
}

namespace {

struct StageContext {
    const PipelineOptions& opts;
    PipelineSummary& summary;

    std::filesystem::path path(const char* name) const {
        return opts.output_dir / name;
    }
    void artifact(const std::filesystem::path& p) { summary.artifacts.push_back(p); }
};

TagTable load_tag_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open tag table: " + path.string());
    TagTable table;
    std::vector<std::string> fields;
    bool first = true;
    while (read_csv_record(in, fields)) {
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (first) {
            first = false;
            if (fields.size() == 2 && fields[0] == "domain") continue;
        }
        if (fields.size() != 2) throw format_error("tag table: expected domain,tag");
        auto tag = parse_tag(fields[1]);
        if (!tag) throw format_error("tag table: unknown tag '" + fields[1] + "'");
        table[to_lower_ascii(fields[0])] = *tag;
    }
    return table;
}

ExpansionTable load_expansion_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open shortener table: " + path.string());
    ExpansionTable table;
    std::vector<std::string> fields;
    bool first = true;
    while (read_csv_record(in, fields)) {
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (first) {
            first = false;
            if (fields.size() == 2 && fields[0] == "short_url") continue;
        }
        if (fields.size() != 2)
            throw format_error("shortener table: expected short_url,long_url");
        table[fields[0]] = fields[1];
    }
    return table;
}

// stage 1: language + one-state filters; writes the analysis dataset
void stage_dataset(StageContext& ctx) {
    auto& summary = ctx.summary;
    std::map<std::string, std::size_t> match_counts;
    for (const auto& s : ctx.opts.states.states) match_counts[s.name] = 0;

    std::ofstream dataset(ctx.path("dataset.jsonl"), std::ios::binary);
    if (!dataset) throw io_error("cannot write dataset.jsonl");

    IngestStats stats = ingest_tweets(
        ctx.opts.input, ctx.opts.format, [&](TweetRecord&& rec) {
            if (!filter_language(rec)) {
                summary.non_english++;
                return;
            }
            StateMatch match = associate_state(rec.text, ctx.opts.states);
            if (match.kind == StateMatch::Kind::none) {
                summary.no_state++;
                return;
            }
            if (match.kind == StateMatch::Kind::ambiguous) {
                summary.ambiguous_state++;
                return;
            }
            match_counts[ctx.opts.states.states[match.state_index].name]++;
            summary.dataset_records++;
            dataset << to_jsonl(rec) << '\n';
        });
    dataset.flush();
    if (!dataset) throw io_error("write failed: dataset.jsonl");
    summary.ingested = stats.parsed;
    summary.malformed = stats.malformed;
    for (const auto& s : ctx.opts.states.states)
        summary.state_match_counts.emplace_back(s.name, match_counts[s.name]);
    if (summary.dataset_records == 0)
        throw std::invalid_argument("no records survive the language and state filters");
    ctx.artifact(ctx.path("dataset.jsonl"));
}

std::vector<TweetRecord> load_dataset(const std::filesystem::path& path) {
    auto result = ingest_tweets(path, TweetFormat::jsonl);
    return std::move(result.records);
}

void stage_networks(StageContext& ctx) {
    auto records = load_dataset(ctx.path("dataset.jsonl"));
    NetworkBuildResult nets = build_networks(records);

    std::ofstream bip(ctx.path("bipartite.tsv"), std::ios::binary);
    if (!bip) throw io_error("cannot write bipartite.tsv");
    dump_bipartite(nets.bipartite, nets.verified_ids, nets.unverified_ids, bip);
    bip.flush();

    std::ofstream rt(ctx.path("retweet.tsv"), std::ios::binary);
    if (!rt) throw io_error("cannot write retweet.tsv");
    dump_weighted(nets.retweet, nets.retweet_ids, rt);
    rt.flush();

    ctx.summary.verified_users = nets.verified_ids.size();
    ctx.summary.unverified_users = nets.unverified_ids.size();
    ctx.summary.bipartite_edges = nets.bipartite.edge_count();
    ctx.summary.retweet_nodes = nets.retweet_ids.size();
    ctx.summary.retweet_edges = nets.retweet.edge_count();
    ctx.artifact(ctx.path("bipartite.tsv"));
    ctx.artifact(ctx.path("retweet.tsv"));
}

void stage_solve(StageContext& ctx) {
    std::ifstream bip(ctx.path("bipartite.tsv"), std::ios::binary);
    if (!bip) throw io_error("cannot read bipartite.tsv");
    BipartiteBuildResult built = load_bipartite(bip);
    BicmSolution sol = solve_bicm(built.graph.degrees(), ctx.opts.solver);

    std::ofstream out(ctx.path("solution.json"), std::ios::binary);
    if (!out) throw io_error("cannot write solution.json");
    dump_solution(sol, out);
    out.flush();
    ctx.summary.solver_residual = sol.residual;
    ctx.summary.solver_iterations = sol.iterations;
    ctx.artifact(ctx.path("solution.json"));
}

void stage_validate(StageContext& ctx) {
    std::ifstream bip(ctx.path("bipartite.tsv"), std::ios::binary);
    if (!bip) throw io_error("cannot read bipartite.tsv");
    BipartiteBuildResult built = load_bipartite(bip);
    std::ifstream solf(ctx.path("solution.json"), std::ios::binary);
    if (!solf) throw io_error("cannot read solution.json");
    BicmSolution sol = load_solution(solf);

    ProjectionConfig pcfg;
    pcfg.fdr_level = ctx.opts.fdr_level;
    pcfg.threads = ctx.opts.threads;
    ValidatedProjection proj = validate_projection(built.graph, sol, pcfg);

    std::ofstream edges(ctx.path("projection.tsv"), std::ios::binary);
    if (!edges) throw io_error("cannot write projection.tsv");
    dump_projection(proj, built.top_ids, edges);
    edges.flush();
    std::ofstream header(ctx.path("projection.json"), std::ios::binary);
    if (!header) throw io_error("cannot write projection.json");
    dump_projection_header(proj, header);
    header.flush();

    ctx.summary.tested_pairs = proj.tested_pairs;
    ctx.summary.validated_edges = proj.edges.size();
    ctx.summary.bh_threshold = proj.bh_threshold;
    ctx.artifact(ctx.path("projection.tsv"));
    ctx.artifact(ctx.path("projection.json"));
}

WeightedBuildResult load_projection_as_graph(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot read " + path.string());
    std::vector<std::tuple<std::string, std::string, double>> edges;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split(line, '\t');
        if (fields.size() != 4)
            throw format_error("projection edge list: expected 4 fields");
        edges.emplace_back(std::string(fields[0]), std::string(fields[1]), 1.0);
    }
    if (edges.empty())
        throw std::invalid_argument("validated projection has no edges");
    return build_weighted_graph(edges, /*directed=*/false);
}

void stage_communities(StageContext& ctx) {
    WeightedBuildResult proj = load_projection_as_graph(ctx.path("projection.tsv"));
    CommunityAssignment comm = louvain(proj.graph, ctx.opts.resolution, ctx.opts.rng_seed);
    ctx.summary.communities = comm.label_names.size();

    std::ofstream out(ctx.path("communities.tsv"), std::ios::binary);
    if (!out) throw io_error("cannot write communities.tsv");
    dump_assignment(comm, proj.ids, out);
    out.flush();
    ctx.artifact(ctx.path("communities.tsv"));
}

void stage_full(StageContext& ctx) {
    if (!ctx.opts.label_map)
        throw std::invalid_argument("a label map is required for the full pipeline");
    std::ifstream lmf(*ctx.opts.label_map, std::ios::binary);
    if (!lmf) throw io_error("cannot open label map: " + ctx.opts.label_map->string());
    LabelMap label_map = LabelMap::from_csv(lmf);

    // seeds: verified users -> label of their community
    std::unordered_map<std::string, std::string> community_label;
    for (const auto& e : label_map.entries) community_label[e.community] = e.label;

    std::ifstream rtf(ctx.path("retweet.tsv"), std::ios::binary);
    if (!rtf) throw io_error("cannot read retweet.tsv");
    WeightedBuildResult retweet = load_weighted(rtf, /*directed=*/false);

    std::map<std::uint32_t, std::string> seeds;
    {
        std::ifstream in(ctx.path("communities.tsv"), std::ios::binary);
        if (!in) throw io_error("cannot read communities.tsv");
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            auto fields = split(line, '\t');
            if (fields.size() != 2) throw format_error("communities.tsv: expected 2 fields");
            auto it = community_label.find(std::string(fields[1]));
            if (it == community_label.end()) continue; // unmapped community
            auto node = retweet.ids.find(fields[0]);
            if (!node) continue; // verified user absent from the retweet graph
            seeds[*node] = it->second;
        }
    }
    if (seeds.empty())
        throw std::invalid_argument("label map matches no detected community");

    CommunityAssignment seed_assignment = make_assignment(retweet.ids.size(), seeds);
    PropagationConfig pcfg;
    pcfg.rng_seed = ctx.opts.rng_seed;
    CommunityAssignment propagated = propagate_labels(retweet.graph, seed_assignment, pcfg);
    ctx.summary.propagation_labeled = propagated.labeled_count();

    {
        std::ofstream out(ctx.path("propagated.tsv"), std::ios::binary);
        if (!out) throw io_error("cannot write propagated.tsv");
        dump_assignment(propagated, retweet.ids, out);
        out.flush();
        ctx.artifact(ctx.path("propagated.tsv"));
    }

    std::set<std::string> political = ctx.opts.political_labels;
    if (political.empty()) political = label_map.political_labels();
    if (political.empty())
        throw std::invalid_argument("no political labels configured");

    auto dataset = load_dataset(ctx.path("dataset.jsonl"));
    FilterResult filtered =
        filter_validated(dataset, retweet.ids, propagated, political);
    ctx.summary.dropped_unlabeled = filtered.dropped_unlabeled;
    ctx.summary.dropped_nonpolitical = filtered.dropped_nonpolitical;
    ctx.summary.validated_records = filtered.kept.size();
    if (filtered.kept.empty())
        throw std::invalid_argument("community filter removed every record");

    {
        std::ofstream out(ctx.path("validated.jsonl"), std::ios::binary);
        if (!out) throw io_error("cannot write validated.jsonl");
        for (const auto& rec : filtered.kept) out << to_jsonl(rec) << '\n';
        out.flush();
        ctx.artifact(ctx.path("validated.jsonl"));
    }

    // bot classification over accounts of the validated dataset
    auto validated = load_dataset(ctx.path("validated.jsonl"));
    std::vector<std::pair<std::string, double>> scores;
    std::unordered_set<std::string> seen;
    for (const auto& rec : validated)
        if (rec.bot_score && seen.insert(rec.author_id).second)
            scores.emplace_back(rec.author_id, *rec.bot_score);
    BotClassification bots = classify_bots(scores, ctx.opts.bot_thresholds);

    {
        std::ofstream out(ctx.path("bot_classes.tsv"), std::ios::binary);
        if (!out) throw io_error("cannot write bot_classes.tsv");
        std::vector<std::pair<std::string, BotClass>> rows(bots.classes.begin(),
                                                           bots.classes.end());
        std::sort(rows.begin(), rows.end());
        for (const auto& [account, cls] : rows)
            out << account << '\t' << to_string(cls) << '\n';
        out.flush();
        ctx.artifact(ctx.path("bot_classes.tsv"));
    }

    TagTable tags;
    if (ctx.opts.tag_table) tags = load_tag_table(*ctx.opts.tag_table);
    ExpansionTable expansion;
    if (ctx.opts.shorteners) expansion = load_expansion_table(*ctx.opts.shorteners);

    ctx.summary.tables = report(validated, tags, expansion, bots, ctx.opts.states);
    ctx.summary.has_tables = true;

    {
        std::ofstream out(ctx.path("report.json"), std::ios::binary);
        if (!out) throw io_error("cannot write report.json");
        render_report_json(ctx.summary.tables, out);
        out.flush();
        ctx.artifact(ctx.path("report.json"));
    }
    {
        std::ofstream out(ctx.path("report.txt"), std::ios::binary);
        if (!out) throw io_error("cannot write report.txt");
        render_report_text(ctx.summary.tables, out);
        out.flush();
        ctx.artifact(ctx.path("report.txt"));
    }
    {
        // per-stage url classification counts for the bar-chart export
        auto complete = url_tag_histogram(dataset, tags, expansion);
        auto kept = url_tag_histogram(validated, tags, expansion);
        std::ofstream out(ctx.path("figure_url_classification.csv"), std::ios::binary);
        if (!out) throw io_error("cannot write figure_url_classification.csv");
        out << "stage,category,count\n";
        const char* names[5] = {"T", "N", "P", "S", "UNC"};
        for (int k = 0; k < 5; ++k)
            out << "complete," << names[k] << ',' << complete[k] << '\n';
        for (int k = 0; k < 5; ++k)
            out << "validated," << names[k] << ',' << kept[k] << '\n';
        out.flush();
        ctx.artifact(ctx.path("figure_url_classification.csv"));
    }
    {
        nlohmann::ordered_json diag;
        diag["ingested"] = ctx.summary.ingested;
        diag["malformed"] = ctx.summary.malformed;
        diag["non_english"] = ctx.summary.non_english;
        diag["no_state"] = ctx.summary.no_state;
        diag["ambiguous_state"] = ctx.summary.ambiguous_state;
        diag["dataset_records"] = ctx.summary.dataset_records;
        diag["state_match_counts"] = nlohmann::ordered_json::object();
        for (const auto& [state, count] : ctx.summary.state_match_counts)
            diag["state_match_counts"][state] = count;
        diag["dropped_unlabeled"] = ctx.summary.dropped_unlabeled;
        diag["dropped_nonpolitical"] = ctx.summary.dropped_nonpolitical;
        diag["validated_records"] = ctx.summary.validated_records;
        diag["propagation_labeled"] = ctx.summary.propagation_labeled;
        diag["unparsable_urls"] = ctx.summary.tables.unparsable_urls;
        std::ofstream out(ctx.path("diagnostics.json"), std::ios::binary);
        if (!out) throw io_error("cannot write diagnostics.json");
        out << diag.dump(2) << '\n';
        out.flush();
        ctx.artifact(ctx.path("diagnostics.json"));
    }
}

} // namespace

PipelineSummary run_pipeline(const PipelineOptions& opts) {
    if (!(opts.fdr_level > 0.0) || !(opts.fdr_level < 1.0))
        throw std::invalid_argument("fdr level must be in (0, 1)");
    if (opts.threads < 1) throw std::invalid_argument("threads must be >= 1");
    std::filesystem::create_directories(opts.output_dir);

    PipelineSummary summary;
    StageContext ctx{opts, summary};

    stage_dataset(ctx);
    stage_networks(ctx);
    if (opts.until == PipelineStage::networks) return summary;
    stage_solve(ctx);
    if (opts.until == PipelineStage::solve) return summary;
    stage_validate(ctx);
    if (opts.until == PipelineStage::validate) return summary;
    stage_communities(ctx);
    if (opts.until == PipelineStage::communities) return summary;
    stage_full(ctx);
    return summary;
}

} // namespace debatenet
