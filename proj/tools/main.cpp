// debatenet: null-model based analysis of online debate datasets.
//
// Subcommands compose through on-disk artifacts so every stage of a run can
// be inspected and rerun in isolation.

#include "debatenet/bicm.hpp"
#include "debatenet/bipartite_graph.hpp"
#include "debatenet/community.hpp"
#include "debatenet/errors.hpp"
#include "debatenet/pipeline.hpp"
#include "debatenet/projection.hpp"
#include "debatenet/report.hpp"
#include "debatenet/synthgen.hpp"
#include "debatenet/text_io.hpp"
#include "debatenet/weighted_graph.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <clocale>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace {

using namespace debatenet;
using ordered_json = nlohmann::ordered_json;

// exit codes: 0 ok, 1 unexpected, 2 config/usage, 3 missing input,
// 4 solver did not converge, 5 malformed data
enum ExitCode {
    kOk = 0,
    kUnexpected = 1,
    kConfig = 2,
    kMissingInput = 3,
    kNoConvergence = 4,
    kBadData = 5,
};

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open input for digest: " + path.string());
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0)
        EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

struct ManifestWriter {
    std::string subcommand;
    ordered_json config = ordered_json::object();
    ordered_json inputs = ordered_json::object();
    std::vector<std::filesystem::path> outputs;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    void add_input(const std::filesystem::path& path) {
        inputs[path.string()] = "sha256:" + sha256_file(path);
    }

    void write(const std::filesystem::path& output_dir) {
        ordered_json m;
        m["tool"] = "debatenet";
        m["version"] = DEBATENET_VERSION;
        m["subcommand"] = subcommand;
        m["config"] = config;
        m["inputs"] = inputs;
        ordered_json outs = ordered_json::array();
        for (const auto& p : outputs) outs.push_back(p.string());
        m["outputs"] = outs;
        // volatile fields; everything above is reproducible for a fixed seed
        std::time_t now = std::time(nullptr);
        char stamp[32];
        std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        m["timestamp"] = stamp;
        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - started)
                           .count();
        m["timings"] = {{"total_ms", elapsed}};
        std::ofstream out(output_dir / "manifest.json", std::ios::binary);
        if (!out) throw io_error("cannot write manifest.json");
        out << m.dump(2) << '\n';
    }
};

StateConfig load_states(const std::optional<std::filesystem::path>& path) {
    if (!path) return StateConfig::us2020();
    std::ifstream in(*path, std::ios::binary);
    if (!in) throw io_error("cannot open state config: " + path->string());
    return StateConfig::from_csv(in);
}

std::optional<BotThresholds> parse_bot_thresholds(const std::string& text) {
    if (text.empty()) return std::nullopt;
    auto parts = split(text, ',');
    if (parts.size() != 2)
        throw std::invalid_argument("--bot-thresholds expects lo,hi");
    BotThresholds t{parse_double(parts[0]), parse_double(parts[1])};
    if (t.low < 0.0 || t.high > 1.0 || t.low > t.high)
        throw std::invalid_argument("--bot-thresholds must satisfy 0 <= lo <= hi <= 1");
    return t;
}

SolveMethod parse_method(const std::string& name) {
    if (name == "fixed-point") return SolveMethod::fixed_point;
    if (name == "newton") return SolveMethod::newton;
    throw std::invalid_argument("--method must be fixed-point or newton");
}

// ---------------------------------------------------------------- solve ----

struct SolveArgs {
    std::filesystem::path input, output_dir;
    double tolerance = 1e-8;
    long max_iterations = 10000;
    std::string method = "fixed-point";
    double damping = 1.0;
};

int cmd_solve(const SolveArgs& args) {
    ManifestWriter manifest;
    manifest.subcommand = "solve";
    manifest.config = {{"input", args.input.string()},
                       {"tolerance", args.tolerance},
                       {"max_iterations", args.max_iterations},
                       {"method", args.method},
                       {"damping", args.damping}};
    manifest.add_input(args.input);
    std::filesystem::create_directories(args.output_dir);

    std::ifstream in(args.input, std::ios::binary);
    if (!in) throw io_error("cannot open " + args.input.string());
    BipartiteBuildResult built = load_bipartite(in);

    SolverConfig cfg;
    cfg.tolerance = args.tolerance;
    cfg.max_iterations = args.max_iterations;
    cfg.method = parse_method(args.method);
    cfg.damping = args.damping;
    BicmSolution sol = solve_bicm(built.graph.degrees(), cfg);

    std::ofstream out(args.output_dir / "solution.json", std::ios::binary);
    if (!out) throw io_error("cannot write solution.json");
    dump_solution(sol, out);
    manifest.outputs.push_back(args.output_dir / "solution.json");
    manifest.write(args.output_dir);
    std::cout << "solved: residual " << format_double(sol.residual) << " after "
              << sol.iterations << " iterations\n";
    return kOk;
}

// -------------------------------------------------------------- validate ----

struct ValidateArgs {
    std::filesystem::path input, output_dir;
    std::optional<std::filesystem::path> solution;
    double fdr = 0.05;
    double tolerance = 1e-8;
    int threads = 1;
    std::size_t exact_cutoff = 4096;
};

int cmd_validate(const ValidateArgs& args) {
    ManifestWriter manifest;
    manifest.subcommand = "validate";
    manifest.config = {{"input", args.input.string()},
                       {"fdr", args.fdr},
                       {"tolerance", args.tolerance},
                       {"threads", args.threads},
                       {"exact_cutoff", args.exact_cutoff}};
    manifest.add_input(args.input);
    std::filesystem::create_directories(args.output_dir);

    std::ifstream in(args.input, std::ios::binary);
    if (!in) throw io_error("cannot open " + args.input.string());
    BipartiteBuildResult built = load_bipartite(in);

    BicmSolution sol;
    if (args.solution) {
        manifest.add_input(*args.solution);
        std::ifstream solf(*args.solution, std::ios::binary);
        if (!solf) throw io_error("cannot open " + args.solution->string());
        sol = load_solution(solf);
    } else {
        SolverConfig cfg;
        cfg.tolerance = args.tolerance;
        sol = solve_bicm(built.graph.degrees(), cfg);
    }

    ProjectionConfig pcfg;
    pcfg.fdr_level = args.fdr;
    pcfg.threads = args.threads;
    pcfg.exact_cutoff = args.exact_cutoff;
    ValidatedProjection proj = validate_projection(built.graph, sol, pcfg);

    std::ofstream edges(args.output_dir / "projection.tsv", std::ios::binary);
    if (!edges) throw io_error("cannot write projection.tsv");
    dump_projection(proj, built.top_ids, edges);
    std::ofstream header(args.output_dir / "projection.json", std::ios::binary);
    if (!header) throw io_error("cannot write projection.json");
    dump_projection_header(proj, header);
    manifest.outputs.push_back(args.output_dir / "projection.tsv");
    manifest.outputs.push_back(args.output_dir / "projection.json");
    manifest.write(args.output_dir);
    std::cout << "validated " << proj.edges.size() << " of " << proj.tested_pairs
              << " tested pairs (bh threshold " << format_double(proj.bh_threshold)
              << ")\n";
    return kOk;
}

// ------------------------------------------------------------ communities ----

struct CommunitiesArgs {
    std::filesystem::path input, output_dir;
    std::string mode = "louvain";
    double resolution = 1.0;
    std::uint64_t seed = 0;
    std::optional<std::filesystem::path> seeds_path;
    int max_sweeps = 100;
    bool unfreeze_seeds = false;
};

WeightedBuildResult load_edges_any(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path.string());
    std::vector<std::tuple<std::string, std::string, double>> edges;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split(line, '\t');
        if (fields.size() == 2)
            edges.emplace_back(std::string(fields[0]), std::string(fields[1]), 1.0);
        else if (fields.size() == 3)
            edges.emplace_back(std::string(fields[0]), std::string(fields[1]),
                               parse_double(fields[2]));
        else if (fields.size() == 4) // validated projection export
            edges.emplace_back(std::string(fields[0]), std::string(fields[1]), 1.0);
        else
            throw format_error("edge list: unexpected field count at line " +
                               std::to_string(lineno));
    }
    if (edges.empty()) throw std::invalid_argument("edge list is empty");
    return build_weighted_graph(edges, /*directed=*/false);
}

int cmd_communities(const CommunitiesArgs& args) {
    ManifestWriter manifest;
    manifest.subcommand = "communities";
    manifest.config = {{"input", args.input.string()},
                       {"mode", args.mode},
                       {"resolution", args.resolution},
                       {"seed", args.seed},
                       {"max_sweeps", args.max_sweeps}};
    manifest.add_input(args.input);
    std::filesystem::create_directories(args.output_dir);

    WeightedBuildResult built = load_edges_any(args.input);
    if (args.mode == "louvain") {
        CommunityAssignment comm = louvain(built.graph, args.resolution, args.seed);
        std::ofstream out(args.output_dir / "communities.tsv", std::ios::binary);
        if (!out) throw io_error("cannot write communities.tsv");
        dump_assignment(comm, built.ids, out);
        manifest.outputs.push_back(args.output_dir / "communities.tsv");
        manifest.write(args.output_dir);
        std::cout << "louvain found " << comm.label_names.size() << " communities over "
                  << built.graph.node_count() << " nodes\n";
        return kOk;
    }
    if (args.mode != "propagate")
        throw std::invalid_argument("--mode must be louvain or propagate");
    if (!args.seeds_path)
        throw std::invalid_argument("propagate mode requires --seeds");
    manifest.add_input(*args.seeds_path);
    std::ifstream seedf(*args.seeds_path, std::ios::binary);
    if (!seedf) throw io_error("cannot open " + args.seeds_path->string());
    CommunityAssignment seeds = load_assignment(seedf, built.ids);
    PropagationConfig pcfg;
    pcfg.max_sweeps = args.max_sweeps;
    pcfg.seed_frozen = !args.unfreeze_seeds;
    pcfg.rng_seed = args.seed;
    CommunityAssignment propagated = propagate_labels(built.graph, seeds, pcfg);
    std::ofstream out(args.output_dir / "propagated.tsv", std::ios::binary);
    if (!out) throw io_error("cannot write propagated.tsv");
    dump_assignment(propagated, built.ids, out);
    manifest.outputs.push_back(args.output_dir / "propagated.tsv");
    manifest.write(args.output_dir);
    std::cout << "propagation labeled " << propagated.labeled_count() << " of "
              << built.graph.node_count() << " nodes\n";
    return kOk;
}

// ------------------------------------------------------------------- gen ----

struct GenArgs {
    std::filesystem::path scenario, output_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

int cmd_gen(const GenArgs& args) {
    ManifestWriter manifest;
    manifest.subcommand = "gen";
    manifest.add_input(args.scenario);
    std::filesystem::create_directories(args.output_dir);

    std::string text = read_file(args.scenario);
    nlohmann::json probe;
    try {
        probe = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw format_error(std::string("bad scenario json: ") + e.what());
    }
    std::string type = probe.value("type", std::string("dataset"));
    manifest.config = {{"scenario", args.scenario.string()},
                       {"type", type},
                       {"seed", args.seed}};

    if (type == "bipartite") {
        PlantedBipartiteSpec spec = planted_from_json_text(text);
        if (args.seed_set) spec.rng_seed = args.seed;
        PlantedBipartite planted = gen_planted_bipartite(spec);
        IdIndex tops, bottoms;
        for (std::uint32_t i = 0; i < planted.graph.top_count(); ++i)
            tops.add("v" + std::to_string(i));
        for (std::uint32_t a = 0; a < planted.graph.bottom_count(); ++a)
            bottoms.add("u" + std::to_string(a));
        std::ofstream edges(args.output_dir / "bipartite.tsv", std::ios::binary);
        if (!edges) throw io_error("cannot write bipartite.tsv");
        dump_bipartite(planted.graph, tops, bottoms, edges);
        ordered_json blocks;
        blocks["top_block"] = planted.top_block;
        blocks["bottom_block"] = planted.bottom_block;
        std::ofstream side(args.output_dir / "blocks.json", std::ios::binary);
        if (!side) throw io_error("cannot write blocks.json");
        side << blocks.dump(2) << '\n';
        manifest.outputs.push_back(args.output_dir / "bipartite.tsv");
        manifest.outputs.push_back(args.output_dir / "blocks.json");
        manifest.write(args.output_dir);
        std::cout << "planted bipartite: " << planted.graph.top_count() << "x"
                  << planted.graph.bottom_count() << ", " << planted.graph.edge_count()
                  << " edges\n";
        return kOk;
    }
    if (type != "dataset")
        throw std::invalid_argument("scenario type must be dataset or bipartite");

    ScenarioSpec spec = scenario_from_json_text(text);
    if (args.seed_set) spec.rng_seed = args.seed;
    ScenarioOutput out = gen_synthetic_dataset(spec, args.output_dir);
    manifest.outputs = {out.records_path, out.sidecar_path, out.tag_table_path,
                        out.shorteners_path};
    manifest.write(args.output_dir);
    std::cout << "generated " << out.truth.n_tweets << " records ("
              << out.truth.swing_tweets << " swing, " << out.truth.noise_tweets
              << " noise)\n";
    return kOk;
}

// -------------------------------------------------------------- pipeline ----

struct PipelineArgs {
    std::filesystem::path input, output_dir;
    std::string format = "jsonl";
    std::optional<std::filesystem::path> tag_table, shorteners, label_map, states;
    double fdr = 0.05;
    double tolerance = 1e-8;
    double resolution = 1.0;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string political_labels;
    std::string bot_thresholds;
    std::string until = "full";
};

int cmd_pipeline(const PipelineArgs& args) {
    ManifestWriter manifest;
    manifest.subcommand = "pipeline";
    manifest.config = {{"input", args.input.string()},
                       {"format", args.format},
                       {"fdr", args.fdr},
                       {"tolerance", args.tolerance},
                       {"resolution", args.resolution},
                       {"seed", args.seed},
                       {"threads", args.threads},
                       {"political_labels", args.political_labels},
                       {"bot_thresholds", args.bot_thresholds},
                       {"until", args.until}};
    manifest.add_input(args.input);

    PipelineOptions opts;
    opts.input = args.input;
    if (args.format == "jsonl")
        opts.format = TweetFormat::jsonl;
    else if (args.format == "csv")
        opts.format = TweetFormat::csv;
    else
        throw std::invalid_argument("--format must be jsonl or csv");
    opts.output_dir = args.output_dir;
    opts.tag_table = args.tag_table;
    opts.shorteners = args.shorteners;
    opts.label_map = args.label_map;
    for (const auto& extra : {args.tag_table, args.shorteners, args.label_map, args.states})
        if (extra) manifest.add_input(*extra);
    opts.states = load_states(args.states);
    opts.fdr_level = args.fdr;
    opts.solver.tolerance = args.tolerance;
    opts.resolution = args.resolution;
    opts.rng_seed = args.seed;
    opts.threads = args.threads;
    opts.bot_thresholds = parse_bot_thresholds(args.bot_thresholds);
    if (!args.political_labels.empty())
        for (auto part : split(args.political_labels, ','))
            if (!part.empty()) opts.political_labels.insert(std::string(part));
    if (args.until == "networks")
        opts.until = PipelineStage::networks;
    else if (args.until == "solve")
        opts.until = PipelineStage::solve;
    else if (args.until == "validate")
        opts.until = PipelineStage::validate;
    else if (args.until == "communities")
        opts.until = PipelineStage::communities;
    else if (args.until == "full")
        opts.until = PipelineStage::full;
    else
        throw std::invalid_argument(
            "--until must be networks, solve, validate, communities or full");

    PipelineSummary summary = run_pipeline(opts);
    manifest.outputs = summary.artifacts;
    manifest.write(args.output_dir);

    std::cout << "dataset records: " << summary.dataset_records << "\n";
    if (opts.until == PipelineStage::full) {
        std::cout << "validated records: " << summary.validated_records << " (dropped "
                  << summary.dropped_unlabeled + summary.dropped_nonpolitical << ")\n";
        std::cout << "report written to " << (args.output_dir / "report.json").string()
                  << "\n";
    }
    return kOk;
}

// ---------------------------------------------------------------- report ----

struct ReportArgs {
    std::filesystem::path input, output_dir;
    std::string format = "jsonl";
    std::optional<std::filesystem::path> tag_table, shorteners, states;
    std::string bot_thresholds;
};

int cmd_report(const ReportArgs& args) {
    ManifestWriter manifest;
    manifest.subcommand = "report";
    manifest.config = {{"input", args.input.string()},
                       {"format", args.format},
                       {"bot_thresholds", args.bot_thresholds}};
    manifest.add_input(args.input);
    for (const auto& extra : {args.tag_table, args.shorteners, args.states})
        if (extra) manifest.add_input(*extra);
    std::filesystem::create_directories(args.output_dir);

    TweetFormat format;
    if (args.format == "jsonl")
        format = TweetFormat::jsonl;
    else if (args.format == "csv")
        format = TweetFormat::csv;
    else
        throw std::invalid_argument("--format must be jsonl or csv");

    StateConfig states = load_states(args.states);
    auto ingest = ingest_tweets(args.input, format);
    std::vector<TweetRecord> kept;
    for (auto& rec : ingest.records) {
        if (!filter_language(rec)) continue;
        if (associate_state(rec.text, states).kind != StateMatch::Kind::unique) continue;
        kept.push_back(std::move(rec));
    }
    if (kept.empty()) throw std::invalid_argument("no state-associated records to report");

    TagTable tags;
    if (args.tag_table) {
        std::ifstream in(*args.tag_table, std::ios::binary);
        if (!in) throw io_error("cannot open tag table");
        std::vector<std::string> fields;
        bool first = true;
        while (read_csv_record(in, fields)) {
            if (fields.size() == 1 && fields[0].empty()) continue;
            if (first && fields.size() == 2 && fields[0] == "domain") {
                first = false;
                continue;
            }
            first = false;
            if (fields.size() != 2) throw format_error("tag table: expected domain,tag");
            auto tag = parse_tag(fields[1]);
            if (!tag) throw format_error("tag table: unknown tag '" + fields[1] + "'");
            tags[to_lower_ascii(fields[0])] = *tag;
        }
    }
    ExpansionTable expansion;
    if (args.shorteners) {
        std::ifstream in(*args.shorteners, std::ios::binary);
        if (!in) throw io_error("cannot open shortener table");
        std::vector<std::string> fields;
        bool first = true;
        while (read_csv_record(in, fields)) {
            if (fields.size() == 1 && fields[0].empty()) continue;
            if (first && fields.size() == 2 && fields[0] == "short_url") {
                first = false;
                continue;
            }
            first = false;
            if (fields.size() != 2)
                throw format_error("shortener table: expected short_url,long_url");
            expansion[fields[0]] = fields[1];
        }
    }

    std::vector<std::pair<std::string, double>> scores;
    std::map<std::string, bool> seen;
    for (const auto& rec : kept)
        if (rec.bot_score && !seen[rec.author_id]) {
            seen[rec.author_id] = true;
            scores.emplace_back(rec.author_id, *rec.bot_score);
        }
    BotClassification bots = classify_bots(scores, parse_bot_thresholds(args.bot_thresholds));

    ReportTables tables = report(kept, tags, expansion, bots, states);
    std::ofstream j(args.output_dir / "report.json", std::ios::binary);
    if (!j) throw io_error("cannot write report.json");
    render_report_json(tables, j);
    std::ofstream t(args.output_dir / "report.txt", std::ios::binary);
    if (!t) throw io_error("cannot write report.txt");
    render_report_text(tables, t);
    manifest.outputs.push_back(args.output_dir / "report.json");
    manifest.outputs.push_back(args.output_dir / "report.txt");
    manifest.write(args.output_dir);
    std::cout << "report over " << tables.total_tweets << " records written\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");
    CLI::App app{"null-model based analysis of online debate datasets"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "fit the bipartite null model");
    solve->add_option("--input", solve_args.input, "bipartite edge list (tsv)")
        ->required()
        ->envname("DEBATENET_INPUT");
    solve->add_option("--output-dir", solve_args.output_dir)->required()
        ->envname("DEBATENET_OUTPUT_DIR");
    solve->add_option("--tolerance", solve_args.tolerance)->envname("DEBATENET_TOLERANCE");
    solve->add_option("--max-iterations", solve_args.max_iterations)
        ->envname("DEBATENET_MAX_ITERATIONS");
    solve->add_option("--method", solve_args.method, "fixed-point or newton")
        ->envname("DEBATENET_METHOD");
    solve->add_option("--damping", solve_args.damping)->envname("DEBATENET_DAMPING");

    ValidateArgs validate_args;
    auto* validate = app.add_subcommand("validate", "validate the projection");
    validate->add_option("--input", validate_args.input)->required()
        ->envname("DEBATENET_INPUT");
    validate->add_option("--output-dir", validate_args.output_dir)->required()
        ->envname("DEBATENET_OUTPUT_DIR");
    validate->add_option("--solution", validate_args.solution,
                         "reuse a solution.json instead of solving");
    validate->add_option("--fdr", validate_args.fdr)->envname("DEBATENET_FDR");
    validate->add_option("--tolerance", validate_args.tolerance)
        ->envname("DEBATENET_TOLERANCE");
    validate->add_option("--threads", validate_args.threads)->envname("DEBATENET_THREADS");
    validate->add_option("--exact-cutoff", validate_args.exact_cutoff)
        ->envname("DEBATENET_EXACT_CUTOFF");

    CommunitiesArgs comm_args;
    auto* communities = app.add_subcommand("communities", "detect or propagate communities");
    communities->add_option("--input", comm_args.input)->required()
        ->envname("DEBATENET_INPUT");
    communities->add_option("--output-dir", comm_args.output_dir)->required()
        ->envname("DEBATENET_OUTPUT_DIR");
    communities->add_option("--mode", comm_args.mode, "louvain or propagate");
    communities->add_option("--resolution", comm_args.resolution)
        ->envname("DEBATENET_RESOLUTION");
    communities->add_option("--seed", comm_args.seed)->required()
        ->envname("DEBATENET_SEED");
    communities->add_option("--seeds", comm_args.seeds_path, "seed labels (propagate)");
    communities->add_option("--max-sweeps", comm_args.max_sweeps);
    communities->add_flag("--unfreeze-seeds", comm_args.unfreeze_seeds,
                          "let propagation overwrite seed labels");

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "generate synthetic benchmark data");
    gen->add_option("--scenario", gen_args.scenario, "scenario json")->required()
        ->envname("DEBATENET_SCENARIO");
    gen->add_option("--output-dir", gen_args.output_dir)->required()
        ->envname("DEBATENET_OUTPUT_DIR");
    auto* seed_opt = gen->add_option("--seed", gen_args.seed,
                                     "override the scenario rng seed");
    seed_opt->envname("DEBATENET_SEED");

    PipelineArgs pipeline_args;
    auto* pipeline = app.add_subcommand("pipeline", "run the staged analysis flow");
    pipeline->add_option("--input", pipeline_args.input)->required()
        ->envname("DEBATENET_INPUT");
    pipeline->add_option("--output-dir", pipeline_args.output_dir)->required()
        ->envname("DEBATENET_OUTPUT_DIR");
    pipeline->add_option("--format", pipeline_args.format, "jsonl or csv")
        ->envname("DEBATENET_FORMAT");
    pipeline->add_option("--tag-table", pipeline_args.tag_table)
        ->envname("DEBATENET_TAG_TABLE");
    pipeline->add_option("--shorteners", pipeline_args.shorteners)
        ->envname("DEBATENET_SHORTENERS");
    pipeline->add_option("--label-map", pipeline_args.label_map)
        ->envname("DEBATENET_LABEL_MAP");
    pipeline->add_option("--states", pipeline_args.states)->envname("DEBATENET_STATES");
    pipeline->add_option("--fdr", pipeline_args.fdr)->envname("DEBATENET_FDR");
    pipeline->add_option("--tolerance", pipeline_args.tolerance)
        ->envname("DEBATENET_TOLERANCE");
    pipeline->add_option("--resolution", pipeline_args.resolution)
        ->envname("DEBATENET_RESOLUTION");
    pipeline->add_option("--seed", pipeline_args.seed)->required()
        ->envname("DEBATENET_SEED");
    pipeline->add_option("--threads", pipeline_args.threads)->envname("DEBATENET_THREADS");
    pipeline->add_option("--political-labels", pipeline_args.political_labels,
                         "comma-separated labels kept by the community filter")
        ->envname("DEBATENET_POLITICAL_LABELS");
    pipeline->add_option("--bot-thresholds", pipeline_args.bot_thresholds,
                         "lo,hi fixed score cutoffs instead of deciles")
        ->envname("DEBATENET_BOT_THRESHOLDS");
    pipeline->add_option("--until", pipeline_args.until,
                         "stop after: networks|solve|validate|communities|full");

    ReportArgs report_args;
    auto* report_cmd = app.add_subcommand("report", "recompute tables from records");
    report_cmd->add_option("--input", report_args.input)->required()
        ->envname("DEBATENET_INPUT");
    report_cmd->add_option("--output-dir", report_args.output_dir)->required()
        ->envname("DEBATENET_OUTPUT_DIR");
    report_cmd->add_option("--format", report_args.format)->envname("DEBATENET_FORMAT");
    report_cmd->add_option("--tag-table", report_args.tag_table)
        ->envname("DEBATENET_TAG_TABLE");
    report_cmd->add_option("--shorteners", report_args.shorteners)
        ->envname("DEBATENET_SHORTENERS");
    report_cmd->add_option("--states", report_args.states)->envname("DEBATENET_STATES");
    report_cmd->add_option("--bot-thresholds", report_args.bot_thresholds)
        ->envname("DEBATENET_BOT_THRESHOLDS");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        gen_args.seed_set = seed_opt->count() > 0 || std::getenv("DEBATENET_SEED");
        if (solve->parsed()) return cmd_solve(solve_args);
        if (validate->parsed()) return cmd_validate(validate_args);
        if (communities->parsed()) return cmd_communities(comm_args);
        if (gen->parsed()) return cmd_gen(gen_args);
        if (pipeline->parsed()) return cmd_pipeline(pipeline_args);
        if (report_cmd->parsed()) return cmd_report(report_args);
        return kConfig;
    } catch (const convergence_error& e) {
        std::cerr << "error (convergence): " << e.what() << "\n";
        return kNoConvergence;
    } catch (const io_error& e) {
        std::cerr << "error (io): " << e.what() << "\n";
        return kMissingInput;
    } catch (const format_error& e) {
        std::cerr << "error (format): " << e.what() << "\n";
        return kBadData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error (config): " << e.what() << "\n";
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUnexpected;
    }
}
