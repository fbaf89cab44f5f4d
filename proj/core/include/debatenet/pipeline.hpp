#pragma once

#include "debatenet/bicm.hpp"
#include "debatenet/bipartite_graph.hpp"
#include "debatenet/bots.hpp"
#include "debatenet/community.hpp"
#include "debatenet/projection.hpp"
#include "debatenet/report.hpp"
#include "debatenet/tweets.hpp"
#include "debatenet/weighted_graph.hpp"

#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace debatenet {

/// Verified x unverified retweet incidence plus the weighted retweet graph
/// over all users appearing in retweet interactions. A user counts as
/// verified when any record shows them as a verified author.
struct NetworkBuildResult {
    BipartiteGraph bipartite;
    IdIndex verified_ids;   // top layer
    IdIndex unverified_ids; // bottom layer
    WeightedGraph retweet;  // undirected, weight = retweet count between pair
    IdIndex retweet_ids;
    std::size_t retweet_records = 0;
    std::size_t self_retweets_skipped = 0;
};

/// Throws std::invalid_argument when the records contain no usable retweet.
NetworkBuildResult build_networks(std::span<const TweetRecord> records);

struct FilterResult {
    std::vector<TweetRecord> kept;
    std::size_t dropped_unlabeled = 0;    // author absent or label never reached
    std::size_t dropped_nonpolitical = 0; // label outside the political set
};

/// Keeps records whose author carries a propagated label in
/// `political_labels`; everything else is dropped and counted.
FilterResult filter_validated(std::span<const TweetRecord> records,
                              const IdIndex& user_ids, const CommunityAssignment& labels,
                              const std::set<std::string>& political_labels);

/// Community label map: community id -> (label, political flag).
/// CSV format "community_id,label,political_flag" with flag in
/// {true,false,1,0}; optional header.
struct LabelMap {
    struct Entry {
        std::string community;
        std::string label;
        bool political = false;
    };
    std::vector<Entry> entries;

    static LabelMap from_csv(std::istream& in);
    std::set<std::string> political_labels() const;
};

enum class PipelineStage { networks, solve, validate, communities, full };

struct PipelineOptions {
    std::filesystem::path input;
    TweetFormat format = TweetFormat::jsonl;
    std::filesystem::path output_dir;
    std::optional<std::filesystem::path> tag_table;
    std::optional<std::filesystem::path> shorteners;
    std::optional<std::filesystem::path> label_map; // required for the full run
    StateConfig states = StateConfig::us2020();
    double fdr_level = 0.05;
    SolverConfig solver;
    double resolution = 1.0;
    std::uint64_t rng_seed = 0;
    int threads = 1;
    std::optional<BotThresholds> bot_thresholds;
    std::set<std::string> political_labels; // empty -> derive from label map flags
    PipelineStage until = PipelineStage::full;
};

struct PipelineSummary {
    // ingest / dataset filters
    std::size_t ingested = 0, malformed = 0;
    std::size_t non_english = 0, no_state = 0, ambiguous_state = 0;
    std::size_t dataset_records = 0;
    std::vector<std::pair<std::string, std::size_t>> state_match_counts;

    // networks
    std::size_t verified_users = 0, unverified_users = 0, bipartite_edges = 0;
    std::size_t retweet_nodes = 0, retweet_edges = 0;

    // null model and projection
    double solver_residual = 0.0;
    long solver_iterations = 0;
    std::size_t tested_pairs = 0, validated_edges = 0;
    double bh_threshold = 0.0;

    // communities
    std::size_t communities = 0;
    std::size_t propagation_labeled = 0;

    // validated dataset
    std::size_t dropped_unlabeled = 0, dropped_nonpolitical = 0;
    std::size_t validated_records = 0;

    ReportTables tables; // populated on a full run
    bool has_tables = false;

    std::vector<std::filesystem::path> artifacts;
};

/// Runs the staged flow, writing each stage artifact under `output_dir` and
/// reloading it for the next stage. Stops after `until`.
PipelineSummary run_pipeline(const PipelineOptions& opts);

} // namespace debatenet
