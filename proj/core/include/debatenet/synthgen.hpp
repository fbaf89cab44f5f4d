#pragma once

#include "debatenet/bipartite_graph.hpp"
#include "debatenet/domains.hpp"
#include "debatenet/tweets.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace debatenet {

/// Planted-block bipartite benchmark: pairs within a block link with p_in,
/// across blocks with p_out.
struct PlantedBipartiteSpec {
    struct Block {
        std::uint32_t top_size;
        std::uint32_t bottom_size;
    };
    std::vector<Block> blocks;
    double p_in = 0.3;
    double p_out = 0.02;
    std::uint64_t rng_seed = 0;
};

struct PlantedBipartite {
    BipartiteGraph graph;
    std::vector<std::uint32_t> top_block;
    std::vector<std::uint32_t> bottom_block;
};

PlantedBipartite gen_planted_bipartite(const PlantedBipartiteSpec& spec);

/// Full synthetic tweet-record scenario with planted ground truth. Camps are
/// internally cohesive retweet groups; the noise camp is disconnected from
/// political camps so the community filter drops its traffic.
struct ScenarioSpec {
    std::size_t n_tweets = 100000;
    double swing_share = 0.88;

    struct TagMix {
        double t, n, p, s, unc;
        double sum() const { return t + n + p + s + unc; }
    };
    TagMix swing_mix{0.2984, 0.2347, 0.15, 0.02, 0.2969};
    TagMix safe_mix{0.5087, 0.1833, 0.12, 0.01, 0.178};
    double url_rate = 0.6; // probability a tweet carries one URL

    std::vector<std::string> political_camps = {"blue", "red"};
    std::string noise_camp = "noise";
    double noise_share = 0.17; // tweet share of the noise camp

    std::uint32_t verified_per_camp = 40;
    std::uint32_t unverified_users = 9600; // split across camps by tweet share
    double cross_camp_retweet = 0.05;      // political camps only

    double bot_pool_share = 0.10;  // of users, planted high-score accounts
    double human_pool_share = 0.10;
    double bot_activity = 2.0;     // activity multiplier of the bot pool
    double bot_share_n_links = 0.7369; // bot share of classified N-link traffic
    double bot_share_t_links = 0.6290;

    double verified_tweet_share = 0.05;    // original posts by verified users
    double unverified_original_share = 0.08;

    std::uint64_t rng_seed = 0;
    StateConfig states = StateConfig::us2020();
};

/// Per-user planted truth plus realized counts, written as the JSON sidecar.
struct ScenarioGroundTruth {
    struct User {
        std::string id;
        std::string camp;
        bool verified = false;
        std::string planted_class; // human | bot | mid | verified
        double bot_score = 0.0;
    };
    std::vector<User> users;

    std::size_t n_tweets = 0;
    std::size_t swing_tweets = 0;
    std::size_t noise_tweets = 0;
    std::size_t url_count = 0;
    std::array<std::size_t, 5> swing_tag_counts{};
    std::array<std::size_t, 5> safe_tag_counts{};
    // classified-account link attribution, realized during generation
    std::size_t n_links_classified = 0, n_links_bot = 0;
    std::size_t t_links_classified = 0, t_links_bot = 0;

    std::vector<std::string> political_camps;
    std::string noise_camp;
};

struct ScenarioOutput {
    ScenarioGroundTruth truth;
    std::filesystem::path records_path;
    std::filesystem::path sidecar_path;
    std::filesystem::path tag_table_path;
    std::filesystem::path shorteners_path;
};

/// Emits records JSONL, the matching reputation tag table, a shortener
/// expansion table and the ground-truth sidecar into `output_dir`.
ScenarioOutput gen_synthetic_dataset(const ScenarioSpec& spec,
                                     const std::filesystem::path& output_dir);

/// Spec round-trip for the CLI (JSON object, all fields optional with
/// defaults). Throws format_error on unknown type markers.
ScenarioSpec scenario_from_json_text(const std::string& text);
PlantedBipartiteSpec planted_from_json_text(const std::string& text);

} // namespace debatenet
