#pragma once

#include "debatenet/bots.hpp"
#include "debatenet/domains.hpp"
#include "debatenet/tweets.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace debatenet {

/// Aggregated statistics of a state-associated record set. All percentages
/// derive exactly from the stored counts; rendering rounds to 2 decimals.
struct ReportTables {
    struct StateRow {
        std::string state;
        StateKind kind = StateKind::swing;
        std::size_t tweets = 0;
        std::size_t urls = 0; // URL occurrences
    };
    std::vector<StateRow> per_state; // config order

    struct KindRow {
        std::size_t users = 0;  // distinct authors
        std::size_t tweets = 0;
        std::size_t urls = 0;
        std::array<std::size_t, 5> by_tag{}; // indexed by ReputationTag
        double tag_pct(ReputationTag tag) const;
    };
    KindRow swing, safe;

    struct ClassRow {
        std::size_t users = 0;
        std::size_t tweets = 0;
        std::size_t urls = 0;
    };
    ClassRow human, bot; // classified accounts only

    double bot_traffic_pct() const;  // bot tweets over classified tweets
    double bot_account_pct() const;  // bot users over classified users

    /// Link-sharing split for one link type over classified accounts only.
    struct LinkRow {
        std::string link_type; // "all", "T", "N"
        std::size_t urls = 0;
        std::size_t swing_urls = 0, safe_urls = 0;
        std::size_t bot_both = 0, bot_swing = 0, bot_safe = 0; // human = rest
        double swing_pct() const;
        double safe_pct() const;
        double bot_pct_both() const;
        double human_pct_both() const;
        double bot_pct_swing() const;
        double human_pct_swing() const;
        double bot_pct_safe() const;
        double human_pct_safe() const;
    };
    std::array<LinkRow, 3> links;

    std::size_t total_tweets = 0;
    std::size_t total_urls = 0;
    std::size_t unparsable_urls = 0;
    double bot_cut_low = 0.0, bot_cut_high = 1.0;
    std::size_t scored_accounts = 0;
};

/// Computes the tables from state-associated records. Every record must match
/// exactly one configured state (std::invalid_argument otherwise). URL
/// occurrences are attributed to the posting account's bot class.
ReportTables report(std::span<const TweetRecord> records, const TagTable& tags,
                    const ExpansionTable& expansion, const BotClassification& bots,
                    const StateConfig& cfg);

/// Tag histogram over URL occurrences; used for the per-stage figure export.
std::array<std::size_t, 5> url_tag_histogram(std::span<const TweetRecord> records,
                                             const TagTable& tags,
                                             const ExpansionTable& expansion);

/// Human-readable aligned tables (percentages with 2 decimals).
void render_report_text(const ReportTables& t, std::ostream& out);
/// Machine-readable JSON with both counts and derived percentages.
void render_report_json(const ReportTables& t, std::ostream& out);

/// Rounds to 2 decimals and formats with a fixed 2-decimal suffix.
std::string format_pct(double value);

} // namespace debatenet
