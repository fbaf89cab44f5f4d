#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace debatenet {

/// One tweet or retweet. `retweeted_author_id` is present iff the record is a
/// retweet. `bot_score`, when present, lies in [0, 1].
struct TweetRecord {
    std::string tweet_id;
    std::string author_id;
    bool author_verified = false;
    std::optional<std::string> retweeted_author_id;
    std::string lang;
    std::string text;
    std::vector<std::string> urls;
    std::optional<double> bot_score;
    std::int64_t timestamp = 0;

    bool is_retweet() const { return retweeted_author_id.has_value(); }
};

enum class TweetFormat { jsonl, csv };

struct IngestStats {
    std::size_t lines = 0;     // nonempty input lines (excluding a CSV header)
    std::size_t parsed = 0;
    std::size_t malformed = 0; // skipped
};

/// Streams records to `sink` in input order, skipping and counting malformed
/// lines. Throws io_error if the file cannot be read and format_error when
/// more than half of the nonempty lines are malformed.
IngestStats ingest_tweets(const std::filesystem::path& path, TweetFormat format,
                          const std::function<void(TweetRecord&&)>& sink);

struct IngestResult {
    std::vector<TweetRecord> records;
    IngestStats stats;
};

IngestResult ingest_tweets(const std::filesystem::path& path, TweetFormat format);

/// One JSONL line (no trailing newline) for a record; inverse of the jsonl
/// ingest path.
std::string to_jsonl(const TweetRecord& rec);
/// CSV row (no trailing newline); urls are space-separated within the field.
std::string to_csv_row(const TweetRecord& rec);
std::string csv_header();

enum class StateKind { swing, safe };
std::string_view to_string(StateKind kind);

struct StateConfig {
    struct State {
        std::string name; // lowercase
        StateKind kind;
    };
    std::vector<State> states;
    std::vector<std::string> candidates; // used by the synthetic generator

    /// The eight states and two candidates of the 2020 configuration.
    static StateConfig us2020();
    /// CSV "name,kind" with kind in {swing, safe}; optional header line.
    static StateConfig from_csv(std::istream& in);
};

struct StateMatch {
    enum class Kind { none, unique, ambiguous } kind = Kind::none;
    std::size_t state_index = 0; // valid when unique
};

/// Case-insensitive whole-word (phrase-aware) state-name matching. Exactly
/// one distinct state in the text -> unique; two or more -> ambiguous.
StateMatch associate_state(std::string_view text, const StateConfig& cfg);

/// True iff the language tag's primary subtag is "en" ("en", "en-GB", ...).
bool filter_language(const TweetRecord& rec);

} // namespace debatenet
