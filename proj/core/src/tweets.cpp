#include "debatenet/tweets.hpp"

#include "debatenet/errors.hpp"
#include "debatenet/text_io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

namespace debatenet {

namespace {

using json = nlohmann::json;

TweetRecord record_from_json(const json& j) {
    TweetRecord rec;
    rec.tweet_id = j.at("tweet_id").get<std::string>();
    rec.author_id = j.at("author_id").get<std::string>();
    rec.author_verified = j.at("author_verified").get<bool>();
    if (j.contains("retweeted_author_id") && !j["retweeted_author_id"].is_null())
        rec.retweeted_author_id = j["retweeted_author_id"].get<std::string>();
    rec.lang = j.at("lang").get<std::string>();
    rec.text = j.at("text").get<std::string>();
    if (j.contains("urls") && !j["urls"].is_null())
        rec.urls = j["urls"].get<std::vector<std::string>>();
    if (j.contains("bot_score") && !j["bot_score"].is_null()) {
        double s = j["bot_score"].get<double>();
        if (s < 0.0 || s > 1.0) throw format_error("bot_score outside [0, 1]");
        rec.bot_score = s;
    }
    rec.timestamp = j.at("timestamp").get<std::int64_t>();
    if (rec.tweet_id.empty() || rec.author_id.empty())
        throw format_error("empty identifier");
    return rec;
}

const std::vector<std::string> kCsvColumns = {
    "tweet_id", "author_id",  "author_verified", "retweeted_author_id", "lang",
    "text",     "urls",       "bot_score",       "timestamp"};

TweetRecord record_from_csv(const std::vector<std::string>& fields) {
    if (fields.size() != kCsvColumns.size())
        throw format_error("csv row has wrong field count");
    TweetRecord rec;
    rec.tweet_id = fields[0];
    rec.author_id = fields[1];
    if (fields[2] == "true" || fields[2] == "1")
        rec.author_verified = true;
    else if (fields[2] == "false" || fields[2] == "0")
        rec.author_verified = false;
    else
        throw format_error("author_verified must be boolean");
    if (!fields[3].empty()) rec.retweeted_author_id = fields[3];
    rec.lang = fields[4];
    rec.text = fields[5];
    if (!fields[6].empty())
        for (auto part : split(fields[6], ' '))
            if (!part.empty()) rec.urls.emplace_back(part);
    if (!fields[7].empty()) {
        double s = parse_double(fields[7]);
        if (s < 0.0 || s > 1.0) throw format_error("bot_score outside [0, 1]");
        rec.bot_score = s;
    }
    rec.timestamp = parse_int(fields[8]);
    if (rec.tweet_id.empty() || rec.author_id.empty())
        throw format_error("empty identifier");
    return rec;
}

} // namespace

IngestStats ingest_tweets(const std::filesystem::path& path, TweetFormat format,
                          const std::function<void(TweetRecord&&)>& sink) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open tweet file: " + path.string());

    IngestStats stats;
    if (format == TweetFormat::jsonl) {
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            stats.lines++;
            try {
                json j = json::parse(line);
                sink(record_from_json(j));
                stats.parsed++;
            } catch (const std::exception&) {
                stats.malformed++;
            }
        }
    } else {
        std::vector<std::string> fields;
        bool first = true;
        while (read_csv_record(in, fields)) {
            if (fields.size() == 1 && fields[0].empty()) continue;
            if (first) {
                first = false;
                if (fields == kCsvColumns) continue; // header
            }
            stats.lines++;
            try {
                sink(record_from_csv(fields));
                stats.parsed++;
            } catch (const std::exception&) {
                stats.malformed++;
            }
        }
    }
    if (stats.lines > 0 && stats.malformed * 2 > stats.lines)
        throw format_error("more than half of the input lines are malformed (" +
                           std::to_string(stats.malformed) + " of " +
                           std::to_string(stats.lines) + ")");
    return stats;
}

IngestResult ingest_tweets(const std::filesystem::path& path, TweetFormat format) {
    IngestResult result;
    result.stats = ingest_tweets(path, format, [&](TweetRecord&& rec) {
        result.records.push_back(std::move(rec));
    });
    return result;
}

std::string to_jsonl(const TweetRecord& rec) {
    nlohmann::ordered_json j;
    j["tweet_id"] = rec.tweet_id;
    j["author_id"] = rec.author_id;
    j["author_verified"] = rec.author_verified;
    if (rec.retweeted_author_id) j["retweeted_author_id"] = *rec.retweeted_author_id;
    j["lang"] = rec.lang;
    j["text"] = rec.text;
    j["urls"] = rec.urls;
    if (rec.bot_score) j["bot_score"] = *rec.bot_score;
    j["timestamp"] = rec.timestamp;
    return j.dump();
}

std::string to_csv_row(const TweetRecord& rec) {
    std::string urls;
    for (const auto& u : rec.urls) {
        if (!urls.empty()) urls.push_back(' ');
        urls += u;
    }
    std::ostringstream out;
    out << csv_escape(rec.tweet_id) << ',' << csv_escape(rec.author_id) << ','
        << (rec.author_verified ? "true" : "false") << ','
        << csv_escape(rec.retweeted_author_id.value_or("")) << ',' << csv_escape(rec.lang)
        << ',' << csv_escape(rec.text) << ',' << csv_escape(urls) << ','
        << (rec.bot_score ? format_double(*rec.bot_score) : "") << ',' << rec.timestamp;
    return out.str();
}

std::string csv_header() {
    std::string out;
    for (const auto& c : kCsvColumns) {
        if (!out.empty()) out.push_back(',');
        out += c;
    }
    return out;
}

std::string_view to_string(StateKind kind) {
    return kind == StateKind::swing ? "swing" : "safe";
}

StateConfig StateConfig::us2020() {
    StateConfig cfg;
    cfg.states = {
        {"arizona", StateKind::swing},     {"florida", StateKind::swing},
        {"michigan", StateKind::swing},    {"pennsylvania", StateKind::swing},
        {"new jersey", StateKind::safe},   {"indiana", StateKind::safe},
        {"washington", StateKind::safe},   {"louisiana", StateKind::safe},
    };
    cfg.candidates = {"trump", "biden"};
    return cfg;
}

StateConfig StateConfig::from_csv(std::istream& in) {
    StateConfig cfg;
    std::vector<std::string> fields;
    bool first = true;
    while (read_csv_record(in, fields)) {
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (first) {
            first = false;
            if (fields.size() == 2 && fields[0] == "name" && fields[1] == "kind") continue;
        }
        if (fields.size() != 2) throw format_error("state config: expected name,kind");
        std::string name = to_lower_ascii(fields[0]);
        StateKind kind;
        if (fields[1] == "swing")
            kind = StateKind::swing;
        else if (fields[1] == "safe")
            kind = StateKind::safe;
        else
            throw format_error("state config: kind must be swing or safe");
        for (const auto& s : cfg.states)
            if (s.name == name) throw format_error("state config: duplicate state " + name);
        cfg.states.push_back({std::move(name), kind});
    }
    if (cfg.states.empty()) throw format_error("state config: no states");
    cfg.candidates = {"trump", "biden"};
    return cfg;
}

namespace {

std::vector<std::string_view> tokenize_lower(const std::string& lowered) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    const std::size_t n = lowered.size();
    auto is_word = [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    };
    while (i < n) {
        while (i < n && !is_word(lowered[i])) ++i;
        std::size_t start = i;
        while (i < n && is_word(lowered[i])) ++i;
        if (i > start) tokens.push_back(std::string_view(lowered).substr(start, i - start));
    }
    return tokens;
}

} // namespace

StateMatch associate_state(std::string_view text, const StateConfig& cfg) {
    std::string lowered = to_lower_ascii(text);
    auto tokens = tokenize_lower(lowered);

    StateMatch match;
    for (std::size_t s = 0; s < cfg.states.size(); ++s) {
        auto phrase = split(cfg.states[s].name, ' ');
        bool found = false;
        if (!tokens.empty() && tokens.size() >= phrase.size()) {
            for (std::size_t pos = 0; pos + phrase.size() <= tokens.size() && !found;
                 ++pos) {
                bool all = true;
                for (std::size_t k = 0; k < phrase.size(); ++k)
                    if (tokens[pos + k] != phrase[k]) {
                        all = false;
                        break;
                    }
                found = all;
            }
        }
        if (!found) continue;
        if (match.kind == StateMatch::Kind::none) {
            match.kind = StateMatch::Kind::unique;
            match.state_index = s;
        } else {
            match.kind = StateMatch::Kind::ambiguous;
            return match;
        }
    }
    return match;
}

bool filter_language(const TweetRecord& rec) {
    if (rec.lang.empty()) return false;
    std::string lowered = to_lower_ascii(rec.lang);
    std::size_t dash = lowered.find_first_of("-_");
    std::string_view primary =
        dash == std::string::npos ? std::string_view(lowered)
                                  : std::string_view(lowered).substr(0, dash);
    return primary == "en";
}

} // namespace debatenet
