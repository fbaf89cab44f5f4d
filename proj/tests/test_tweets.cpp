#include "debatenet/bots.hpp"
#include "debatenet/domains.hpp"
#include "debatenet/errors.hpp"
#include "debatenet/text_io.hpp"
#include "debatenet/tweets.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

using namespace debatenet;

namespace {

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& content) {
        path = std::filesystem::temp_directory_path() /
               ("debatenet_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++) + ".txt");
        std::ofstream out(path, std::ios::binary);
        out << content;
    }
    ~TempFile() { std::filesystem::remove(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

TweetRecord basic_record() {
    TweetRecord rec;
    rec.tweet_id = "t1";
    rec.author_id = "u1";
    rec.lang = "en";
    rec.text = "Trump rally in Florida today";
    rec.timestamp = 1000;
    return rec;
}

} // namespace

TEST_CASE("empty file ingests to an empty stream") {
    TempFile f("");
    auto result = ingest_tweets(f.path, TweetFormat::jsonl);
    CHECK(result.records.empty());
    CHECK(result.stats.lines == 0);
    CHECK(result.stats.malformed == 0);
}

TEST_CASE("well-formed jsonl lines ingest in order") {
    std::string lines;
    for (int k = 0; k < 3; ++k) {
        auto rec = basic_record();
        rec.tweet_id = "t" + std::to_string(k);
        lines += to_jsonl(rec) + "\n";
    }
    TempFile f(lines);
    auto result = ingest_tweets(f.path, TweetFormat::jsonl);
    REQUIRE(result.records.size() == 3);
    CHECK(result.records[0].tweet_id == "t0");
    CHECK(result.records[2].tweet_id == "t2");
}

TEST_CASE("one malformed line among a hundred is skipped and counted") {
    std::string lines;
    for (int k = 0; k < 99; ++k) {
        auto rec = basic_record();
        rec.tweet_id = "t" + std::to_string(k);
        lines += to_jsonl(rec) + "\n";
        if (k == 50) lines += "{not json}\n";
    }
    TempFile f(lines);
    auto result = ingest_tweets(f.path, TweetFormat::jsonl);
    CHECK(result.records.size() == 99);
    CHECK(result.stats.malformed == 1);
}

TEST_CASE("mostly-malformed input aborts with a format error") {
    TempFile f("garbage\nmore garbage\n" + to_jsonl(basic_record()) + "\n");
    CHECK_THROWS_AS(ingest_tweets(f.path, TweetFormat::jsonl), format_error);
}

TEST_CASE("unreadable file raises io_error") {
    CHECK_THROWS_AS(ingest_tweets("/nonexistent/path/tweets.jsonl", TweetFormat::jsonl),
                    io_error);
}

TEST_CASE("csv round-trips through the csv ingest path") {
    auto rec = basic_record();
    rec.retweeted_author_id = "v9";
    rec.urls = {"https://example.com/a", "https://example.com/b"};
    rec.bot_score = 0.25;
    rec.text = "a text, with \"quotes\" in Florida";
    TempFile f(csv_header() + "\n" + to_csv_row(rec) + "\n");
    auto result = ingest_tweets(f.path, TweetFormat::csv);
    REQUIRE(result.records.size() == 1);
    const auto& got = result.records[0];
    CHECK(got.tweet_id == rec.tweet_id);
    CHECK(got.retweeted_author_id == rec.retweeted_author_id);
    CHECK(got.urls == rec.urls);
    CHECK(got.bot_score == rec.bot_score);
    CHECK(got.text == rec.text);
}

TEST_CASE("bot score outside the unit interval is malformed") {
    auto rec = basic_record();
    std::string line = to_jsonl(rec);
    line.replace(line.find("\"timestamp\""), 0, "\"bot_score\":1.5,");
    TempFile f(line + "\n" + to_jsonl(rec) + "\n" + to_jsonl(rec) + "\n");
    auto result = ingest_tweets(f.path, TweetFormat::jsonl);
    CHECK(result.stats.malformed == 1);
    CHECK(result.records.size() == 2);
}

TEST_CASE("state association follows the one-state rule") {
    auto cfg = StateConfig::us2020();
    auto unique = associate_state("Trump rally in Florida today", cfg);
    REQUIRE(unique.kind == StateMatch::Kind::unique);
    CHECK(cfg.states[unique.state_index].name == "florida");
    CHECK(cfg.states[unique.state_index].kind == StateKind::swing);

    CHECK(associate_state("Arizona and Florida both in play", cfg).kind ==
          StateMatch::Kind::ambiguous);
    CHECK(associate_state("nothing to see here", cfg).kind == StateMatch::Kind::none);
}

TEST_CASE("matching is case-insensitive and punctuation-proof") {
    auto cfg = StateConfig::us2020();
    auto m = associate_state("Trump wins florida!!!", cfg);
    REQUIRE(m.kind == StateMatch::Kind::unique);
    CHECK(cfg.states[m.state_index].name == "florida");
}

TEST_CASE("multi-word states match as phrases, not substrings") {
    auto cfg = StateConfig::us2020();
    auto m = associate_state("polling tightens in New Jersey tonight", cfg);
    REQUIRE(m.kind == StateMatch::Kind::unique);
    CHECK(cfg.states[m.state_index].name == "new jersey");
    // "jersey" alone is not a configured state
    CHECK(associate_state("love my jersey", cfg).kind == StateMatch::Kind::none);
    // repeated mentions of one state stay unique
    CHECK(associate_state("Florida Florida Florida", cfg).kind ==
          StateMatch::Kind::unique);
}

TEST_CASE("language filter keeps english primary subtags only") {
    auto rec = basic_record();
    rec.lang = "en";
    CHECK(filter_language(rec));
    rec.lang = "en-GB";
    CHECK(filter_language(rec));
    rec.lang = "it";
    CHECK(!filter_language(rec));
    rec.lang = "";
    CHECK(!filter_language(rec));
}

TEST_CASE("registrable domains follow the suffix rules") {
    CHECK(registrable_domain("www.nytimes.com") == "nytimes.com");
    CHECK(registrable_domain("latimes.com") == "latimes.com");
    CHECK(registrable_domain("bbc.co.uk") == "bbc.co.uk");
    CHECK(registrable_domain("news.bbc.co.uk") == "bbc.co.uk");
    CHECK(registrable_domain("FOO.Example.ORG") == "example.org");
    CHECK(registrable_domain("a.b.unknowntld") == "b.unknowntld");
    // wildcard and exception rules
    CHECK(registrable_domain("x.foo.ck") == "x.foo.ck");
    CHECK(registrable_domain("sub.www.ck") == "www.ck");
}

TEST_CASE("url domain extraction expands shorteners first") {
    ExpansionTable expansion = {{"https://t.co/abc", "https://example.com/x"}};
    CHECK(extract_domain("https://www.nytimes.com/2020/article", {}) == "nytimes.com");
    CHECK(extract_domain("https://latimes.com/article", {}) == "latimes.com");
    CHECK(extract_domain("https://t.co/abc", expansion) == "example.com");
    CHECK(!extract_domain("not a url", {}).has_value());
    CHECK(!extract_domain("mailto:user@example.com", {}).has_value());
}

TEST_CASE("tag lookup defaults to UNC") {
    TagTable table = {{"nytimes.com", ReputationTag::T}, {"twitter.com", ReputationTag::P}};
    CHECK(tag_domain("nytimes.com", table) == ReputationTag::T);
    CHECK(tag_domain("unknown-site.biz", table) == ReputationTag::UNC);
    CHECK(tag_domain("twitter.com", table) == ReputationTag::P);
}

TEST_CASE("uniform scores split ten-ten under the decile rule") {
    std::vector<std::pair<std::string, double>> scores;
    for (int k = 0; k < 100; ++k)
        scores.emplace_back("u" + std::to_string(k), 0.01 * k);
    auto cls = classify_bots(scores);
    CHECK(cls.humans == 10);
    CHECK(cls.bots == 10);
    CHECK(cls.of("u0") == BotClass::human);
    CHECK(cls.of("u9") == BotClass::human);
    CHECK(cls.of("u10") == BotClass::unclassified);
    CHECK(cls.of("u90") == BotClass::bot);
    CHECK(cls.of("u99") == BotClass::bot);
}

TEST_CASE("engineered cut points land on the configured boundaries") {
    // 20 scores: lowest pair at 0.03/0.04, highest pair at 0.45/0.90
    std::vector<std::pair<std::string, double>> scores;
    scores.emplace_back("lo1", 0.03);
    scores.emplace_back("lo2", 0.04);
    for (int k = 0; k < 16; ++k)
        scores.emplace_back("mid" + std::to_string(k), 0.10 + 0.01 * k);
    scores.emplace_back("hi1", 0.45);
    scores.emplace_back("hi2", 0.90);
    auto cls = classify_bots(scores);
    CHECK(cls.cut_low == doctest::Approx(0.04));
    CHECK(cls.cut_high == doctest::Approx(0.45));
    CHECK(cls.of("lo1") == BotClass::human);
    CHECK(cls.of("lo2") == BotClass::human);
    CHECK(cls.of("hi1") == BotClass::bot);
    CHECK(cls.of("hi2") == BotClass::bot);
    CHECK(cls.of("mid3") == BotClass::unclassified);
}

TEST_CASE("identical scores leave everyone unclassified") {
    std::vector<std::pair<std::string, double>> scores;
    for (int k = 0; k < 20; ++k) scores.emplace_back("u" + std::to_string(k), 0.3);
    auto cls = classify_bots(scores);
    CHECK(cls.humans == 0);
    CHECK(cls.bots == 0);
}

TEST_CASE("ties spanning a cut point fall to unclassified") {
    // 20 accounts; value 0.1 occupies ranks 1..3 so it crosses the first-decile cut
    std::vector<std::pair<std::string, double>> scores;
    scores.emplace_back("a", 0.05);
    scores.emplace_back("b", 0.1);
    scores.emplace_back("c", 0.1);
    scores.emplace_back("d", 0.1);
    for (int k = 0; k < 13; ++k)
        scores.emplace_back("m" + std::to_string(k), 0.2 + 0.01 * k);
    scores.emplace_back("x", 0.8);
    scores.emplace_back("y", 0.85);
    scores.emplace_back("z", 0.9);
    auto cls = classify_bots(scores);
    // first decile holds 2 slots; 0.1 ties across the boundary
    CHECK(cls.of("a") == BotClass::human);
    CHECK(cls.of("b") == BotClass::unclassified);
    CHECK(cls.of("c") == BotClass::unclassified);
    CHECK(cls.of("d") == BotClass::unclassified);
    CHECK(cls.humans == 1);
    CHECK(cls.bots == 2);
    CHECK(cls.of("y") == BotClass::bot);
    CHECK(cls.of("z") == BotClass::bot);
    CHECK(cls.of("x") == BotClass::unclassified);
}

TEST_CASE("decile sizes stay within one of n over ten absent boundary ties") {
    std::vector<std::pair<std::string, double>> scores;
    for (int k = 0; k < 137; ++k)
        scores.emplace_back("u" + std::to_string(k), 0.001 * (k * 7 % 137));
    auto cls = classify_bots(scores);
    CHECK(cls.humans == 13);
    CHECK(cls.bots == 13);
}

TEST_CASE("fewer than ten scored accounts is an error without fixed thresholds") {
    std::vector<std::pair<std::string, double>> scores;
    for (int k = 0; k < 9; ++k) scores.emplace_back("u" + std::to_string(k), 0.1 * k);
    CHECK_THROWS_AS(classify_bots(scores), std::invalid_argument);
    auto cls = classify_bots(scores, BotThresholds{0.1, 0.7});
    CHECK(cls.of("u0") == BotClass::human);
    CHECK(cls.of("u8") == BotClass::bot);
}

TEST_CASE("scores outside the unit interval are rejected") {
    std::vector<std::pair<std::string, double>> scores = {{"u", 1.2}};
    CHECK_THROWS_AS(classify_bots(scores, BotThresholds{0.1, 0.7}), std::invalid_argument);
}
