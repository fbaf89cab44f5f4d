#include "debatenet/errors.hpp"
#include "debatenet/pipeline.hpp"
#include "debatenet/report.hpp"
#include "debatenet/rng.hpp"

#include <doctest.h>

#include <map>
#include <set>
#include <sstream>

using namespace debatenet;

namespace {

TweetRecord make_record(const std::string& tweet_id, const std::string& author,
                        bool verified, const std::string& text,
                        std::optional<std::string> retweeted = std::nullopt,
                        std::vector<std::string> urls = {},
                        std::optional<double> score = std::nullopt) {
    TweetRecord rec;
    rec.tweet_id = tweet_id;
    rec.author_id = author;
    rec.author_verified = verified;
    rec.retweeted_author_id = std::move(retweeted);
    rec.lang = "en";
    rec.text = text;
    rec.urls = std::move(urls);
    rec.bot_score = score;
    rec.timestamp = 0;
    return rec;
}

} // namespace

TEST_CASE("single retweet of a verified author forms the minimal bipartite graph") {
    std::vector<TweetRecord> records = {
        make_record("t0", "V", true, "original in Florida"),
        make_record("t1", "U", false, "rt in Florida", "V"),
    };
    auto nets = build_networks(records);
    CHECK(nets.bipartite.top_count() == 1);
    CHECK(nets.bipartite.bottom_count() == 1);
    CHECK(nets.bipartite.edge_count() == 1);
    CHECK(nets.verified_ids.id_of(0) == "V");
    CHECK(nets.unverified_ids.id_of(0) == "U");
}

TEST_CASE("repeat retweets collapse in the bipartite graph but weight the retweet graph") {
    std::vector<TweetRecord> records = {
        make_record("t0", "V", true, "post about Florida"),
    };
    for (int k = 1; k <= 3; ++k)
        records.push_back(make_record("t" + std::to_string(k), "U", false,
                                      "rt about Florida", "V"));
    auto nets = build_networks(records);
    CHECK(nets.bipartite.edge_count() == 1);
    REQUIRE(nets.retweet.edge_count() == 1);
    CHECK(nets.retweet.edges()[0].weight == doctest::Approx(3.0));
}

TEST_CASE("records without retweets cannot build networks") {
    std::vector<TweetRecord> records = {
        make_record("t0", "V", true, "post about Florida"),
    };
    CHECK_THROWS_AS(build_networks(records), std::invalid_argument);
}

TEST_CASE("self-retweets are skipped and counted") {
    std::vector<TweetRecord> records = {
        make_record("t0", "V", true, "post"),
        make_record("t1", "V", true, "self rt", "V"),
        make_record("t2", "U", false, "rt", "V"),
    };
    auto nets = build_networks(records);
    CHECK(nets.self_retweets_skipped == 1);
    CHECK(nets.retweet_records == 1);
}

TEST_CASE("network counts match direct bookkeeping on synthetic records") {
    SeededRng rng(64);
    std::vector<TweetRecord> records;
    std::set<std::pair<std::string, std::string>> bipartite_expected;
    std::map<std::pair<std::string, std::string>, int> retweet_expected;
    for (int v = 0; v < 5; ++v)
        records.push_back(
            make_record("orig" + std::to_string(v), "V" + std::to_string(v), true, "x"));
    for (int k = 0; k < 400; ++k) {
        std::string retweeter = "U" + std::to_string(rng.below(50));
        std::string source = "V" + std::to_string(rng.below(5));
        records.push_back(make_record("rt" + std::to_string(k), retweeter, false, "x",
                                      source));
        bipartite_expected.insert({source, retweeter});
        auto key = retweeter < source ? std::make_pair(retweeter, source)
                                      : std::make_pair(source, retweeter);
        retweet_expected[key]++;
    }
    auto nets = build_networks(records);
    CHECK(nets.bipartite.edge_count() == bipartite_expected.size());
    CHECK(nets.retweet.edge_count() == retweet_expected.size());
    double total = 0;
    for (const auto& [key, count] : retweet_expected) total += count;
    CHECK(nets.retweet.total_weight() == doctest::Approx(total));
}

TEST_CASE("community filter keeps only politically labeled authors") {
    std::vector<TweetRecord> records = {
        make_record("t0", "kept", false, "x"),
        make_record("t1", "noise", false, "x"),
        make_record("t2", "stranger", false, "x"),
        make_record("t3", "unlabeled", false, "x"),
    };
    IdIndex ids;
    ids.add("kept");
    ids.add("noise");
    ids.add("unlabeled");
    auto labels = make_assignment(3, {{0, "rep"}, {1, "spam"}});
    auto result = filter_validated(records, ids, labels, {"rep", "dem"});
    REQUIRE(result.kept.size() == 1);
    CHECK(result.kept[0].author_id == "kept");
    CHECK(result.dropped_nonpolitical == 1); // "noise" author, label spam
    CHECK(result.dropped_unlabeled == 2);    // stranger + unlabeled
}

TEST_CASE("report computes the swing share from counts") {
    auto cfg = StateConfig::us2020();
    std::vector<TweetRecord> records;
    for (int k = 0; k < 9; ++k)
        records.push_back(make_record("t" + std::to_string(k), "a", false,
                                      "rally in Florida now"));
    records.push_back(make_record("t9", "b", false, "rally in Indiana now"));
    BotClassification bots; // nobody classified
    auto tables = report(records, {}, {}, bots, cfg);
    CHECK(tables.total_tweets == 10);
    CHECK(tables.swing.tweets == 9);
    CHECK(tables.safe.tweets == 1);
    CHECK(format_pct(100.0 * 9 / 10) == "90.00");
}

TEST_CASE("classified-account table reproduces the fixture shares") {
    ReportTables t;
    t.human.users = 57797;
    t.human.tweets = 228378;
    t.bot.users = 51648;
    t.bot.tweets = 409449;
    CHECK(format_pct(t.bot_traffic_pct()) == "64.19");
    CHECK(format_pct(t.bot_account_pct()) == "47.19");
}

TEST_CASE("report percentages derive exactly from the counts") {
    auto cfg = StateConfig::us2020();
    SeededRng rng(11);
    TagTable tags = {{"t-news.com", ReputationTag::T},
                     {"n-news.com", ReputationTag::N},
                     {"p-site.com", ReputationTag::P},
                     {"s-site.com", ReputationTag::S}};
    std::vector<std::string> domains = {"t-news.com", "n-news.com", "p-site.com",
                                        "s-site.com", "mystery.org"};
    std::vector<std::pair<std::string, double>> scores;
    std::vector<TweetRecord> records;
    for (int k = 0; k < 400; ++k) {
        std::string author = "u" + std::to_string(rng.below(40));
        bool swing = rng.bernoulli(0.8);
        std::string text = swing ? "voting watch in Michigan" : "voting watch in Louisiana";
        std::vector<std::string> urls;
        if (rng.bernoulli(0.7))
            urls.push_back("https://" + domains[rng.below(domains.size())] + "/a");
        records.push_back(make_record("t" + std::to_string(k), author, false, text,
                                      std::nullopt, urls));
    }
    for (int a = 0; a < 40; ++a)
        scores.emplace_back("u" + std::to_string(a), 0.025 * a);
    auto bots = classify_bots(scores);
    auto tables = report(records, tags, {}, bots, cfg);

    auto& kr = tables.swing;
    CHECK(kr.by_tag[0] + kr.by_tag[1] + kr.by_tag[2] + kr.by_tag[3] + kr.by_tag[4] ==
          kr.urls);
    for (const auto& row : tables.links) {
        CHECK(row.swing_urls + row.safe_urls == row.urls);
        if (row.urls > 0)
            CHECK(row.swing_pct() + row.safe_pct() == doctest::Approx(100.0));
        if (row.urls > 0)
            CHECK(row.bot_pct_both() + row.human_pct_both() == doctest::Approx(100.0));
        if (row.swing_urls > 0)
            CHECK(row.bot_pct_swing() + row.human_pct_swing() == doctest::Approx(100.0));
        if (row.safe_urls > 0)
            CHECK(row.bot_pct_safe() + row.human_pct_safe() == doctest::Approx(100.0));
    }
    // link rows nest: T and N are subsets of all
    CHECK(tables.links[1].urls + tables.links[2].urls <= tables.links[0].urls);
}

TEST_CASE("report rejects records without a unique state") {
    auto cfg = StateConfig::us2020();
    std::vector<TweetRecord> records = {
        make_record("t0", "a", false, "Arizona and Florida both")};
    BotClassification bots;
    CHECK_THROWS_AS(report(records, {}, {}, bots, cfg), std::invalid_argument);
}

TEST_CASE("label map parses flags and derives the political set") {
    std::istringstream in(
        "community_id,label,political_flag\n0,rep,true\n1,dem,1\n2,sports,false\n");
    auto map = LabelMap::from_csv(in);
    REQUIRE(map.entries.size() == 3);
    auto political = map.political_labels();
    CHECK(political == std::set<std::string>{"rep", "dem"});
}

TEST_CASE("label map rejects bad flags") {
    std::istringstream in("0,rep,maybe\n");
    CHECK_THROWS_AS(LabelMap::from_csv(in), format_error);
}
