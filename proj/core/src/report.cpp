#include "debatenet/report.hpp"

#include "debatenet/text_io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <stdexcept>

namespace debatenet {

namespace {

double pct(std::size_t part, std::size_t whole) {
    if (whole == 0) return 0.0;
    return 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

std::size_t tag_index(ReputationTag tag) { return static_cast<std::size_t>(tag); }

} // namespace

double ReportTables::KindRow::tag_pct(ReputationTag tag) const {
    return pct(by_tag[tag_index(tag)], urls);
}

double ReportTables::bot_traffic_pct() const {
    return pct(bot.tweets, bot.tweets + human.tweets);
}

double ReportTables::bot_account_pct() const {
    return pct(bot.users, bot.users + human.users);
}

double ReportTables::LinkRow::swing_pct() const { return pct(swing_urls, urls); }
double ReportTables::LinkRow::safe_pct() const { return pct(safe_urls, urls); }
double ReportTables::LinkRow::bot_pct_both() const { return pct(bot_both, urls); }
double ReportTables::LinkRow::human_pct_both() const { return pct(urls - bot_both, urls); }
double ReportTables::LinkRow::bot_pct_swing() const { return pct(bot_swing, swing_urls); }
double ReportTables::LinkRow::human_pct_swing() const {
    return pct(swing_urls - bot_swing, swing_urls);
}
double ReportTables::LinkRow::bot_pct_safe() const { return pct(bot_safe, safe_urls); }
double ReportTables::LinkRow::human_pct_safe() const {
    return pct(safe_urls - bot_safe, safe_urls);
}

ReportTables report(std::span<const TweetRecord> records, const TagTable& tags,
                    const ExpansionTable& expansion, const BotClassification& bots,
                    const StateConfig& cfg) {
    ReportTables t;
    t.per_state.resize(cfg.states.size());
    for (std::size_t s = 0; s < cfg.states.size(); ++s) {
        t.per_state[s].state = cfg.states[s].name;
        t.per_state[s].kind = cfg.states[s].kind;
    }
    t.links[0].link_type = "all";
    t.links[1].link_type = "T";
    t.links[2].link_type = "N";
    t.bot_cut_low = bots.cut_low;
    t.bot_cut_high = bots.cut_high;
    t.scored_accounts = bots.scored;

    std::set<std::string> swing_users, safe_users, human_users, bot_users;

    for (const TweetRecord& rec : records) {
        StateMatch match = associate_state(rec.text, cfg);
        if (match.kind != StateMatch::Kind::unique)
            throw std::invalid_argument(
                "report expects records associated with exactly one state (tweet " +
                rec.tweet_id + ")");
        const auto& state = cfg.states[match.state_index];
        StateKind kind = state.kind;
        BotClass cls = bots.of(rec.author_id);

        t.total_tweets++;
        t.per_state[match.state_index].tweets++;
        auto& kind_row = (kind == StateKind::swing) ? t.swing : t.safe;
        kind_row.tweets++;
        (kind == StateKind::swing ? swing_users : safe_users).insert(rec.author_id);

        if (cls == BotClass::human) {
            t.human.tweets++;
            human_users.insert(rec.author_id);
        } else if (cls == BotClass::bot) {
            t.bot.tweets++;
            bot_users.insert(rec.author_id);
        }

        for (const std::string& url : rec.urls) {
            auto domain = extract_domain(url, expansion);
            if (!domain) {
                t.unparsable_urls++;
                continue;
            }
            ReputationTag tag = tag_domain(*domain, tags);
            t.total_urls++;
            t.per_state[match.state_index].urls++;
            kind_row.urls++;
            kind_row.by_tag[tag_index(tag)]++;

            if (cls == BotClass::human)
                t.human.urls++;
            else if (cls == BotClass::bot)
                t.bot.urls++;

            if (cls == BotClass::human || cls == BotClass::bot) {
                bool is_bot = (cls == BotClass::bot);
                bool is_swing = (kind == StateKind::swing);
                auto tally = [&](ReportTables::LinkRow& row) {
                    row.urls++;
                    if (is_swing) {
                        row.swing_urls++;
                        if (is_bot) row.bot_swing++;
                    } else {
                        row.safe_urls++;
                        if (is_bot) row.bot_safe++;
                    }
                    if (is_bot) row.bot_both++;
                };
                tally(t.links[0]);
                if (tag == ReputationTag::T) tally(t.links[1]);
                if (tag == ReputationTag::N) tally(t.links[2]);
            }
        }
    }

    t.swing.users = swing_users.size();
    t.safe.users = safe_users.size();
    t.human.users = human_users.size();
    t.bot.users = bot_users.size();
    return t;
}

std::array<std::size_t, 5> url_tag_histogram(std::span<const TweetRecord> records,
                                             const TagTable& tags,
                                             const ExpansionTable& expansion) {
    std::array<std::size_t, 5> hist{};
    for (const TweetRecord& rec : records)
        for (const std::string& url : rec.urls) {
            auto domain = extract_domain(url, expansion);
            if (!domain) continue;
            hist[tag_index(tag_domain(*domain, tags))]++;
        }
    return hist;
}

std::string format_pct(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", value);
    // snprintf honors the C locale set by the CLI; keep output stable anyway
    for (char& c : buf)
        if (c == ',') c = '.';
    return buf;
}

void render_report_text(const ReportTables& t, std::ostream& out) {
    out << "== Tweets and URLs by state ==\n";
    char line[160];
    std::snprintf(line, sizeof(line), "%-16s %-6s %12s %12s\n", "state", "kind", "tweets",
                  "urls");
    out << line;
    for (const auto& row : t.per_state) {
        std::snprintf(line, sizeof(line), "%-16s %-6s %12zu %12zu\n", row.state.c_str(),
                      std::string(to_string(row.kind)).c_str(), row.tweets, row.urls);
        out << line;
    }
    std::snprintf(line, sizeof(line), "%-16s %-6s %12zu %12zu\n", "total", "",
                  t.total_tweets, t.total_urls);
    out << line;

    out << "\n== Accounts, tweets and URLs by state kind ==\n";
    std::snprintf(line, sizeof(line), "%-6s %12s %12s %12s %8s %8s\n", "kind", "users",
                  "tweets", "urls", "T%", "N%");
    out << line;
    for (const auto* kr : {&t.swing, &t.safe}) {
        std::snprintf(line, sizeof(line), "%-6s %12zu %12zu %12zu %8s %8s\n",
                      kr == &t.swing ? "swing" : "safe", kr->users, kr->tweets, kr->urls,
                      format_pct(kr->tag_pct(ReputationTag::T)).c_str(),
                      format_pct(kr->tag_pct(ReputationTag::N)).c_str());
        out << line;
    }

    out << "\n== Classified accounts ==\n";
    std::snprintf(line, sizeof(line), "%-6s %12s %12s %12s\n", "class", "users", "tweets",
                  "urls");
    out << line;
    std::snprintf(line, sizeof(line), "%-6s %12zu %12zu %12zu\n", "human", t.human.users,
                  t.human.tweets, t.human.urls);
    out << line;
    std::snprintf(line, sizeof(line), "%-6s %12zu %12zu %12zu\n", "bot", t.bot.users,
                  t.bot.tweets, t.bot.urls);
    out << line;
    out << "bot traffic share: " << format_pct(t.bot_traffic_pct())
        << "%\nbot account share: " << format_pct(t.bot_account_pct()) << "%\n";
    out << "score cutoffs: human <= " << format_double(t.bot_cut_low)
        << ", bot >= " << format_double(t.bot_cut_high) << " (" << t.scored_accounts
        << " scored)\n";

    out << "\n== Link shares by reputability and state kind (classified accounts) ==\n";
    std::snprintf(line, sizeof(line), "%-5s %10s %8s %8s %9s %9s %9s %9s %9s %9s\n",
                  "type", "urls", "swing%", "safe%", "bot", "human", "bot_sw", "human_sw",
                  "bot_sf", "human_sf");
    out << line;
    for (const auto& row : t.links) {
        std::snprintf(line, sizeof(line),
                      "%-5s %10zu %8s %8s %9s %9s %9s %9s %9s %9s\n",
                      row.link_type.c_str(), row.urls, format_pct(row.swing_pct()).c_str(),
                      format_pct(row.safe_pct()).c_str(),
                      format_pct(row.bot_pct_both()).c_str(),
                      format_pct(row.human_pct_both()).c_str(),
                      format_pct(row.bot_pct_swing()).c_str(),
                      format_pct(row.human_pct_swing()).c_str(),
                      format_pct(row.bot_pct_safe()).c_str(),
                      format_pct(row.human_pct_safe()).c_str());
        out << line;
    }
    if (t.unparsable_urls > 0)
        out << "\nunparsable urls skipped: " << t.unparsable_urls << "\n";
}

void render_report_json(const ReportTables& t, std::ostream& out) {
    nlohmann::ordered_json j;
    j["per_state"] = nlohmann::ordered_json::array();
    for (const auto& row : t.per_state) {
        j["per_state"].push_back({{"state", row.state},
                                  {"kind", std::string(to_string(row.kind))},
                                  {"tweets", row.tweets},
                                  {"urls", row.urls}});
    }
    auto kind_json = [](const ReportTables::KindRow& kr) {
        nlohmann::ordered_json k;
        k["users"] = kr.users;
        k["tweets"] = kr.tweets;
        k["urls"] = kr.urls;
        for (ReputationTag tag : {ReputationTag::T, ReputationTag::N, ReputationTag::P,
                                  ReputationTag::S, ReputationTag::UNC})
            k[std::string(to_string(tag)) + "_urls"] =
                kr.by_tag[static_cast<std::size_t>(tag)];
        k["T_pct"] = format_pct(kr.tag_pct(ReputationTag::T));
        k["N_pct"] = format_pct(kr.tag_pct(ReputationTag::N));
        return k;
    };
    j["by_kind"]["swing"] = kind_json(t.swing);
    j["by_kind"]["safe"] = kind_json(t.safe);

    j["classified"]["human"] = {{"users", t.human.users},
                                {"tweets", t.human.tweets},
                                {"urls", t.human.urls}};
    j["classified"]["bot"] = {{"users", t.bot.users},
                              {"tweets", t.bot.tweets},
                              {"urls", t.bot.urls}};
    j["classified"]["bot_traffic_pct"] = format_pct(t.bot_traffic_pct());
    j["classified"]["bot_account_pct"] = format_pct(t.bot_account_pct());
    j["classified"]["cut_low"] = t.bot_cut_low;
    j["classified"]["cut_high"] = t.bot_cut_high;
    j["classified"]["scored_accounts"] = t.scored_accounts;

    j["links"] = nlohmann::ordered_json::array();
    for (const auto& row : t.links) {
        j["links"].push_back({{"type", row.link_type},
                              {"urls", row.urls},
                              {"swing_pct", format_pct(row.swing_pct())},
                              {"safe_pct", format_pct(row.safe_pct())},
                              {"bot_pct", format_pct(row.bot_pct_both())},
                              {"human_pct", format_pct(row.human_pct_both())},
                              {"bot_pct_swing", format_pct(row.bot_pct_swing())},
                              {"human_pct_swing", format_pct(row.human_pct_swing())},
                              {"bot_pct_safe", format_pct(row.bot_pct_safe())},
                              {"human_pct_safe", format_pct(row.human_pct_safe())}});
    }
    j["totals"] = {{"tweets", t.total_tweets},
                   {"urls", t.total_urls},
                   {"unparsable_urls", t.unparsable_urls}};
    out << j.dump(2) << '\n';
}

} // namespace debatenet
