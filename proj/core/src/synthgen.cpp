#include "debatenet/synthgen.hpp"

#include "debatenet/errors.hpp"
#include "debatenet/rng.hpp"
#include "debatenet/text_io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace debatenet {

PlantedBipartite gen_planted_bipartite(const PlantedBipartiteSpec& spec) {
    if (spec.blocks.empty())
        throw std::invalid_argument("planted bipartite needs at least one block");
    for (const auto& b : spec.blocks)
        if (b.top_size == 0 || b.bottom_size == 0)
            throw std::invalid_argument("planted block sizes must be positive");
    for (double p : {spec.p_in, spec.p_out})
        if (p < 0.0 || p > 1.0)
            throw std::invalid_argument("link probabilities must lie in [0, 1]");

    PlantedBipartite out;
    for (std::uint32_t b = 0; b < spec.blocks.size(); ++b) {
        out.top_block.insert(out.top_block.end(), spec.blocks[b].top_size, b);
        out.bottom_block.insert(out.bottom_block.end(), spec.blocks[b].bottom_size, b);
    }
    const auto n_top = static_cast<std::uint32_t>(out.top_block.size());
    const auto n_bottom = static_cast<std::uint32_t>(out.bottom_block.size());

    SeededRng rng(spec.rng_seed);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t i = 0; i < n_top; ++i)
        for (std::uint32_t a = 0; a < n_bottom; ++a) {
            double p = out.top_block[i] == out.bottom_block[a] ? spec.p_in : spec.p_out;
            if (rng.bernoulli(p)) pairs.emplace_back(i, a);
        }
    out.graph = BipartiteGraph::from_pairs(n_top, n_bottom, std::move(pairs));
    return out;
}

namespace {

struct CampPools {
    std::string name;
    bool political = false;
    std::vector<std::uint32_t> verified; // indices into truth.users
    std::vector<std::uint32_t> bots, humans, mids;
};

void validate(const ScenarioSpec& spec) {
    auto in01 = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (spec.n_tweets == 0) throw std::invalid_argument("n_tweets must be positive");
    if (!in01(spec.swing_share) || !in01(spec.noise_share) || !in01(spec.url_rate) ||
        !in01(spec.cross_camp_retweet) || !in01(spec.bot_pool_share) ||
        !in01(spec.human_pool_share) || !in01(spec.bot_share_n_links) ||
        !in01(spec.bot_share_t_links) || !in01(spec.verified_tweet_share) ||
        !in01(spec.unverified_original_share))
        throw std::invalid_argument("scenario shares must lie in [0, 1]");
    if (spec.bot_pool_share + spec.human_pool_share > 1.0)
        throw std::invalid_argument("bot and human pool shares exceed the population");
    for (const auto& mix : {spec.swing_mix, spec.safe_mix}) {
        if (std::abs(mix.sum() - 1.0) > 1e-9)
            throw std::invalid_argument("reputation mix does not sum to 1");
        for (double v : {mix.t, mix.n, mix.p, mix.s, mix.unc})
            if (!in01(v)) throw std::invalid_argument("reputation mix entry outside [0, 1]");
    }
    if (spec.political_camps.empty())
        throw std::invalid_argument("at least one political camp required");
    if (spec.bot_activity <= 0.0)
        throw std::invalid_argument("bot activity multiplier must be positive");
    if (spec.verified_per_camp == 0)
        throw std::invalid_argument("each camp needs at least one verified user");
    bool has_swing = false, has_safe = false;
    for (const auto& s : spec.states.states)
        (s.kind == StateKind::swing ? has_swing : has_safe) = true;
    if ((spec.swing_share > 0.0 && !has_swing) || (spec.swing_share < 1.0 && !has_safe))
        throw std::invalid_argument("state config lacks a required state kind");
}

std::string title_case(std::string_view name) {
    std::string out(name);
    bool start = true;
    for (char& c : out) {
        if (start && c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
        start = (c == ' ');
    }
    return out;
}

int tag_to_index(ReputationTag t) { return static_cast<int>(t); }

} // namespace

ScenarioOutput gen_synthetic_dataset(const ScenarioSpec& spec,
                                     const std::filesystem::path& output_dir) {
    validate(spec);
    std::filesystem::create_directories(output_dir);

    SeededRng rng(spec.rng_seed);
    ScenarioOutput out;
    ScenarioGroundTruth& truth = out.truth;
    truth.political_camps = spec.political_camps;
    truth.noise_camp = spec.noise_camp;

    const std::size_t n_political = spec.political_camps.size();
    auto camp_share = [&](std::size_t camp_idx) {
        // camps are listed political first, noise last
        if (camp_idx == n_political) return spec.noise_share;
        return (1.0 - spec.noise_share) / static_cast<double>(n_political);
    };

    // --- users -------------------------------------------------------------
    std::vector<CampPools> camps(n_political + 1);
    for (std::size_t c = 0; c < n_political; ++c) {
        camps[c].name = spec.political_camps[c];
        camps[c].political = true;
    }
    camps[n_political].name = spec.noise_camp;

    auto add_user = [&](const std::string& id, const std::string& camp, bool verified,
                        const std::string& cls, double score) {
        truth.users.push_back({id, camp, verified, cls, score});
        return static_cast<std::uint32_t>(truth.users.size() - 1);
    };

    for (std::size_t c = 0; c < camps.size(); ++c) {
        CampPools& pool = camps[c];
        for (std::uint32_t k = 0; k < spec.verified_per_camp; ++k) {
            double score = 0.10 + 0.30 * rng.uniform01();
            pool.verified.push_back(add_user("v_" + pool.name + "_" + std::to_string(k),
                                             pool.name, true, "verified", score));
        }
        auto n_unverified = static_cast<std::uint32_t>(
            std::llround(camp_share(c) * static_cast<double>(spec.unverified_users)));
        if (camp_share(c) > 0.0 && n_unverified == 0) n_unverified = 1;
        double classified_base =
            static_cast<double>(n_unverified) + static_cast<double>(spec.verified_per_camp);
        auto n_bots = static_cast<std::uint32_t>(
            std::llround(spec.bot_pool_share * classified_base));
        auto n_humans = static_cast<std::uint32_t>(
            std::llround(spec.human_pool_share * classified_base));
        while (n_bots + n_humans > n_unverified) {
            if (n_bots > 0) --n_bots;
            if (n_humans > 0 && n_bots + n_humans > n_unverified) --n_humans;
            if (n_bots == 0 && n_humans == 0) break;
        }
        for (std::uint32_t k = 0; k < n_unverified; ++k) {
            std::string cls;
            double score;
            if (k < n_bots) {
                cls = "bot";
                score = 0.46 + 0.539 * rng.uniform01();
            } else if (k < n_bots + n_humans) {
                cls = "human";
                score = 0.039 * rng.uniform01();
            } else {
                cls = "mid";
                score = 0.05 + 0.39 * rng.uniform01();
            }
            std::uint32_t idx = add_user("u_" + pool.name + "_" + std::to_string(k),
                                         pool.name, false, cls, score);
            if (cls == "bot")
                pool.bots.push_back(idx);
            else if (cls == "human")
                pool.humans.push_back(idx);
            else
                pool.mids.push_back(idx);
        }
    }

    // --- reputation domains and tag table -----------------------------------
    constexpr int kDomainsPerTag = 20;
    const char* tag_prefix[5] = {"t-source-", "n-source-", "p-site-", "s-site-",
                                 "unc-site-"};
    {
        std::ostringstream tags;
        tags << "domain,tag\n";
        for (ReputationTag tag : {ReputationTag::T, ReputationTag::N, ReputationTag::P,
                                  ReputationTag::S}) {
            for (int k = 0; k < kDomainsPerTag; ++k)
                tags << tag_prefix[tag_to_index(tag)] << k << ".com,"
                     << to_string(tag) << "\n";
        }
        out.tag_table_path = output_dir / "tags.csv";
        write_file(out.tag_table_path, tags.str());
    }

    // --- states by kind ------------------------------------------------------
    std::vector<std::size_t> swing_states, safe_states;
    for (std::size_t s = 0; s < spec.states.states.size(); ++s)
        (spec.states.states[s].kind == StateKind::swing ? swing_states : safe_states)
            .push_back(s);

    const std::vector<std::string> templates = {
        "% rally draws a huge crowd in $ tonight",
        "latest $ poll numbers look strong for %",
        "voters in $ line up early as % visits the state",
        "% campaign doubles down on $ ads this week",
        "what the $ turnout means for %",
    };

    // --- tweet stream --------------------------------------------------------
    const double w_bot = spec.bot_pool_share * spec.bot_activity;
    const double w_human = spec.human_pool_share;
    const double w_mid = 1.0 - spec.bot_pool_share - spec.human_pool_share;
    const double q_classified =
        (w_bot + w_human) > 0.0 ? (w_bot + w_human) / (w_bot + w_human + w_mid) : 0.0;
    const double beta_base = (w_bot + w_human) > 0.0 ? w_bot / (w_bot + w_human) : 0.0;

    out.records_path = output_dir / "tweets.jsonl";
    std::ofstream records(out.records_path, std::ios::binary);
    if (!records) throw io_error("cannot write " + out.records_path.string());

    std::ostringstream shorteners;
    shorteners << "short_url,long_url\n";
    std::size_t short_counter = 0;

    for (std::size_t tix = 0; tix < spec.n_tweets; ++tix) {
        // camp
        std::size_t camp_idx;
        if (rng.bernoulli(spec.noise_share))
            camp_idx = n_political;
        else
            camp_idx = static_cast<std::size_t>(rng.below(n_political));
        CampPools& camp = camps[camp_idx];
        bool is_noise = !camp.political;

        // state
        bool swing = rng.bernoulli(spec.swing_share);
        if (swing && swing_states.empty()) swing = false;
        if (!swing && safe_states.empty()) swing = true;
        const auto& state_list = swing ? swing_states : safe_states;
        std::size_t state_idx = state_list[rng.below(state_list.size())];
        const auto& state = spec.states.states[state_idx];

        // url and tag
        bool has_url = rng.bernoulli(spec.url_rate);
        ReputationTag tag = ReputationTag::UNC;
        if (has_url) {
            const auto& mix = swing ? spec.swing_mix : spec.safe_mix;
            double u = rng.uniform01();
            if (u < mix.t)
                tag = ReputationTag::T;
            else if (u < mix.t + mix.n)
                tag = ReputationTag::N;
            else if (u < mix.t + mix.n + mix.p)
                tag = ReputationTag::P;
            else if (u < mix.t + mix.n + mix.p + mix.s)
                tag = ReputationTag::S;
            else
                tag = ReputationTag::UNC;
        }

        // author class and author
        std::uint32_t author;
        std::string author_class;
        if (rng.bernoulli(spec.verified_tweet_share)) {
            author = camp.verified[rng.below(camp.verified.size())];
            author_class = "verified";
        } else {
            double beta = beta_base;
            if (has_url && tag == ReputationTag::N) beta = spec.bot_share_n_links;
            if (has_url && tag == ReputationTag::T) beta = spec.bot_share_t_links;
            bool classified = rng.bernoulli(q_classified);
            bool as_bot = rng.bernoulli(beta); // drawn unconditionally, used if classified
            const std::vector<std::uint32_t>* pool = &camp.mids;
            author_class = "mid";
            if (classified) {
                if (as_bot && !camp.bots.empty()) {
                    pool = &camp.bots;
                    author_class = "bot";
                } else if (!as_bot && !camp.humans.empty()) {
                    pool = &camp.humans;
                    author_class = "human";
                }
            }
            if (pool->empty()) pool = &camp.mids;
            if (pool->empty()) {
                author = camp.verified[rng.below(camp.verified.size())];
                author_class = "verified";
            } else {
                author = (*pool)[rng.below(pool->size())];
            }
        }

        // retweet target
        std::optional<std::uint32_t> retweeted;
        if (author_class != "verified" &&
            !rng.bernoulli(spec.unverified_original_share)) {
            CampPools* target = &camp;
            if (!is_noise && n_political >= 2 && rng.bernoulli(spec.cross_camp_retweet)) {
                std::size_t other = rng.below(n_political - 1);
                if (other >= camp_idx) ++other;
                target = &camps[other];
            }
            retweeted = target->verified[rng.below(target->verified.size())];
        }

        // text: template with state and candidate spliced in
        const std::string& tpl = templates[rng.below(templates.size())];
        const std::string& candidate =
            spec.states.candidates.empty()
                ? std::string("candidate")
                : spec.states.candidates[rng.below(spec.states.candidates.size())];
        std::string text;
        for (char ch : tpl) {
            if (ch == '$')
                text += title_case(state.name);
            else if (ch == '%')
                text += title_case(candidate);
            else
                text.push_back(ch);
        }

        TweetRecord rec;
        rec.tweet_id = "t" + std::to_string(tix);
        rec.author_id = truth.users[author].id;
        rec.author_verified = truth.users[author].verified;
        if (retweeted) rec.retweeted_author_id = truth.users[*retweeted].id;
        rec.lang = "en";
        rec.text = text;
        if (has_url) {
            std::string url = "https://" +
                              std::string(tag_prefix[tag_to_index(tag)]) +
                              std::to_string(rng.below(kDomainsPerTag)) +
                              ".com/article/" + std::to_string(tix);
            if (rng.bernoulli(0.3)) {
                std::string short_url = "https://sho.rt/" + std::to_string(short_counter++);
                shorteners << short_url << ',' << url << '\n';
                url = short_url;
            }
            rec.urls.push_back(url);
        }
        rec.bot_score = truth.users[author].bot_score;
        rec.timestamp = 1603756800 + static_cast<std::int64_t>(tix) * 13;

        records << to_jsonl(rec) << '\n';

        // realized tallies
        truth.n_tweets++;
        if (swing) truth.swing_tweets++;
        if (is_noise) truth.noise_tweets++;
        if (has_url) {
            truth.url_count++;
            (swing ? truth.swing_tag_counts
                   : truth.safe_tag_counts)[static_cast<std::size_t>(tag_to_index(tag))]++;
            if (author_class == "bot" || author_class == "human") {
                bool is_bot = author_class == "bot";
                if (tag == ReputationTag::N) {
                    truth.n_links_classified++;
                    if (is_bot) truth.n_links_bot++;
                }
                if (tag == ReputationTag::T) {
                    truth.t_links_classified++;
                    if (is_bot) truth.t_links_bot++;
                }
            }
        }
    }
    records.flush();
    if (!records) throw io_error("write failed: " + out.records_path.string());

    out.shorteners_path = output_dir / "shorteners.csv";
    write_file(out.shorteners_path, shorteners.str());

    // --- sidecar -------------------------------------------------------------
    nlohmann::ordered_json side;
    side["spec"] = {{"n_tweets", spec.n_tweets},
                    {"swing_share", spec.swing_share},
                    {"noise_share", spec.noise_share},
                    {"url_rate", spec.url_rate},
                    {"bot_pool_share", spec.bot_pool_share},
                    {"human_pool_share", spec.human_pool_share},
                    {"bot_activity", spec.bot_activity},
                    {"bot_share_n_links", spec.bot_share_n_links},
                    {"bot_share_t_links", spec.bot_share_t_links},
                    {"verified_per_camp", spec.verified_per_camp},
                    {"unverified_users", spec.unverified_users},
                    {"cross_camp_retweet", spec.cross_camp_retweet},
                    {"verified_tweet_share", spec.verified_tweet_share},
                    {"unverified_original_share", spec.unverified_original_share},
                    {"rng_seed", spec.rng_seed},
                    {"political_camps", spec.political_camps},
                    {"noise_camp", spec.noise_camp}};
    side["spec"]["swing_mix"] = {{"T", spec.swing_mix.t},
                                 {"N", spec.swing_mix.n},
                                 {"P", spec.swing_mix.p},
                                 {"S", spec.swing_mix.s},
                                 {"UNC", spec.swing_mix.unc}};
    side["spec"]["safe_mix"] = {{"T", spec.safe_mix.t},
                                {"N", spec.safe_mix.n},
                                {"P", spec.safe_mix.p},
                                {"S", spec.safe_mix.s},
                                {"UNC", spec.safe_mix.unc}};
    side["realized"] = {{"n_tweets", truth.n_tweets},
                        {"swing_tweets", truth.swing_tweets},
                        {"noise_tweets", truth.noise_tweets},
                        {"url_count", truth.url_count},
                        {"n_links_classified", truth.n_links_classified},
                        {"n_links_bot", truth.n_links_bot},
                        {"t_links_classified", truth.t_links_classified},
                        {"t_links_bot", truth.t_links_bot}};
    const char* tag_names[5] = {"T", "N", "P", "S", "UNC"};
    for (int k = 0; k < 5; ++k) {
        side["realized"]["swing_tag_counts"][tag_names[k]] = truth.swing_tag_counts[k];
        side["realized"]["safe_tag_counts"][tag_names[k]] = truth.safe_tag_counts[k];
    }
    side["users"] = nlohmann::ordered_json::array();
    for (const auto& u : truth.users)
        side["users"].push_back({{"id", u.id},
                                 {"camp", u.camp},
                                 {"verified", u.verified},
                                 {"class", u.planted_class},
                                 {"bot_score", u.bot_score}});

    out.sidecar_path = output_dir / "ground_truth.json";
    write_file(out.sidecar_path, side.dump(2) + "\n");
    return out;
}

namespace {

template <typename T>
void maybe(const nlohmann::json& j, const char* key, T& target) {
    if (j.contains(key)) target = j.at(key).get<T>();
}

ScenarioSpec::TagMix mix_from_json(const nlohmann::json& j) {
    ScenarioSpec::TagMix mix{};
    mix.t = j.at("T").get<double>();
    mix.n = j.at("N").get<double>();
    mix.p = j.at("P").get<double>();
    mix.s = j.at("S").get<double>();
    mix.unc = j.at("UNC").get<double>();
    return mix;
}

} // namespace

ScenarioSpec scenario_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw format_error(std::string("bad scenario json: ") + e.what());
    }
    ScenarioSpec spec;
    maybe(j, "n_tweets", spec.n_tweets);
    maybe(j, "swing_share", spec.swing_share);
    if (j.contains("swing_mix")) spec.swing_mix = mix_from_json(j["swing_mix"]);
    if (j.contains("safe_mix")) spec.safe_mix = mix_from_json(j["safe_mix"]);
    maybe(j, "url_rate", spec.url_rate);
    maybe(j, "political_camps", spec.political_camps);
    maybe(j, "noise_camp", spec.noise_camp);
    maybe(j, "noise_share", spec.noise_share);
    maybe(j, "verified_per_camp", spec.verified_per_camp);
    maybe(j, "unverified_users", spec.unverified_users);
    maybe(j, "cross_camp_retweet", spec.cross_camp_retweet);
    maybe(j, "bot_pool_share", spec.bot_pool_share);
    maybe(j, "human_pool_share", spec.human_pool_share);
    maybe(j, "bot_activity", spec.bot_activity);
    maybe(j, "bot_share_n_links", spec.bot_share_n_links);
    maybe(j, "bot_share_t_links", spec.bot_share_t_links);
    maybe(j, "verified_tweet_share", spec.verified_tweet_share);
    maybe(j, "unverified_original_share", spec.unverified_original_share);
    maybe(j, "rng_seed", spec.rng_seed);
    if (j.contains("states")) {
        spec.states.states.clear();
        for (const auto& s : j["states"]) {
            StateConfig::State st;
            st.name = to_lower_ascii(s.at("name").get<std::string>());
            std::string kind = s.at("kind").get<std::string>();
            if (kind == "swing")
                st.kind = StateKind::swing;
            else if (kind == "safe")
                st.kind = StateKind::safe;
            else
                throw format_error("state kind must be swing or safe");
            spec.states.states.push_back(std::move(st));
        }
    }
    if (j.contains("candidates"))
        spec.states.candidates = j["candidates"].get<std::vector<std::string>>();
    return spec;
}

PlantedBipartiteSpec planted_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw format_error(std::string("bad planted-bipartite json: ") + e.what());
    }
    PlantedBipartiteSpec spec;
    if (j.contains("blocks"))
        for (const auto& b : j["blocks"])
            spec.blocks.push_back({b.at(0).get<std::uint32_t>(), b.at(1).get<std::uint32_t>()});
    maybe(j, "p_in", spec.p_in);
    maybe(j, "p_out", spec.p_out);
    maybe(j, "rng_seed", spec.rng_seed);
    return spec;
}

} // namespace debatenet
