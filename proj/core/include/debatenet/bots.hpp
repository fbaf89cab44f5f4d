#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace debatenet {

enum class BotClass { human, bot, unclassified };
std::string_view to_string(BotClass c);

/// Fixed score cutoffs replacing the empirical deciles: human iff
/// score <= low, bot iff score >= high.
struct BotThresholds {
    double low;
    double high;
};

struct BotClassification {
    std::unordered_map<std::string, BotClass> classes;
    double cut_low = 0.0;   // largest score classified human
    double cut_high = 1.0;  // smallest score classified bot
    std::size_t scored = 0;
    std::size_t humans = 0, bots = 0;

    BotClass of(const std::string& account) const;
};

/// Decile rule over scored accounts: the lowest decile is human, the highest
/// is bot, everything else (including unscored accounts) unclassified. Scores
/// tied across a decile boundary fall to unclassified. Throws
/// std::invalid_argument with fewer than 10 scored accounts unless fixed
/// thresholds are supplied.
BotClassification classify_bots(const std::vector<std::pair<std::string, double>>& scores,
                                std::optional<BotThresholds> thresholds = std::nullopt);

} // namespace debatenet
