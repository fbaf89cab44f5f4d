#include "debatenet/bots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace debatenet {

std::string_view to_string(BotClass c) {
    switch (c) {
        case BotClass::human: return "human";
        case BotClass::bot: return "bot";
        case BotClass::unclassified: return "unclassified";
    }
    return "unclassified";
}

BotClass BotClassification::of(const std::string& account) const {
    auto it = classes.find(account);
    return it == classes.end() ? BotClass::unclassified : it->second;
}

BotClassification classify_bots(const std::vector<std::pair<std::string, double>>& scores,
                                std::optional<BotThresholds> thresholds) {
    for (const auto& [account, s] : scores)
        if (s < 0.0 || s > 1.0)
            throw std::invalid_argument("bot score outside [0, 1] for account " + account);

    BotClassification out;
    out.scored = scores.size();

    double lo, hi;
    if (thresholds) {
        if (thresholds->low > thresholds->high)
            throw std::invalid_argument("bot thresholds: low exceeds high");
        lo = thresholds->low;
        hi = thresholds->high;
    } else {
        const std::size_t n = scores.size();
        if (n < 10)
            throw std::invalid_argument("decile classification needs >= 10 scored accounts");
        std::vector<double> sorted;
        sorted.reserve(n);
        for (const auto& [account, s] : scores) sorted.push_back(s);
        std::sort(sorted.begin(), sorted.end());
        const std::size_t decile = n / 10;
        // a score value tied across a decile boundary falls to unclassified;
        // nudging the cutoff excludes exactly the tied value
        lo = sorted[decile - 1];
        if (sorted[decile] == lo)
            lo = std::nextafter(lo, -std::numeric_limits<double>::infinity());
        hi = sorted[n - decile];
        if (sorted[n - decile - 1] == hi)
            hi = std::nextafter(hi, std::numeric_limits<double>::infinity());
    }
    out.cut_low = lo;
    out.cut_high = hi;

    for (const auto& [account, s] : scores) {
        BotClass c = BotClass::unclassified;
        if (s <= lo)
            c = BotClass::human;
        else if (s >= hi)
            c = BotClass::bot;
        if (c == BotClass::human) out.humans++;
        if (c == BotClass::bot) out.bots++;
        out.classes.emplace(account, c);
    }
    return out;
}

} // namespace debatenet
