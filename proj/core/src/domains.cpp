#include "debatenet/domains.hpp"

#include "debatenet/text_io.hpp"

#include <algorithm>
#include <unordered_set>
#include <vector>

namespace debatenet {

namespace detail {
extern const char* const kPublicSuffixRules[];
} // namespace detail

std::string_view to_string(ReputationTag tag) {
    switch (tag) {
        case ReputationTag::T: return "T";
        case ReputationTag::N: return "N";
        case ReputationTag::P: return "P";
        case ReputationTag::S: return "S";
        case ReputationTag::UNC: return "UNC";
    }
    return "UNC";
}

std::optional<ReputationTag> parse_tag(std::string_view text) {
    if (text == "T") return ReputationTag::T;
    if (text == "N") return ReputationTag::N;
    if (text == "P") return ReputationTag::P;
    if (text == "S") return ReputationTag::S;
    if (text == "UNC") return ReputationTag::UNC;
    return std::nullopt;
}

namespace {

struct SuffixRules {
    std::unordered_set<std::string> plain;
    std::unordered_set<std::string> wildcard;  // "*.ck" stored as "ck"
    std::unordered_set<std::string> exception; // "!www.ck" stored as "www.ck"
};

const SuffixRules& suffix_rules() {
    static const SuffixRules rules = [] {
        SuffixRules r;
        for (const char* const* p = detail::kPublicSuffixRules; *p; ++p) {
            std::string_view rule(*p);
            if (rule.starts_with("!"))
                r.exception.emplace(rule.substr(1));
            else if (rule.starts_with("*."))
                r.wildcard.emplace(rule.substr(2));
            else
                r.plain.emplace(rule);
        }
        return r;
    }();
    return rules;
}

bool is_ip_literal(std::string_view host) {
    return !host.empty() &&
           host.find_first_not_of("0123456789.") == std::string_view::npos;
}

} // namespace

std::string registrable_domain(std::string_view host_in) {
    std::string host = to_lower_ascii(host_in);
    while (!host.empty() && host.back() == '.') host.pop_back();
    if (host.empty() || is_ip_literal(host)) return host;

    auto labels = split(host, '.');
    const SuffixRules& rules = suffix_rules();

    // longest matching rule wins; exceptions beat wildcards
    std::size_t suffix_labels = 1; // implicit "*" rule
    for (std::size_t take = 1; take <= labels.size(); ++take) {
        std::string candidate;
        for (std::size_t k = labels.size() - take; k < labels.size(); ++k) {
            if (!candidate.empty()) candidate.push_back('.');
            candidate += std::string(labels[k]);
        }
        if (rules.exception.contains(candidate)) {
            suffix_labels = take - 1;
            break;
        }
        if (rules.plain.contains(candidate)) suffix_labels = std::max(suffix_labels, take);
        if (take >= 2) {
            // wildcard "*.tld" matches candidates with one label under tld
            std::string parent = candidate.substr(candidate.find('.') + 1);
            if (take == 2 && rules.wildcard.contains(parent))
                suffix_labels = std::max(suffix_labels, take);
        }
    }
    if (suffix_labels >= labels.size()) return host; // host is itself a suffix

    std::size_t keep = suffix_labels + 1;
    std::string out;
    for (std::size_t k = labels.size() - keep; k < labels.size(); ++k) {
        if (!out.empty()) out.push_back('.');
        out += std::string(labels[k]);
    }
    return out;
}

namespace {

// host of an absolute URL; empty when unparsable
std::string parse_host(std::string_view url) {
    std::size_t scheme = url.find("://");
    std::string_view rest;
    if (scheme != std::string_view::npos) {
        rest = url.substr(scheme + 3);
    } else if (url.starts_with("//")) {
        rest = url.substr(2);
    } else {
        return {};
    }
    std::size_t end = rest.find_first_of("/?#");
    std::string_view authority = end == std::string_view::npos ? rest : rest.substr(0, end);
    std::size_t at = authority.rfind('@');
    if (at != std::string_view::npos) authority = authority.substr(at + 1);
    std::size_t colon = authority.rfind(':');
    if (colon != std::string_view::npos &&
        authority.find_first_not_of("0123456789", colon + 1) == std::string_view::npos)
        authority = authority.substr(0, colon);
    if (authority.empty()) return {};
    if (authority.find_first_of(" \t\"<>\\^`{}|") != std::string_view::npos) return {};
    return std::string(authority);
}

} // namespace

std::optional<std::string> extract_domain(std::string_view url,
                                          const ExpansionTable& expansion) {
    std::string expanded(url);
    // single-hop expansion through the shortener table
    if (auto it = expansion.find(expanded); it != expansion.end()) expanded = it->second;
    std::string host = parse_host(expanded);
    if (host.empty()) return std::nullopt;
    std::string domain = registrable_domain(host);
    if (domain.empty()) return std::nullopt;
    return domain;
}

ReputationTag tag_domain(std::string_view domain, const TagTable& table) {
    auto it = table.find(std::string(domain));
    if (it == table.end()) return ReputationTag::UNC;
    return it->second;
}

} // namespace debatenet
