#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

namespace debatenet {

/// Domain reputation tags. UNC is the default for anything not in the table.
enum class ReputationTag { T, N, P, S, UNC };

std::string_view to_string(ReputationTag tag);
std::optional<ReputationTag> parse_tag(std::string_view text);

/// Registrable domain of a host name per the bundled public-suffix snapshot
/// ("www.nytimes.com" -> "nytimes.com", "bbc.co.uk" -> "bbc.co.uk").
/// Hosts that are themselves a public suffix are returned unchanged.
std::string registrable_domain(std::string_view host);

using ExpansionTable = std::unordered_map<std::string, std::string>;
using TagTable = std::unordered_map<std::string, ReputationTag>;

/// Expands the URL through the shortener table (exact-match lookup), then
/// extracts the lowercased registrable domain of the host. Returns nullopt
/// for URLs with no parsable host.
std::optional<std::string> extract_domain(std::string_view url,
                                          const ExpansionTable& expansion);

/// Exact-match reputation lookup; absent domains are UNC.
ReputationTag tag_domain(std::string_view domain, const TagTable& table);

} // namespace debatenet
