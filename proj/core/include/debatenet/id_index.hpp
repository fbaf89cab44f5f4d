#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace debatenet {

/// Bijection between opaque string identifiers and dense indices [0, n),
/// assigned in first-seen order.
class IdIndex {
public:
    /// Returns the existing index for `id`, or assigns the next free one.
    std::uint32_t add(std::string_view id);

    std::optional<std::uint32_t> find(std::string_view id) const;

    const std::string& id_of(std::uint32_t index) const { return ids_.at(index); }

    std::uint32_t size() const { return static_cast<std::uint32_t>(ids_.size()); }

    const std::vector<std::string>& ids() const { return ids_; }

private:
    std::vector<std::string> ids_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

} // namespace debatenet
