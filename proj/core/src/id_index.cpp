#include "debatenet/id_index.hpp"

namespace debatenet {

std::uint32_t IdIndex::add(std::string_view id) {
    auto it = index_.find(std::string(id));
    if (it != index_.end()) return it->second;
    auto idx = static_cast<std::uint32_t>(ids_.size());
    ids_.emplace_back(id);
    index_.emplace(ids_.back(), idx);
    return idx;
}

std::optional<std::uint32_t> IdIndex::find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

} // namespace debatenet
