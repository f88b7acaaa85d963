#include "pmas/memory.hpp"

namespace pmas {

void MemoryStore::record(const std::string& config_id, const Episode& episode) {
    auto& bucket = episodes_[{config_id, episode.role}];
    if (!bucket.empty() && episode.sequence <= bucket.back().sequence) {
        throw Error("sequence regression for (" + config_id + ", " + role_name(episode.role) +
                    "): " + std::to_string(episode.sequence) + " after " +
                    std::to_string(bucket.back().sequence));
    }
    bucket.push_back(episode);
    recorded_order_[config_id].push_back(episode);
}

std::vector<Episode> MemoryStore::recall(const std::string& config_id, AgentRole role,
                                         size_t limit) const {
    auto it = episodes_.find({config_id, role});
    if (it == episodes_.end() || limit == 0) return {};
    const auto& bucket = it->second;
    const size_t n = bucket.size() < limit ? bucket.size() : limit;
    return std::vector<Episode>(bucket.end() - static_cast<std::ptrdiff_t>(n), bucket.end());
}

std::uint64_t MemoryStore::next_sequence(const std::string& config_id, AgentRole role) const {
    auto it = episodes_.find({config_id, role});
    if (it == episodes_.end() || it->second.empty()) return 1;
    return it->second.back().sequence + 1;
}

std::vector<Episode> MemoryStore::all_for(const std::string& config_id) const {
    auto it = recorded_order_.find(config_id);
    return it == recorded_order_.end() ? std::vector<Episode>{} : it->second;
}

} // namespace pmas
