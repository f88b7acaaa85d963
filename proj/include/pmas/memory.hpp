#pragma once

#include <map>
#include <string>
#include <vector>

#include "pmas/types.hpp"

namespace pmas {

// Append-only per-agent trajectory memory. Episodes are keyed by
// (config_id, role) and their sequence numbers must be strictly increasing
// within that key; memory of one config_id never leaks into another.
class MemoryStore {
public:
    void record(const std::string& config_id, const Episode& episode);

    // Most recent `limit` episodes for (config_id, role), oldest-first.
    std::vector<Episode> recall(const std::string& config_id, AgentRole role, size_t limit) const;

    // Next valid sequence number for (config_id, role).
    std::uint64_t next_sequence(const std::string& config_id, AgentRole role) const;

    // All episodes for one config, in recorded order (for trajectory export).
    std::vector<Episode> all_for(const std::string& config_id) const;

private:
    using Key = std::pair<std::string, AgentRole>;
    std::map<Key, std::vector<Episode>> episodes_;
    std::map<std::string, std::vector<Episode>> recorded_order_;
};

} // namespace pmas
