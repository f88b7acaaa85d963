#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pmas/types.hpp"

namespace pmas {

struct ParsedPlan {
    std::vector<CandidatePath> paths; // schema-valid entries only
    std::string reasoning;
};

// Lenient plan parse: entries failing the per-path schema are dropped; an
// empty result is the caller's regeneration trigger.
ParsedPlan parse_plan_reply(const std::string& reply);

struct CoordinatorTurn {
    std::optional<int> selected_path;
    bool accepted = false; // true iff the reply carries an "ACCEPT path-N" token
};

CoordinatorTurn parse_coordinator_reply(const std::string& reply);

struct ParsedDecomposition {
    int selected_path = 0;
    std::vector<std::string> steps;
    std::string reasoning;
};

std::optional<ParsedDecomposition> parse_decompose_reply(const std::string& reply);

// Pseudocode must declare VARIABLES / CONTROL FLOW / RATIONALE sections.
bool pseudocode_schema_ok(const std::string& pseudocode);

struct ParsedCode {
    std::string source;
    std::string dialect;
    std::string reasoning;
};

// Extracts the first fenced code block; the fence tag is the dialect marker.
std::optional<ParsedCode> parse_code_reply(const std::string& reply);

// Final selection rule: highest self-evaluation score, ties to lowest path id.
int select_by_score(const std::vector<CandidatePath>& paths);

} // namespace pmas
