#include "pmas/parsing.hpp"

#include <regex>

#include "json.hpp"

using json = nlohmann::json;

namespace pmas {

ParsedPlan parse_plan_reply(const std::string& reply) {
    ParsedPlan plan;
    json doc;
    try {
        doc = json::parse(reply);
    } catch (const json::exception&) {
        return plan;
    }
    plan.reasoning = doc.value("reasoning", "");
    if (!doc.contains("paths") || !doc["paths"].is_array()) return plan;
    for (const auto& p : doc["paths"]) {
        try {
            CandidatePath path;
            path.id = p.at("id").get<int>();
            path.summary = p.at("summary").get<std::string>();
            path.steps = p.at("steps").get<std::vector<std::string>>();
            path.self_eval = p.at("self_eval").get<double>();
            if (path.steps.empty()) continue;
            if (!(path.self_eval >= 0.0 && path.self_eval <= 1.0)) continue;
            plan.paths.push_back(std::move(path));
        } catch (const json::exception&) {
            continue;
        }
    }
    return plan;
}

CoordinatorTurn parse_coordinator_reply(const std::string& reply) {
    CoordinatorTurn turn;
    static const std::regex accept_re(R"(ACCEPT\s+path-(\d+))");
    static const std::regex select_re(R"(SELECT\s+path-(\d+))");
    std::smatch m;
    if (std::regex_search(reply, m, accept_re)) {
        turn.accepted = true;
        turn.selected_path = std::stoi(m[1].str());
    } else if (std::regex_search(reply, m, select_re)) {
        turn.selected_path = std::stoi(m[1].str());
    }
    return turn;
}

std::optional<ParsedDecomposition> parse_decompose_reply(const std::string& reply) {
    json doc;
    try {
        doc = json::parse(reply);
    } catch (const json::exception&) {
        return std::nullopt;
    }
    ParsedDecomposition d;
    try {
        d.selected_path = doc.at("selected_path").get<int>();
        d.steps = doc.at("steps").get<std::vector<std::string>>();
        d.reasoning = doc.value("reasoning", "");
    } catch (const json::exception&) {
        return std::nullopt;
    }
    if (d.steps.empty()) return std::nullopt;
    return d;
}

bool pseudocode_schema_ok(const std::string& pseudocode) {
    return pseudocode.find("VARIABLES:") != std::string::npos &&
           pseudocode.find("CONTROL FLOW:") != std::string::npos &&
           pseudocode.find("RATIONALE:") != std::string::npos;
}

std::optional<ParsedCode> parse_code_reply(const std::string& reply) {
    const std::string fence = "```";
    size_t open = reply.find(fence);
    if (open == std::string::npos) return std::nullopt;
    size_t tag_end = reply.find('\n', open + fence.size());
    if (tag_end == std::string::npos) return std::nullopt;
    size_t close = reply.find(fence, tag_end + 1);
    if (close == std::string::npos) return std::nullopt;
    ParsedCode code;
    code.dialect = trim(reply.substr(open + fence.size(), tag_end - open - fence.size()));
    if (code.dialect.empty()) code.dialect = "text";
    code.source = reply.substr(tag_end + 1, close - tag_end - 1);
    if (trim(code.source).empty()) return std::nullopt;
    // A leading "Rationale:" line before the fence is the agent's reasoning.
    for (const auto& line : split_lines(reply.substr(0, open))) {
        if (starts_with(line, "Rationale:")) code.reasoning = trim(line.substr(10));
    }
    return code;
}

int select_by_score(const std::vector<CandidatePath>& paths) {
    if (paths.empty()) throw Error("cannot select from an empty path set");
    const CandidatePath* best = &paths.front();
    for (const auto& p : paths) {
        if (p.self_eval > best->self_eval ||
            (p.self_eval == best->self_eval && p.id < best->id)) {
            best = &p;
        }
    }
    return best->id;
}

} // namespace pmas
