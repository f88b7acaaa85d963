#include "pmas/types.hpp"

#include <algorithm>

namespace pmas {

std::string role_name(AgentRole role) {
    switch (role) {
        case AgentRole::Planner: return "Planner";
        case AgentRole::Coordinator: return "Coordinator";
        case AgentRole::ResourceAllocator: return "ResourceAllocator";
        case AgentRole::CodeAgent: return "CodeAgent";
        case AgentRole::Analyser: return "Analyser";
    }
    throw Error("invalid AgentRole");
}

AgentRole role_from_name(const std::string& name) {
    for (AgentRole r : kAllRoles) {
        if (role_name(r) == name) return r;
    }
    throw ConfigError("unknown agent role: " + name);
}

Score::Score(double value, Scale scale) : value_(value), scale_(scale) {
    const double hi = scale == Scale::Unit ? 1.0 : 100.0;
    if (!(value >= 0.0 && value <= hi)) {
        throw Error("score out of range for scale: " + std::to_string(value));
    }
}

std::string dimension_name(Dimension d) {
    switch (d) {
        case Dimension::Structure: return "structure";
        case Dimension::Runtime: return "runtime";
        case Dimension::Policy: return "policy";
        case Dimension::Formal: return "formal";
    }
    throw Error("invalid Dimension");
}

double ValidationReport::score(Dimension d) const {
    switch (d) {
        case Dimension::Structure: return structure;
        case Dimension::Runtime: return runtime;
        case Dimension::Policy: return policy;
        case Dimension::Formal: return formal;
    }
    throw Error("invalid Dimension");
}

ValidationResult validate_task_spec(const TaskSpec& spec) {
    ValidationResult result;
    if (spec.task_id != "Q1" && spec.task_id != "Q2") {
        result.violations.push_back("unknown task_id: " + spec.task_id);
        return result;
    }
    std::vector<std::string> required = {"min_rate_mbps",   "rsrp_floor_dbm", "util_target_low",
                                         "util_target_high", "util_max",       "demand_margin"};
    required.push_back(spec.task_id == "Q1" ? "min_active_prbs" : "handover_cost_prbs");
    for (const auto& key : required) {
        if (!spec.constraints.count(key)) {
            result.violations.push_back("missing parameter: " + key);
        }
    }
    auto get = [&](const std::string& k) -> std::optional<double> {
        auto it = spec.constraints.find(k);
        if (it == spec.constraints.end()) return std::nullopt;
        return it->second;
    };
    auto lo = get("util_target_low");
    auto hi = get("util_target_high");
    auto mx = get("util_max");
    if (lo && hi && mx && !(*lo < *hi && *hi <= *mx)) {
        result.violations.push_back("inverted bounds: require util_target_low < util_target_high <= util_max");
    }
    if (spec.prompt_text.empty()) {
        result.violations.push_back("empty prompt_text");
    }
    return result;
}

bool payload_matches_role(const AgentOutput& output) {
    switch (output.role) {
        case AgentRole::Planner: return std::holds_alternative<PlanPayload>(output.payload);
        case AgentRole::Coordinator: return std::holds_alternative<CoordinationPayload>(output.payload);
        case AgentRole::ResourceAllocator: return std::holds_alternative<PseudocodePayload>(output.payload);
        case AgentRole::CodeAgent: return std::holds_alternative<CodePayload>(output.payload);
        case AgentRole::Analyser: return std::holds_alternative<AnalysisPayload>(output.payload);
    }
    return false;
}

std::string status_name(TerminalStatus s) {
    switch (s) {
        case TerminalStatus::Converged: return "converged";
        case TerminalStatus::IterationLimit: return "iteration-limit";
        case TerminalStatus::Error: return "error";
    }
    throw Error("invalid TerminalStatus");
}

TerminalStatus status_from_name(const std::string& name) {
    if (name == "converged") return TerminalStatus::Converged;
    if (name == "iteration-limit") return TerminalStatus::IterationLimit;
    if (name == "error") return TerminalStatus::Error;
    throw ConfigError("unknown terminal status: " + name);
}

ValidationResult validate_trajectory(const Trajectory& t) {
    ValidationResult result;
    // Bounds per run.
    std::map<int, int> rounds_by_run;
    for (const auto& turn : t.negotiation) {
        if (turn.speaker == AgentRole::Coordinator) {
            rounds_by_run[turn.run_index] = std::max(rounds_by_run[turn.run_index], turn.round);
        }
    }
    for (const auto& [run, rounds] : rounds_by_run) {
        if (rounds > 3) {
            result.violations.push_back("run " + std::to_string(run) + ": negotiation rounds " +
                                        std::to_string(rounds) + " exceed 3");
        }
    }
    std::map<int, int> refinements_by_run;
    for (const auto& ev : t.refinements) {
        refinements_by_run[ev.run_index]++;
        if (ev.target != AgentRole::ResourceAllocator && ev.target != AgentRole::CodeAgent) {
            result.violations.push_back("refinement routed to invalid target");
        }
    }
    for (const auto& [run, n] : refinements_by_run) {
        if (n > 3) {
            result.violations.push_back("run " + std::to_string(run) + ": refinement iterations " +
                                        std::to_string(n) + " exceed 3");
        }
    }
    // Invocation ordering per run: first Planner < first Coordinator,
    // first Allocator < first CodeAgent < first Analyser.
    std::map<int, std::map<AgentRole, size_t>> first_index;
    for (size_t i = 0; i < t.invocations.size(); ++i) {
        const auto& inv = t.invocations[i];
        auto& m = first_index[inv.run_index];
        if (!m.count(inv.role)) m[inv.role] = i;
        if (inv.run_index < 1 || inv.run_index > 3) {
            result.violations.push_back("invocation run_index out of bounds");
        }
        if (inv.round_index < 0 || inv.round_index > 3) {
            result.violations.push_back("invocation round_index out of bounds");
        }
        if (!payload_matches_role(inv.output)) {
            result.violations.push_back("structured payload does not match role " +
                                        role_name(inv.role));
        }
    }
    auto check_order = [&](int run, AgentRole a, AgentRole b) {
        const auto& m = first_index[run];
        auto ia = m.find(a);
        auto ib = m.find(b);
        if (ia != m.end() && ib != m.end() && !(ia->second < ib->second)) {
            result.violations.push_back("run " + std::to_string(run) + ": " + role_name(a) +
                                        " must precede " + role_name(b));
        }
    };
    for (const auto& [run, m] : first_index) {
        (void)m;
        check_order(run, AgentRole::Planner, AgentRole::Coordinator);
        check_order(run, AgentRole::ResourceAllocator, AgentRole::CodeAgent);
        check_order(run, AgentRole::CodeAgent, AgentRole::Analyser);
    }
    // Memory sequence numbers strictly increasing per role.
    std::map<AgentRole, std::uint64_t> last_seq;
    for (const auto& ep : t.memory) {
        auto it = last_seq.find(ep.role);
        if (it != last_seq.end() && ep.sequence <= it->second) {
            result.violations.push_back("memory sequence regression for " + role_name(ep.role));
        }
        last_seq[ep.role] = ep.sequence;
    }
    return result;
}

} // namespace pmas
