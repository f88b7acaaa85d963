#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pmas/common.hpp"

namespace pmas {

// ---------------------------------------------------------------------------
// Agent roles

enum class AgentRole { Planner, Coordinator, ResourceAllocator, CodeAgent, Analyser };

// Workflow order; also the fixed role order for configuration enumeration.
inline constexpr std::array<AgentRole, 5> kAllRoles = {
    AgentRole::Planner, AgentRole::Coordinator, AgentRole::ResourceAllocator,
    AgentRole::CodeAgent, AgentRole::Analyser};

std::string role_name(AgentRole role);
AgentRole role_from_name(const std::string& name);

// ---------------------------------------------------------------------------
// Scores

enum class Scale { Unit, Percent };

// A scored value bound to its scale; construction outside the range is
// rejected, so a unit Score can never be observed outside [0,1].
class Score {
public:
    static Score unit(double value) { return Score(value, Scale::Unit); }
    static Score percent(double value) { return Score(value, Scale::Percent); }
    static Score make(double value, Scale scale) { return Score(value, scale); }

    double value() const { return value_; }
    Scale scale() const { return scale_; }

private:
    Score(double value, Scale scale);
    double value_;
    Scale scale_;
};

// ---------------------------------------------------------------------------
// Tasks

struct TaskSpec {
    std::string task_id;     // "Q1" | "Q2"
    std::string prompt_text; // full natural-language challenge
    std::map<std::string, double> constraints;
};

struct ValidationResult {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

ValidationResult validate_task_spec(const TaskSpec& spec);

// ---------------------------------------------------------------------------
// Workflow artifacts

struct CandidatePath {
    int id = 0;
    std::string summary;
    std::vector<std::string> steps;
    double self_eval = 0.0; // [0,1]
};

struct ExecutionPlan {
    int selected_path = 0;
    std::vector<std::string> steps;
    int rounds_used = 0; // {1,2,3}
};

enum class FindingKind { Algorithmic, Implementation };

enum class Dimension { Structure, Runtime, Policy, Formal };

std::string dimension_name(Dimension d);

struct Finding {
    Dimension dimension = Dimension::Structure;
    FindingKind kind = FindingKind::Implementation;
    std::string severity; // "info" | "warning" | "error"
    std::string message;
};

enum class Verdict { Pass, Refine };

struct ValidationReport {
    double structure = 0.0; // all four on [0,100]
    double runtime = 0.0;
    double policy = 0.0;
    double formal = 0.0;
    std::vector<Finding> findings;
    Verdict verdict = Verdict::Refine;
    std::optional<AgentRole> route; // present iff verdict == Refine

    double score(Dimension d) const;
};

// ---------------------------------------------------------------------------
// Agent outputs (structured payload variant matches the producing role)

struct PlanPayload {
    std::vector<CandidatePath> paths;
};

struct CoordinationPayload {
    ExecutionPlan plan;
};

struct PseudocodePayload {
    std::string pseudocode;
};

struct CodePayload {
    std::string source;
    std::string dialect; // fence language tag, e.g. "python"
};

struct AnalysisPayload {
    ValidationReport report;
};

using AgentPayload = std::variant<PlanPayload, CoordinationPayload, PseudocodePayload,
                                  CodePayload, AnalysisPayload>;

struct AgentOutput {
    AgentRole role = AgentRole::Planner;
    int run_index = 1;   // 1..3
    int round_index = 0; // 0..3
    std::string content;
    std::string reasoning;
    AgentPayload payload;
};

// True when the payload alternative is the one produced by `role`.
bool payload_matches_role(const AgentOutput& output);

// ---------------------------------------------------------------------------
// Trajectories

struct ContextBlock {
    std::string source; // "graph-path" | "graph-embedding" | "document"
    std::vector<std::string> provenance;
    std::string text;
};

struct InvocationRecord {
    AgentRole role = AgentRole::Planner;
    int run_index = 1;
    int round_index = 0;
    std::string stage; // plan | negotiate | revise | decompose | allocate | code | analyse
    std::vector<ContextBlock> contexts;
    std::string feedback; // refinement feedback this invocation received, if any
    AgentOutput output;
};

struct NegotiationTurn {
    int run_index = 1;
    int round = 1;
    AgentRole speaker = AgentRole::Coordinator;
    std::string message;
    std::optional<int> selected_path;
    bool accepted = false;
};

struct RefinementEvent {
    int run_index = 1;
    int iteration = 1; // 1..3
    AgentRole target = AgentRole::CodeAgent;
    std::string feedback;
};

struct Episode {
    AgentRole role = AgentRole::Planner;
    int run_index = 1;
    std::string kind; // input | reasoning | output | feedback
    std::string text;
    std::uint64_t sequence = 0;
};

enum class TerminalStatus { Converged, IterationLimit, Error };

std::string status_name(TerminalStatus s);
TerminalStatus status_from_name(const std::string& name);

struct RunSummary {
    int run_index = 1;
    int negotiation_rounds = 0;
    int refinement_iterations = 0;
    TerminalStatus status = TerminalStatus::Converged;
    ValidationReport final_report;
    std::string final_pseudocode;
    std::string final_code;
    std::string planner_context; // formatted retrieval context given to the Planner
};

struct Trajectory {
    std::string config_id;
    std::string task_id;
    std::map<std::string, std::string> assignment; // role name -> persona id
    TerminalStatus status = TerminalStatus::Converged;
    std::string error; // non-empty iff status == Error
    std::vector<InvocationRecord> invocations;
    std::vector<NegotiationTurn> negotiation;
    std::vector<RefinementEvent> refinements;
    std::vector<RunSummary> runs;
    std::vector<Episode> memory;
};

// Structural invariants: per-run invocation ordering (Planner before
// Coordinator, Allocator before CodeAgent, Analyser after CodeAgent) and
// negotiation/refinement bounds.
ValidationResult validate_trajectory(const Trajectory& t);

} // namespace pmas
