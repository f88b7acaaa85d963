#pragma once

#include <map>
#include <string>

#include "pmas/checkers.hpp"
#include "pmas/gateway.hpp"
#include "pmas/knowledge.hpp"
#include "pmas/memory.hpp"
#include "pmas/persona.hpp"
#include "pmas/types.hpp"

namespace pmas {

struct WorkflowLimits {
    int negotiation = 3; // [1,3]
    int refinement = 3;  // [0,3]
    int runs = 3;        // [1,3]
};

struct RetrievalConfig {
    size_t k_paths = 2;
    size_t k_nodes = 3;
    size_t k_docs = 3;
    size_t max_path_hops = 3;
};

struct WorkflowConfig {
    WorkflowLimits limits;
    int candidate_paths = 3;
    size_t memory_window = 8;
    RetrievalConfig retrieval;
    CheckerConfig checkers;
    double generation_temperature = kGenerationTemperature;
    std::map<std::string, double> role_temperature_overrides; // role name -> temperature
    int max_output_tokens = 1024;
};

// The five-agent workflow: ToT planning, bounded negotiation, decomposition,
// pseudocode generation, code generation, four-dimension validation, and
// bounded targeted refinement. One engine instance serves concurrent
// configuration runs; all shared state is read-only except the sandbox cache.
class WorkflowEngine {
public:
    WorkflowEngine(Backend& backend, const PersonaRegistry& registry, const KnowledgeGraph& graph,
                   const DocumentCorpus& corpus, ExecutionSandbox& sandbox, WorkflowConfig config);

    // Executes limits.runs workflow passes. A backend failure yields status
    // "error" with every completed invocation preserved.
    Trajectory run_configuration(const std::string& config_id, const PersonaAssignment& assignment,
                                 const TaskSpec& task, const std::string& harness_state_json) const;

private:
    struct RunContext;

    RunSummary execute_run(RunContext& ctx, int run_index) const;

    std::string stage_complete(RunContext& ctx, AgentRole role, const std::string& stage,
                               int run_index, int round_index, const std::string& body,
                               std::map<std::string, std::string> metadata) const;

    double temperature_for(AgentRole role) const;

    Backend* backend_;
    const PersonaRegistry* registry_;
    const KnowledgeGraph* graph_;
    const DocumentCorpus* corpus_;
    ExecutionSandbox* sandbox_;
    WorkflowConfig config_;
};

} // namespace pmas
