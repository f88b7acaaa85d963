#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pmas/metrics.hpp"

namespace pmas {

struct AlignmentPoint {
    int run = 1;
    int round = 1;
    double distance = 0.0;
};

struct AgentEvaluation {
    std::string persona_id;
    double normative = 0.0;
    std::vector<double> normative_per_criterion;
    PrescriptiveBundle prescriptive;
    ExpansionResult expansion;
    // Set sizes survive serialization; the sets themselves are not persisted.
    int novel_count = 0;
    int expansion_count = 0;
    int drift_count = 0;
};

// The full three-branch metric bundle for one configuration-task pair.
struct EvaluationRecord {
    std::string config_id;
    std::string task_id;
    std::map<std::string, std::string> assignment;
    std::string trajectory_status;
    std::map<std::string, AgentEvaluation> agents; // keyed by role name

    // Behavioral: semantic convergence.
    std::vector<AlignmentPoint> planner_alignment; // retrieval context vs negotiation state
    std::vector<double> allocator_series;          // cross-run pseudocode distances
    std::vector<double> code_series;               // cross-run code distances

    // Behavioral: code quality progression.
    std::vector<CodeQualityReport> code_quality_runs;
    std::vector<double> quality_deltas;

    bool complete = true;
    std::string failure_branch; // non-empty iff !complete
};

struct EvaluatorConfig {
    PrescriptiveWeights weights;
    double convergence_epsilon = 1e-6; // "perfect convergence" distance threshold
};

// Pure offline pass over a stored trajectory. Judge calls run at evaluation
// temperature; any judging error marks the record incomplete with the failing
// branch named (scores are never filled in).
class TrajectoryEvaluator {
public:
    TrajectoryEvaluator(Backend& backend, const PersonaRegistry& registry,
                        const DomainTaxonomy& taxonomy, EvaluatorConfig config = {});

    // Precondition: trajectory status is converged or iteration-limit.
    EvaluationRecord evaluate(const Trajectory& trajectory, const TaskSpec& task) const;

    const EvaluatorConfig& config() const { return config_; }

private:
    Backend* backend_;
    const PersonaRegistry* registry_;
    const DomainTaxonomy* taxonomy_;
    EvaluatorConfig config_;
};

} // namespace pmas
