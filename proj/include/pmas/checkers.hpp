#pragma once

#include <string>
#include <vector>

#include "pmas/sandbox.hpp"
#include "pmas/types.hpp"

namespace pmas {

struct CheckerConfig {
    double threshold_structure = 60.0;
    double threshold_runtime = 60.0;
    double threshold_policy = 60.0;
    double threshold_formal = 60.0;
    std::vector<std::string> forbidden_constructs = default_forbidden_constructs();
    // Named slot for a deterministic-execution checker; no decidable criterion
    // is wired yet, so it ships disabled.
    bool determinism_checker_enabled = false;

    static std::vector<std::string> default_forbidden_constructs();
    double threshold(Dimension d) const;
};

struct CheckerInput {
    std::string code;
    std::string dialect;
    std::string pseudocode;
    std::string plan_summary;
    TaskSpec task;
    std::string harness_state_json; // stub network state fed to the sandbox
};

// The four builtin analysis dimensions. Scores are [0,100]; a crashed checker
// scores its dimension 0 with an "error"-severity finding.
ValidationReport builtin_checkers(const CheckerInput& input, const CheckerConfig& config,
                                  ExecutionSandbox& sandbox);

// Verdict is a pure function of the four scores and thresholds. Routing:
// failing dimensions carrying only algorithmic findings go to the
// ResourceAllocator; anything implementation-flavored (including mixed) goes
// to the CodeAgent.
void decide_verdict(ValidationReport& report, const CheckerConfig& config);

// Feedback text for the routed agent, built from failing-dimension findings.
std::string refinement_feedback(const ValidationReport& report, const CheckerConfig& config);

} // namespace pmas
