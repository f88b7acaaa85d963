#pragma once

#include <string>
#include <vector>

#include "pmas/gateway.hpp"
#include "pmas/types.hpp"

namespace pmas {

struct JudgeRequest {
    std::vector<std::string> criteria;
    std::string output_text;     // the agent output under assessment
    std::string upstream_context; // relevant context from upstream agents
};

// Per-criterion scores in [0,1] with one justification each. The aggregate is
// recomputed from the per-criterion scores, never trusted from the judge.
struct JudgeAssessment {
    std::vector<std::string> criteria;
    std::vector<Score> scores;
    std::vector<std::string> justifications;
    Score aggregate = Score::unit(0.0);
};

// Sends one structured judging request at evaluation temperature (0.0) and
// parses the schema-constrained reply. One retry on a malformed reply, then a
// JudgeError; scores are never defaulted.
class Judge {
public:
    explicit Judge(Backend& backend) : backend_(&backend) {}

    JudgeAssessment assess(const JudgeRequest& request) const;

    static std::string build_prompt(const JudgeRequest& request);

private:
    Backend* backend_;
};

} // namespace pmas
