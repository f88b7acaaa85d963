#include "pmas/evaluator.hpp"

#include <algorithm>
#include <sstream>

#include "pmas/vocabulary.hpp"

namespace pmas {

namespace {

// Upstream agent whose final output is the judging context.
std::optional<AgentRole> upstream_of(AgentRole role) {
    switch (role) {
        case AgentRole::Planner: return std::nullopt;
        case AgentRole::Coordinator: return AgentRole::Planner;
        case AgentRole::ResourceAllocator: return AgentRole::Coordinator;
        case AgentRole::CodeAgent: return AgentRole::ResourceAllocator;
        case AgentRole::Analyser: return AgentRole::CodeAgent;
    }
    return std::nullopt;
}

const InvocationRecord* final_invocation(const Trajectory& t, AgentRole role) {
    const InvocationRecord* last = nullptr;
    for (const auto& inv : t.invocations) {
        if (inv.role == role) last = &inv;
    }
    return last;
}

} // namespace

TrajectoryEvaluator::TrajectoryEvaluator(Backend& backend, const PersonaRegistry& registry,
                                         const DomainTaxonomy& taxonomy, EvaluatorConfig config)
    : backend_(&backend), registry_(&registry), taxonomy_(&taxonomy), config_(config) {}

EvaluationRecord TrajectoryEvaluator::evaluate(const Trajectory& trajectory,
                                               const TaskSpec& task) const {
    if (trajectory.status == TerminalStatus::Error) {
        throw Error("cannot evaluate a trajectory with terminal status 'error'");
    }
    EvaluationRecord record;
    record.config_id = trajectory.config_id;
    record.task_id = trajectory.task_id;
    record.assignment = trajectory.assignment;
    record.trajectory_status = status_name(trajectory.status);

    Judge judge(*backend_);
    const auto user_vocab = extract_vocabulary(task.prompt_text);

    for (AgentRole role : kAllRoles) {
        const std::string rname = role_name(role);
        auto it = trajectory.assignment.find(rname);
        if (it == trajectory.assignment.end()) {
            record.complete = false;
            record.failure_branch = "assignment:" + rname;
            return record;
        }
        const PersonaSpec& persona = registry_->get(it->second);
        const InvocationRecord* final_inv = final_invocation(trajectory, role);
        if (!final_inv) {
            record.complete = false;
            record.failure_branch = "missing-output:" + rname;
            return record;
        }
        std::string context = "task: " + task.task_id;
        if (auto up = upstream_of(role)) {
            if (const InvocationRecord* up_inv = final_invocation(trajectory, *up)) {
                context = up_inv->output.content;
            }
        }
        AgentEvaluation eval;
        eval.persona_id = persona.persona_id;
        try {
            auto normative =
                normative_score(final_inv->output.content, context, persona, role, judge);
            eval.normative = normative.score;
            for (const auto& s : normative.assessment.scores) {
                eval.normative_per_criterion.push_back(s.value());
            }
            eval.prescriptive = prescriptive_score(final_inv->output.content, context, persona,
                                                   judge, config_.weights);
        } catch (const JudgeError& e) {
            record.complete = false;
            record.failure_branch = "judging:" + rname + ": " + e.what();
            return record;
        }
        // Knowledge expansion over everything the agent said.
        std::ostringstream agent_text;
        for (const auto& inv : trajectory.invocations) {
            if (inv.role == role) agent_text << inv.output.content << "\n" << inv.output.reasoning
                                             << "\n";
        }
        for (const auto& turn : trajectory.negotiation) {
            if (turn.speaker == role) agent_text << turn.message << "\n";
        }
        eval.expansion = knowledge_expansion(user_vocab, extract_vocabulary(agent_text.str()),
                                             *taxonomy_);
        eval.novel_count = static_cast<int>(eval.expansion.novel.size());
        eval.expansion_count = static_cast<int>(eval.expansion.expansion.size());
        eval.drift_count = static_cast<int>(eval.expansion.drift.size());
        record.agents.emplace(rname, std::move(eval));
    }

    auto embed = [this](const std::string& text) { return backend_->embed(text); };

    // Planner alignment: retrieval context vs the evolving negotiation state.
    for (const auto& run : trajectory.runs) {
        if (run.planner_context.empty()) continue;
        Embedding ctx_emb = embed(run.planner_context);
        std::ostringstream state;
        int max_round = 0;
        for (const auto& turn : trajectory.negotiation) {
            if (turn.run_index == run.run_index) max_round = std::max(max_round, turn.round);
        }
        for (int round = 1; round <= max_round; ++round) {
            for (const auto& turn : trajectory.negotiation) {
                if (turn.run_index == run.run_index && turn.round == round) {
                    state << "[" << role_name(turn.speaker) << " r" << round << "] "
                          << turn.message << "\n";
                }
            }
            record.planner_alignment.push_back(
                {run.run_index, round, semantic_distance(ctx_emb, embed(state.str()))});
        }
    }

    // Cross-run artifact series (pseudocode for the Allocator, code for the
    // CodeAgent); fewer than two comparable artifacts yields an empty series.
    auto cross_run = [&](auto field) {
        std::vector<double> series;
        std::vector<const std::string*> artifacts;
        for (const auto& run : trajectory.runs) {
            const std::string& a = field(run);
            if (!a.empty()) artifacts.push_back(&a);
        }
        for (size_t i = 0; i + 1 < artifacts.size(); ++i) {
            if (*artifacts[i] == *artifacts[i + 1]) {
                series.push_back(0.0); // identical artifacts need no embedding
            } else {
                series.push_back(semantic_distance(embed(*artifacts[i]), embed(*artifacts[i + 1])));
            }
        }
        return series;
    };
    record.allocator_series =
        cross_run([](const RunSummary& r) -> const std::string& { return r.final_pseudocode; });
    record.code_series =
        cross_run([](const RunSummary& r) -> const std::string& { return r.final_code; });

    // Code quality progression from the per-run final reports.
    for (const auto& run : trajectory.runs) {
        const auto& rep = run.final_report;
        record.code_quality_runs.push_back(
            code_quality(rep.structure, rep.runtime, rep.policy, rep.formal, run.run_index));
    }
    for (size_t i = 0; i + 1 < record.code_quality_runs.size(); ++i) {
        record.quality_deltas.push_back(quality_delta(record.code_quality_runs[i].overall,
                                                      record.code_quality_runs[i + 1].overall));
    }
    return record;
}

} // namespace pmas
