#include "pmas/workflow.hpp"

#include <sstream>

#include "json.hpp"
#include "pmas/parsing.hpp"

using ojson = nlohmann::ordered_json;

namespace pmas {

namespace {

std::string compact_number(double v) {
    if (v == static_cast<long long>(v)) return std::to_string(static_cast<long long>(v));
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string encode_constraints(const TaskSpec& task) {
    std::string out;
    for (const auto& [k, v] : task.constraints) {
        if (!out.empty()) out += ';';
        out += k + "=" + compact_number(v);
    }
    return out;
}

std::string render_memory(const std::vector<Episode>& episodes) {
    if (episodes.empty()) return "(none)\n";
    std::ostringstream out;
    for (const auto& ep : episodes) {
        out << "[" << ep.kind << " #" << ep.sequence << " run " << ep.run_index << "] " << ep.text
            << "\n";
    }
    return out.str();
}

std::string digest_line(const std::string& text) {
    std::ostringstream out;
    out << "digest " << std::hex << fnv1a(text) << std::dec << ": "
        << text.substr(0, 120);
    return out.str();
}

ojson paths_to_json(const std::vector<CandidatePath>& paths) {
    ojson arr = ojson::array();
    for (const auto& p : paths) {
        ojson o = ojson::object();
        o["id"] = p.id;
        o["summary"] = p.summary;
        o["steps"] = p.steps;
        o["self_eval"] = p.self_eval;
        arr.push_back(o);
    }
    return arr;
}

} // namespace

struct WorkflowEngine::RunContext {
    std::string config_id;
    std::string mem_key;
    const PersonaAssignment* assignment;
    const TaskSpec* task;
    std::string harness_state;
    Trajectory* trajectory;
    MemoryStore memory;
};

WorkflowEngine::WorkflowEngine(Backend& backend, const PersonaRegistry& registry,
                               const KnowledgeGraph& graph, const DocumentCorpus& corpus,
                               ExecutionSandbox& sandbox, WorkflowConfig config)
    : backend_(&backend),
      registry_(&registry),
      graph_(&graph),
      corpus_(&corpus),
      sandbox_(&sandbox),
      config_(std::move(config)) {
    if (config_.limits.negotiation < 1 || config_.limits.negotiation > 3) {
        throw ConfigError("negotiation limit must be in [1,3]");
    }
    if (config_.limits.refinement < 0 || config_.limits.refinement > 3) {
        throw ConfigError("refinement limit must be in [0,3]");
    }
    if (config_.limits.runs < 1 || config_.limits.runs > 3) {
        throw ConfigError("runs per configuration must be in [1,3]");
    }
}

double WorkflowEngine::temperature_for(AgentRole role) const {
    auto it = config_.role_temperature_overrides.find(role_name(role));
    return it == config_.role_temperature_overrides.end() ? config_.generation_temperature
                                                          : it->second;
}

// Completes one model call: builds the persona/context/memory prompt, records
// the invocation skeleton in memory, and returns the raw reply.
std::string WorkflowEngine::stage_complete(RunContext& ctx, AgentRole role,
                                           const std::string& stage, int run_index,
                                           int round_index, const std::string& body,
                                           std::map<std::string, std::string> metadata) const {
    const std::string& persona_id = ctx.assignment->persona_for(role);
    const PersonaSpec& persona = registry_->get(persona_id);
    ChatRequest request;
    request.temperature = temperature_for(role);
    request.max_output_tokens = config_.max_output_tokens;
    request.metadata = std::move(metadata);
    request.metadata["stage"] = stage;
    request.metadata["task"] = ctx.task->task_id;
    request.metadata["run"] = std::to_string(run_index);
    request.metadata["round"] = std::to_string(round_index);
    request.metadata["persona"] = persona_id;
    request.metadata["config"] = ctx.config_id;
    if (stage == "plan" || stage == "decompose") request.response_format = "json_object";

    auto window = ctx.memory.recall(ctx.mem_key, role, config_.memory_window);
    std::ostringstream user;
    user << "TASK " << ctx.task->task_id << ":\n" << ctx.task->prompt_text << "\n\n";
    user << "MEMORY:\n" << render_memory(window) << "\n";
    user << body;
    request.messages = {{"system", render_system_prompt(persona, role)}, {"user", user.str()}};

    ctx.memory.record(ctx.mem_key, {role, run_index, "input",
                                    digest_line(user.str()),
                                    ctx.memory.next_sequence(ctx.mem_key, role)});
    return backend_->complete(request);
}

Trajectory WorkflowEngine::run_configuration(const std::string& config_id,
                                             const PersonaAssignment& assignment,
                                             const TaskSpec& task,
                                             const std::string& harness_state_json) const {
    for (AgentRole role : kAllRoles) {
        const auto& persona = registry_->get(assignment.persona_for(role));
        if (persona.role != role) {
            throw ConfigError("assignment binds " + persona.persona_id + " to " + role_name(role));
        }
    }
    auto v = validate_task_spec(task);
    if (!v.ok()) throw ConfigError("invalid task spec: " + v.violations.front());

    Trajectory traj;
    traj.config_id = config_id;
    traj.task_id = task.task_id;
    traj.assignment = assignment.to_name_map();

    RunContext ctx;
    ctx.config_id = config_id;
    ctx.mem_key = config_id + ":" + task.task_id;
    ctx.assignment = &assignment;
    ctx.task = &task;
    ctx.harness_state = harness_state_json;
    ctx.trajectory = &traj;

    try {
        for (int run = 1; run <= config_.limits.runs; ++run) {
            traj.runs.push_back(execute_run(ctx, run));
        }
        traj.status = traj.runs.back().status;
    } catch (const std::exception& e) {
        traj.status = TerminalStatus::Error;
        traj.error = e.what();
    }
    traj.memory = ctx.memory.all_for(ctx.mem_key);
    return traj;
}

RunSummary WorkflowEngine::execute_run(RunContext& ctx, int run_index) const {
    Trajectory& traj = *ctx.trajectory;
    const TaskSpec& task = *ctx.task;
    RunSummary summary;
    summary.run_index = run_index;

    auto remember = [&](AgentRole role, const std::string& kind, const std::string& text) {
        ctx.memory.record(ctx.mem_key, {role, run_index, kind, text,
                                        ctx.memory.next_sequence(ctx.mem_key, role)});
    };
    auto embed = [this](const std::string& text) { return backend_->embed(text); };

    // --- Planner: dual graph retrieval, then ToT candidate paths.
    auto planner_blocks =
        retrieve_graph_paths(*graph_, task.prompt_text, config_.retrieval.k_paths, embed,
                             config_.retrieval.max_path_hops);
    auto emb_blocks =
        retrieve_graph_embedding(*graph_, task.prompt_text, config_.retrieval.k_nodes, embed);
    planner_blocks.insert(planner_blocks.end(), emb_blocks.begin(), emb_blocks.end());
    const std::string planner_context = format_context(planner_blocks);
    summary.planner_context = planner_context;

    ParsedPlan plan;
    for (int attempt = 1; attempt <= 2; ++attempt) {
        std::ostringstream body;
        body << "CONTEXT:\n" << planner_context << "\n";
        body << "Produce exactly " << config_.candidate_paths
             << " candidate solution paths as JSON "
                "{\"reasoning\": str, \"paths\": [{\"id\": int, \"summary\": str, \"steps\": "
                "[str], \"self_eval\": number in [0,1]}]}.";
        plan = parse_plan_reply(stage_complete(
            ctx, AgentRole::Planner, "plan", run_index, 0, body.str(),
            {{"count", std::to_string(config_.candidate_paths)},
             {"attempt", std::to_string(attempt)}}));
        if (!plan.paths.empty()) break;
    }
    if (plan.paths.empty()) {
        throw ParseError("planner produced no parseable candidate paths after regeneration");
    }
    {
        AgentOutput out;
        out.role = AgentRole::Planner;
        out.run_index = run_index;
        out.round_index = 0;
        out.content = paths_to_json(plan.paths).dump();
        out.reasoning = plan.reasoning;
        out.payload = PlanPayload{plan.paths};
        traj.invocations.push_back({AgentRole::Planner, run_index, 0, "plan", planner_blocks,
                                    "", std::move(out)});
        if (!plan.reasoning.empty()) remember(AgentRole::Planner, "reasoning", plan.reasoning);
        remember(AgentRole::Planner, "output", traj.invocations.back().output.content);
    }

    // --- Negotiation: Coordinator critiques/selects, Planner revises or concurs.
    const std::string negotiation_key = ctx.mem_key + ":run" + std::to_string(run_index);
    std::string path_scores;
    for (const auto& p : plan.paths) {
        if (!path_scores.empty()) path_scores += ',';
        path_scores += format_double(p.self_eval, 2);
    }
    std::ostringstream transcript;
    std::optional<int> selection;
    int rounds_used = config_.limits.negotiation;
    for (int round = 1; round <= config_.limits.negotiation; ++round) {
        std::ostringstream body;
        body << "CONTEXT:\n(none)\n\n";
        body << "Review the candidate paths and either reply \"ACCEPT path-<id>\" to concur on a "
                "final selection or reply \"SELECT path-<id>\" with a critique requesting "
                "revision.\nPATHS:\n"
             << paths_to_json(plan.paths).dump() << "\nTRANSCRIPT:\n"
             << transcript.str();
        const std::string reply = stage_complete(
            ctx, AgentRole::Coordinator, "negotiate-coordinator", run_index, round, body.str(),
            {{"path_count", std::to_string(plan.paths.size())},
             {"path_scores", path_scores},
             {"negotiation_key", negotiation_key}});
        auto turn = parse_coordinator_reply(reply);
        traj.negotiation.push_back({run_index, round, AgentRole::Coordinator, reply,
                                    turn.selected_path, turn.accepted});
        remember(AgentRole::Coordinator, "output", reply);
        transcript << "[coordinator r" << round << "] " << reply << "\n";
        if (turn.selected_path) selection = turn.selected_path;
        if (turn.accepted) {
            rounds_used = round;
            break;
        }
        if (round == config_.limits.negotiation) break; // exhausted: last selection is final
        std::ostringstream pbody;
        pbody << "CONTEXT:\n" << planner_context << "\n";
        pbody << "The coordinator raised a concern. Revise the contested step or concur.\n"
              << "CRITIQUE:\n" << reply;
        const std::string planner_reply =
            stage_complete(ctx, AgentRole::Planner, "negotiate-planner", run_index, round,
                           pbody.str(), {});
        traj.negotiation.push_back({run_index, round, AgentRole::Planner, planner_reply,
                                    std::nullopt, false});
        remember(AgentRole::Planner, "output", planner_reply);
        transcript << "[planner r" << round << "] " << planner_reply << "\n";
    }
    int selected_id = selection.value_or(select_by_score(plan.paths));
    const CandidatePath* selected_path = nullptr;
    for (const auto& p : plan.paths) {
        if (p.id == selected_id) selected_path = &p;
    }
    if (!selected_path) {
        selected_id = select_by_score(plan.paths);
        for (const auto& p : plan.paths) {
            if (p.id == selected_id) selected_path = &p;
        }
    }
    summary.negotiation_rounds = rounds_used;

    // --- Coordinator decomposes the selected path into execution steps.
    ExecutionPlan exec_plan;
    exec_plan.selected_path = selected_id;
    exec_plan.rounds_used = rounds_used;
    {
        ojson sel = ojson::object();
        sel["id"] = selected_path->id;
        sel["summary"] = selected_path->summary;
        sel["steps"] = selected_path->steps;
        std::string reasoning;
        for (int attempt = 1; attempt <= 2; ++attempt) {
            std::ostringstream body;
            body << "CONTEXT:\n(none)\n\n";
            body << "Decompose the selected path into discrete execution steps as JSON "
                    "{\"reasoning\": str, \"selected_path\": int, \"steps\": [str]}.\n"
                    "SELECTED PATH:\n"
                 << sel.dump();
            auto parsed = parse_decompose_reply(stage_complete(
                ctx, AgentRole::Coordinator, "decompose", run_index, rounds_used, body.str(),
                {{"selected_path", std::to_string(selected_id)},
                 {"attempt", std::to_string(attempt)}}));
            if (parsed) {
                exec_plan.steps = parsed->steps;
                reasoning = parsed->reasoning;
                break;
            }
        }
        if (exec_plan.steps.empty()) {
            // Negotiation has no schema error path; fall back to the path steps.
            exec_plan.steps = selected_path->steps;
            reasoning = "fallback: adopted the selected path steps verbatim";
        }
        AgentOutput out;
        out.role = AgentRole::Coordinator;
        out.run_index = run_index;
        out.round_index = rounds_used;
        ojson content = ojson::object();
        content["selected_path"] = exec_plan.selected_path;
        content["steps"] = exec_plan.steps;
        out.content = content.dump();
        out.reasoning = reasoning;
        out.payload = CoordinationPayload{exec_plan};
        traj.invocations.push_back({AgentRole::Coordinator, run_index, rounds_used, "decompose",
                                    {}, "", std::move(out)});
        remember(AgentRole::Coordinator, "output", traj.invocations.back().output.content);
    }

    // --- Allocator / CodeAgent / Analyser with bounded targeted refinement.
    const std::string constraints_meta = encode_constraints(task);
    std::string pseudocode;
    std::string code;
    std::string dialect = "python";
    std::string allocator_feedback;
    std::string code_feedback;
    AgentRole refine_target = AgentRole::ResourceAllocator; // first pass generates both
    std::string exec_steps_text;
    for (size_t i = 0; i < exec_plan.steps.size(); ++i) {
        exec_steps_text += std::to_string(i + 1) + ". " + exec_plan.steps[i] + "\n";
    }

    for (int iteration = 0; iteration <= config_.limits.refinement; ++iteration) {
        const bool regen_pseudo = iteration == 0 || refine_target == AgentRole::ResourceAllocator;
        const bool regen_code = true; // new pseudocode always re-derives code
        if (regen_pseudo) {
            auto alloc_blocks = retrieve_graph_embedding(
                *graph_, selected_path->summary + " " + task.prompt_text,
                config_.retrieval.k_nodes, embed);
            const std::string alloc_context = format_context(alloc_blocks);
            bool ok = false;
            for (int attempt = 1; attempt <= 2 && !ok; ++attempt) {
                std::ostringstream body;
                body << "CONTEXT:\n" << alloc_context << "\n";
                body << "Write the resource-allocation pseudocode with sections VARIABLES:, "
                        "CONTROL FLOW:, and RATIONALE:. List every named constraint parameter "
                        "under VARIABLES.\nEXECUTION PLAN:\n"
                     << exec_steps_text << "CONSTRAINTS:\n" << constraints_meta << "\n";
                if (!allocator_feedback.empty()) body << "FEEDBACK:\n" << allocator_feedback << "\n";
                const std::string reply = stage_complete(
                    ctx, AgentRole::ResourceAllocator, "allocate", run_index, iteration,
                    body.str(),
                    {{"constraints", constraints_meta}, {"attempt", std::to_string(attempt)}});
                if (pseudocode_schema_ok(reply)) {
                    pseudocode = reply;
                    ok = true;
                    AgentOutput out;
                    out.role = AgentRole::ResourceAllocator;
                    out.run_index = run_index;
                    out.round_index = iteration;
                    out.content = reply;
                    out.payload = PseudocodePayload{reply};
                    traj.invocations.push_back({AgentRole::ResourceAllocator, run_index, iteration,
                                                "allocate", alloc_blocks, allocator_feedback,
                                                std::move(out)});
                    remember(AgentRole::ResourceAllocator, "output", reply);
                }
            }
            if (!ok) throw ParseError("allocator pseudocode failed schema check after regeneration");
        }
        if (regen_code) {
            auto doc_blocks = retrieve_documents(
                *corpus_, pseudocode.substr(0, 400), config_.retrieval.k_docs, embed);
            const std::string doc_context = format_context(doc_blocks);
            bool ok = false;
            for (int attempt = 1; attempt <= 2 && !ok; ++attempt) {
                std::ostringstream body;
                body << "CONTEXT:\n" << doc_context << "\n";
                body << "Implement the pseudocode faithfully as one fenced code block "
                        "(```python). Start the reply with \"Rationale: <one line>\".\n"
                        "PSEUDOCODE:\n"
                     << pseudocode << "\n";
                if (!code_feedback.empty()) body << "FEEDBACK:\n" << code_feedback << "\n";
                const std::string reply = stage_complete(
                    ctx, AgentRole::CodeAgent, "code", run_index, iteration, body.str(),
                    {{"attempt", std::to_string(attempt)}});
                auto parsed = parse_code_reply(reply);
                if (parsed) {
                    code = parsed->source;
                    dialect = parsed->dialect;
                    ok = true;
                    AgentOutput out;
                    out.role = AgentRole::CodeAgent;
                    out.run_index = run_index;
                    out.round_index = iteration;
                    out.content = code;
                    out.reasoning = parsed->reasoning;
                    out.payload = CodePayload{code, dialect};
                    traj.invocations.push_back({AgentRole::CodeAgent, run_index, iteration, "code",
                                                doc_blocks, code_feedback, std::move(out)});
                    remember(AgentRole::CodeAgent, "output", code);
                }
            }
            if (!ok) throw ParseError("code agent produced no code block after regeneration");
        }

        // Analyser: deterministic checkers first, then the persona-voiced summary.
        CheckerInput check_in;
        check_in.code = code;
        check_in.dialect = dialect;
        check_in.pseudocode = pseudocode;
        check_in.plan_summary = selected_path->summary;
        check_in.task = task;
        check_in.harness_state_json = ctx.harness_state;
        ValidationReport report = builtin_checkers(check_in, config_.checkers, *sandbox_);
        const std::string scores_meta = format_double(report.structure, 1) + "," +
                                        format_double(report.runtime, 1) + "," +
                                        format_double(report.policy, 1) + "," +
                                        format_double(report.formal, 1);
        std::ostringstream abody;
        abody << "CONTEXT:\n(none)\n\n";
        abody << "Summarize the validation outcome for the artifact below.\nREPORT:\nscores ["
              << scores_meta << "], verdict "
              << (report.verdict == Verdict::Pass ? "pass" : "refine") << "\nFINDINGS:\n";
        for (const auto& f : report.findings) {
            abody << "- [" << dimension_name(f.dimension) << "/" << f.severity << "] " << f.message
                  << "\n";
        }
        const std::string analysis = stage_complete(
            ctx, AgentRole::Analyser, "analyse", run_index, iteration, abody.str(),
            {{"scores", scores_meta},
             {"verdict", report.verdict == Verdict::Pass ? "pass" : "refine"}});
        {
            AgentOutput out;
            out.role = AgentRole::Analyser;
            out.run_index = run_index;
            out.round_index = iteration;
            out.content = analysis;
            out.payload = AnalysisPayload{report};
            traj.invocations.push_back({AgentRole::Analyser, run_index, iteration, "analyse", {},
                                        "", std::move(out)});
            remember(AgentRole::Analyser, "output", analysis);
        }
        summary.final_report = report;

        if (report.verdict == Verdict::Pass) {
            summary.status = TerminalStatus::Converged;
            break;
        }
        if (iteration == config_.limits.refinement) {
            summary.status = TerminalStatus::IterationLimit;
            break;
        }
        refine_target = report.route.value_or(AgentRole::CodeAgent);
        const std::string feedback = refinement_feedback(report, config_.checkers);
        traj.refinements.push_back({run_index, iteration + 1, refine_target, feedback});
        remember(refine_target, "feedback", feedback);
        summary.refinement_iterations = iteration + 1;
        if (refine_target == AgentRole::ResourceAllocator) {
            allocator_feedback = feedback;
            code_feedback.clear();
        } else {
            code_feedback = feedback;
        }
    }

    summary.final_pseudocode = pseudocode;
    summary.final_code = code;
    return summary;
}

} // namespace pmas
