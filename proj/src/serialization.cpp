#include "pmas/serialization.hpp"

#include <fstream>

#include "json.hpp"

using ojson = nlohmann::ordered_json;

namespace pmas {

namespace {

ojson context_to_json(const ContextBlock& b) {
    ojson o = ojson::object();
    o["source"] = b.source;
    o["provenance"] = b.provenance;
    o["text"] = b.text;
    return o;
}

ContextBlock context_from_json(const ojson& o) {
    return {o.at("source").get<std::string>(),
            o.at("provenance").get<std::vector<std::string>>(),
            o.at("text").get<std::string>()};
}

ojson finding_to_json(const Finding& f) {
    ojson o = ojson::object();
    o["dimension"] = dimension_name(f.dimension);
    o["kind"] = f.kind == FindingKind::Algorithmic ? "algorithmic" : "implementation";
    o["severity"] = f.severity;
    o["message"] = f.message;
    return o;
}

Finding finding_from_json(const ojson& o) {
    Finding f;
    const std::string dim = o.at("dimension").get<std::string>();
    if (dim == "structure") f.dimension = Dimension::Structure;
    else if (dim == "runtime") f.dimension = Dimension::Runtime;
    else if (dim == "policy") f.dimension = Dimension::Policy;
    else if (dim == "formal") f.dimension = Dimension::Formal;
    else throw ConfigError("unknown finding dimension: " + dim);
    f.kind = o.at("kind").get<std::string>() == "algorithmic" ? FindingKind::Algorithmic
                                                              : FindingKind::Implementation;
    f.severity = o.at("severity").get<std::string>();
    f.message = o.at("message").get<std::string>();
    return f;
}

ojson report_to_json(const ValidationReport& r) {
    ojson o = ojson::object();
    o["structure"] = r.structure;
    o["runtime"] = r.runtime;
    o["policy"] = r.policy;
    o["formal"] = r.formal;
    ojson findings = ojson::array();
    for (const auto& f : r.findings) findings.push_back(finding_to_json(f));
    o["findings"] = findings;
    o["verdict"] = r.verdict == Verdict::Pass ? "pass" : "refine";
    o["route"] = r.route ? ojson(role_name(*r.route)) : ojson(nullptr);
    return o;
}

ValidationReport report_from_json(const ojson& o) {
    ValidationReport r;
    r.structure = o.at("structure").get<double>();
    r.runtime = o.at("runtime").get<double>();
    r.policy = o.at("policy").get<double>();
    r.formal = o.at("formal").get<double>();
    for (const auto& f : o.at("findings")) r.findings.push_back(finding_from_json(f));
    r.verdict = o.at("verdict").get<std::string>() == "pass" ? Verdict::Pass : Verdict::Refine;
    if (!o.at("route").is_null()) r.route = role_from_name(o.at("route").get<std::string>());
    return r;
}

ojson path_to_json(const CandidatePath& p) {
    ojson o = ojson::object();
    o["id"] = p.id;
    o["summary"] = p.summary;
    o["steps"] = p.steps;
    o["self_eval"] = p.self_eval;
    return o;
}

CandidatePath path_from_json(const ojson& o) {
    CandidatePath p;
    p.id = o.at("id").get<int>();
    p.summary = o.at("summary").get<std::string>();
    p.steps = o.at("steps").get<std::vector<std::string>>();
    p.self_eval = o.at("self_eval").get<double>();
    return p;
}

ojson payload_to_json(const AgentPayload& payload) {
    ojson o = ojson::object();
    if (const auto* plan = std::get_if<PlanPayload>(&payload)) {
        o["type"] = "plan";
        ojson paths = ojson::array();
        for (const auto& p : plan->paths) paths.push_back(path_to_json(p));
        o["paths"] = paths;
    } else if (const auto* coord = std::get_if<CoordinationPayload>(&payload)) {
        o["type"] = "coordination";
        o["selected_path"] = coord->plan.selected_path;
        o["steps"] = coord->plan.steps;
        o["rounds_used"] = coord->plan.rounds_used;
    } else if (const auto* pseudo = std::get_if<PseudocodePayload>(&payload)) {
        o["type"] = "pseudocode";
        o["pseudocode"] = pseudo->pseudocode;
    } else if (const auto* code = std::get_if<CodePayload>(&payload)) {
        o["type"] = "code";
        o["source"] = code->source;
        o["dialect"] = code->dialect;
    } else if (const auto* analysis = std::get_if<AnalysisPayload>(&payload)) {
        o["type"] = "analysis";
        o["report"] = report_to_json(analysis->report);
    }
    return o;
}

AgentPayload payload_from_json(const ojson& o) {
    const std::string type = o.at("type").get<std::string>();
    if (type == "plan") {
        PlanPayload p;
        for (const auto& path : o.at("paths")) p.paths.push_back(path_from_json(path));
        return p;
    }
    if (type == "coordination") {
        CoordinationPayload c;
        c.plan.selected_path = o.at("selected_path").get<int>();
        c.plan.steps = o.at("steps").get<std::vector<std::string>>();
        c.plan.rounds_used = o.at("rounds_used").get<int>();
        return c;
    }
    if (type == "pseudocode") return PseudocodePayload{o.at("pseudocode").get<std::string>()};
    if (type == "code") {
        return CodePayload{o.at("source").get<std::string>(), o.at("dialect").get<std::string>()};
    }
    if (type == "analysis") return AnalysisPayload{report_from_json(o.at("report"))};
    throw ConfigError("unknown payload type: " + type);
}

ojson output_to_json(const AgentOutput& out) {
    ojson o = ojson::object();
    o["role"] = role_name(out.role);
    o["run"] = out.run_index;
    o["round"] = out.round_index;
    o["content"] = out.content;
    o["reasoning"] = out.reasoning;
    o["payload"] = payload_to_json(out.payload);
    return o;
}

AgentOutput output_from_json(const ojson& o) {
    AgentOutput out;
    out.role = role_from_name(o.at("role").get<std::string>());
    out.run_index = o.at("run").get<int>();
    out.round_index = o.at("round").get<int>();
    out.content = o.at("content").get<std::string>();
    out.reasoning = o.at("reasoning").get<std::string>();
    out.payload = payload_from_json(o.at("payload"));
    return out;
}

ojson episode_to_json(const Episode& ep) {
    ojson o = ojson::object();
    o["role"] = role_name(ep.role);
    o["run"] = ep.run_index;
    o["kind"] = ep.kind;
    o["text"] = ep.text;
    o["sequence"] = ep.sequence;
    return o;
}

Episode episode_from_json(const ojson& o) {
    Episode ep;
    ep.role = role_from_name(o.at("role").get<std::string>());
    ep.run_index = o.at("run").get<int>();
    ep.kind = o.at("kind").get<std::string>();
    ep.text = o.at("text").get<std::string>();
    ep.sequence = o.at("sequence").get<std::uint64_t>();
    return ep;
}

} // namespace

std::string trajectory_to_json(const Trajectory& t) {
    ojson o = ojson::object();
    o["config_id"] = t.config_id;
    o["task_id"] = t.task_id;
    o["assignment"] = t.assignment;
    o["status"] = status_name(t.status);
    o["error"] = t.error;
    ojson invocations = ojson::array();
    for (const auto& inv : t.invocations) {
        ojson io = ojson::object();
        io["role"] = role_name(inv.role);
        io["run"] = inv.run_index;
        io["round"] = inv.round_index;
        io["stage"] = inv.stage;
        ojson contexts = ojson::array();
        for (const auto& c : inv.contexts) contexts.push_back(context_to_json(c));
        io["contexts"] = contexts;
        io["feedback"] = inv.feedback;
        io["output"] = output_to_json(inv.output);
        invocations.push_back(io);
    }
    o["invocations"] = invocations;
    ojson negotiation = ojson::array();
    for (const auto& n : t.negotiation) {
        ojson no = ojson::object();
        no["run"] = n.run_index;
        no["round"] = n.round;
        no["speaker"] = role_name(n.speaker);
        no["message"] = n.message;
        no["selected_path"] = n.selected_path ? ojson(*n.selected_path) : ojson(nullptr);
        no["accepted"] = n.accepted;
        negotiation.push_back(no);
    }
    o["negotiation"] = negotiation;
    ojson refinements = ojson::array();
    for (const auto& r : t.refinements) {
        ojson ro = ojson::object();
        ro["run"] = r.run_index;
        ro["iteration"] = r.iteration;
        ro["target"] = role_name(r.target);
        ro["feedback"] = r.feedback;
        refinements.push_back(ro);
    }
    o["refinements"] = refinements;
    ojson runs = ojson::array();
    for (const auto& r : t.runs) {
        ojson ro = ojson::object();
        ro["run"] = r.run_index;
        ro["negotiation_rounds"] = r.negotiation_rounds;
        ro["refinement_iterations"] = r.refinement_iterations;
        ro["status"] = status_name(r.status);
        ro["final_report"] = report_to_json(r.final_report);
        ro["final_pseudocode"] = r.final_pseudocode;
        ro["final_code"] = r.final_code;
        ro["planner_context"] = r.planner_context;
        runs.push_back(ro);
    }
    o["runs"] = runs;
    ojson memory = ojson::array();
    for (const auto& ep : t.memory) memory.push_back(episode_to_json(ep));
    o["memory"] = memory;
    return o.dump();
}

Trajectory trajectory_from_json(const std::string& line) {
    ojson o;
    try {
        o = ojson::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed trajectory line: ") + e.what());
    }
    Trajectory t;
    t.config_id = o.at("config_id").get<std::string>();
    t.task_id = o.at("task_id").get<std::string>();
    t.assignment = o.at("assignment").get<std::map<std::string, std::string>>();
    t.status = status_from_name(o.at("status").get<std::string>());
    t.error = o.at("error").get<std::string>();
    for (const auto& io : o.at("invocations")) {
        InvocationRecord inv;
        inv.role = role_from_name(io.at("role").get<std::string>());
        inv.run_index = io.at("run").get<int>();
        inv.round_index = io.at("round").get<int>();
        inv.stage = io.at("stage").get<std::string>();
        for (const auto& c : io.at("contexts")) inv.contexts.push_back(context_from_json(c));
        inv.feedback = io.at("feedback").get<std::string>();
        inv.output = output_from_json(io.at("output"));
        t.invocations.push_back(std::move(inv));
    }
    for (const auto& no : o.at("negotiation")) {
        NegotiationTurn n;
        n.run_index = no.at("run").get<int>();
        n.round = no.at("round").get<int>();
        n.speaker = role_from_name(no.at("speaker").get<std::string>());
        n.message = no.at("message").get<std::string>();
        if (!no.at("selected_path").is_null()) n.selected_path = no.at("selected_path").get<int>();
        n.accepted = no.at("accepted").get<bool>();
        t.negotiation.push_back(std::move(n));
    }
    for (const auto& ro : o.at("refinements")) {
        RefinementEvent r;
        r.run_index = ro.at("run").get<int>();
        r.iteration = ro.at("iteration").get<int>();
        r.target = role_from_name(ro.at("target").get<std::string>());
        r.feedback = ro.at("feedback").get<std::string>();
        t.refinements.push_back(std::move(r));
    }
    for (const auto& ro : o.at("runs")) {
        RunSummary r;
        r.run_index = ro.at("run").get<int>();
        r.negotiation_rounds = ro.at("negotiation_rounds").get<int>();
        r.refinement_iterations = ro.at("refinement_iterations").get<int>();
        r.status = status_from_name(ro.at("status").get<std::string>());
        r.final_report = report_from_json(ro.at("final_report"));
        r.final_pseudocode = ro.at("final_pseudocode").get<std::string>();
        r.final_code = ro.at("final_code").get<std::string>();
        r.planner_context = ro.at("planner_context").get<std::string>();
        t.runs.push_back(std::move(r));
    }
    for (const auto& eo : o.at("memory")) t.memory.push_back(episode_from_json(eo));
    return t;
}

std::string evaluation_record_to_json(const EvaluationRecord& r) {
    ojson o = ojson::object();
    o["config_id"] = r.config_id;
    o["task_id"] = r.task_id;
    o["assignment"] = r.assignment;
    o["trajectory_status"] = r.trajectory_status;
    o["complete"] = r.complete;
    o["failure_branch"] = r.failure_branch;
    ojson agents = ojson::object();
    for (AgentRole role : kAllRoles) {
        auto it = r.agents.find(role_name(role));
        if (it == r.agents.end()) continue;
        const auto& a = it->second;
        ojson ao = ojson::object();
        ao["persona"] = a.persona_id;
        ao["normative"] = a.normative;
        ao["normative_per_criterion"] = a.normative_per_criterion;
        ojson po = ojson::object();
        po["linguistic"] = a.prescriptive.pi_linguistic;
        po["consistency"] = a.prescriptive.pi_consistency;
        po["ethical"] = a.prescriptive.pi_ethical;
        po["overall"] = a.prescriptive.overall;
        ao["prescriptive"] = po;
        ojson eo = ojson::object();
        eo["novel"] = a.novel_count;
        eo["expansion"] = a.expansion_count;
        eo["drift"] = a.drift_count;
        eo["r_exp"] = a.expansion.r_exp;
        eo["r_drift"] = a.expansion.r_drift;
        eo["defined"] = a.expansion.defined;
        ao["expansion"] = eo;
        agents[role_name(role)] = ao;
    }
    o["agents"] = agents;
    ojson alignment = ojson::array();
    for (const auto& p : r.planner_alignment) {
        ojson po = ojson::object();
        po["run"] = p.run;
        po["round"] = p.round;
        po["distance"] = p.distance;
        alignment.push_back(po);
    }
    o["planner_alignment"] = alignment;
    o["allocator_series"] = r.allocator_series;
    o["code_series"] = r.code_series;
    ojson quality = ojson::array();
    for (const auto& q : r.code_quality_runs) {
        ojson qo = ojson::object();
        qo["run"] = q.run_index;
        qo["structure"] = q.structure;
        qo["runtime"] = q.runtime;
        qo["policy"] = q.policy;
        qo["formal"] = q.formal;
        qo["overall"] = q.overall;
        quality.push_back(qo);
    }
    o["code_quality_runs"] = quality;
    o["quality_deltas"] = r.quality_deltas;
    return o.dump();
}

EvaluationRecord evaluation_record_from_json(const std::string& line) {
    ojson o;
    try {
        o = ojson::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed evaluation record: ") + e.what());
    }
    EvaluationRecord r;
    r.config_id = o.at("config_id").get<std::string>();
    r.task_id = o.at("task_id").get<std::string>();
    r.assignment = o.at("assignment").get<std::map<std::string, std::string>>();
    r.trajectory_status = o.at("trajectory_status").get<std::string>();
    r.complete = o.at("complete").get<bool>();
    r.failure_branch = o.at("failure_branch").get<std::string>();
    for (const auto& [rname, ao] : o.at("agents").items()) {
        AgentEvaluation a;
        a.persona_id = ao.at("persona").get<std::string>();
        a.normative = ao.at("normative").get<double>();
        a.normative_per_criterion = ao.at("normative_per_criterion").get<std::vector<double>>();
        a.prescriptive.pi_linguistic = ao.at("prescriptive").at("linguistic").get<double>();
        a.prescriptive.pi_consistency = ao.at("prescriptive").at("consistency").get<double>();
        a.prescriptive.pi_ethical = ao.at("prescriptive").at("ethical").get<double>();
        a.prescriptive.overall = ao.at("prescriptive").at("overall").get<double>();
        a.novel_count = ao.at("expansion").at("novel").get<int>();
        a.expansion_count = ao.at("expansion").at("expansion").get<int>();
        a.drift_count = ao.at("expansion").at("drift").get<int>();
        a.expansion.r_exp = ao.at("expansion").at("r_exp").get<double>();
        a.expansion.r_drift = ao.at("expansion").at("r_drift").get<double>();
        a.expansion.defined = ao.at("expansion").at("defined").get<bool>();
        r.agents.emplace(rname, std::move(a));
    }
    for (const auto& po : o.at("planner_alignment")) {
        r.planner_alignment.push_back({po.at("run").get<int>(), po.at("round").get<int>(),
                                       po.at("distance").get<double>()});
    }
    r.allocator_series = o.at("allocator_series").get<std::vector<double>>();
    r.code_series = o.at("code_series").get<std::vector<double>>();
    for (const auto& qo : o.at("code_quality_runs")) {
        r.code_quality_runs.push_back(code_quality(
            qo.at("structure").get<double>(), qo.at("runtime").get<double>(),
            qo.at("policy").get<double>(), qo.at("formal").get<double>(), qo.at("run").get<int>()));
    }
    r.quality_deltas = o.at("quality_deltas").get<std::vector<double>>();
    return r;
}

std::vector<std::string> read_jsonl_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!trim(line).empty()) lines.push_back(line);
    }
    return lines;
}

} // namespace pmas
