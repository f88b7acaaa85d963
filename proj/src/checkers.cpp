#include "pmas/checkers.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "json.hpp"

using json = nlohmann::json;

namespace pmas {

std::vector<std::string> CheckerConfig::default_forbidden_constructs() {
    return {"eval(",     "exec(",      "__import__", "compile(",  "os.system",
            "os.popen",  "subprocess", "socket",     "urllib",    "requests.",
            "ctypes",    "shutil.rmtree"};
}

double CheckerConfig::threshold(Dimension d) const {
    switch (d) {
        case Dimension::Structure: return threshold_structure;
        case Dimension::Runtime: return threshold_runtime;
        case Dimension::Policy: return threshold_policy;
        case Dimension::Formal: return threshold_formal;
    }
    throw Error("invalid Dimension");
}

namespace {

struct Penalty {
    double amount;
    Finding finding;
};

int count_occurrences(const std::string& text, const std::string& needle) {
    int n = 0;
    size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++n;
        pos += needle.size();
    }
    return n;
}

// Lexical heuristics: comment density, function length, identifier naming,
// line width. Constraint coverage of the pseudocode is scored here too, as
// algorithmic findings, so routing can tell design flaws from code defects.
double structure_check(const CheckerInput& input, std::vector<Finding>& findings) {
    std::vector<Penalty> penalties;
    const auto lines = split_lines(input.code);
    int code_lines = 0;
    int comment_lines = 0;
    int longest_block = 0;
    int current_block = 0;
    int long_lines = 0;
    int cryptic = 0;
    for (const auto& raw : lines) {
        const std::string line = trim(raw);
        if (line.empty()) {
            current_block = 0;
            continue;
        }
        ++code_lines;
        if (line[0] == '#') ++comment_lines;
        if (raw.size() > 120) ++long_lines;
        if (starts_with(line, "def ")) current_block = 0;
        ++current_block;
        longest_block = std::max(longest_block, current_block);
        if (line.size() >= 4 && std::isalpha(static_cast<unsigned char>(line[0])) &&
            line.substr(1, 3) == " = ") {
            ++cryptic;
        }
    }
    if (code_lines > 0 && static_cast<double>(comment_lines) / code_lines < 0.03) {
        penalties.push_back({15.0,
                             {Dimension::Structure, FindingKind::Implementation, "warning",
                              "low comment density"}});
    }
    if (longest_block > 40) {
        penalties.push_back({20.0,
                             {Dimension::Structure, FindingKind::Implementation, "warning",
                              "function body exceeds 40 lines"}});
    }
    if (long_lines > 0) {
        penalties.push_back({5.0,
                             {Dimension::Structure, FindingKind::Implementation, "info",
                              std::to_string(long_lines) + " line(s) over 120 columns"}});
    }
    if (cryptic >= 5) {
        penalties.push_back({10.0,
                             {Dimension::Structure, FindingKind::Implementation, "warning",
                              "cryptic single-letter identifiers"}});
    }
    // Algorithmic coverage: the pseudocode must carry every named constraint.
    for (const auto& [name, value] : input.task.constraints) {
        (void)value;
        if (input.pseudocode.find(name) == std::string::npos) {
            penalties.push_back({15.0,
                                 {Dimension::Structure, FindingKind::Algorithmic, "warning",
                                  "pseudocode omits constraint " + name}});
        }
    }
    for (const char* section : {"VARIABLES:", "CONTROL FLOW:", "RATIONALE:"}) {
        if (input.pseudocode.find(section) == std::string::npos) {
            penalties.push_back({20.0,
                                 {Dimension::Structure, FindingKind::Algorithmic, "error",
                                  std::string("pseudocode missing section ") + section}});
        }
    }
    // Plan/pseudocode divergence is surfaced but not scored.
    if (!input.plan_summary.empty()) {
        auto plan_tokens = alnum_tokens(input.plan_summary);
        bool overlap = false;
        const std::string pseudo_lower = to_lower(input.pseudocode);
        for (const auto& tok : plan_tokens) {
            if (tok.size() >= 4 && pseudo_lower.find(tok) != std::string::npos) {
                overlap = true;
                break;
            }
        }
        if (!overlap) {
            findings.push_back({Dimension::Structure, FindingKind::Algorithmic, "info",
                                "plan and pseudocode share no salient vocabulary"});
        }
    }
    double score = 100.0;
    for (const auto& p : penalties) {
        score -= p.amount;
        findings.push_back(p.finding);
    }
    return std::max(0.0, score);
}

// Wall-clock/exit-status scoring of a sandboxed execution.
double runtime_check(const CheckerInput& input, ExecutionSandbox& sandbox,
                     std::vector<Finding>& findings) {
    if (input.dialect != "python") {
        findings.push_back({Dimension::Runtime, FindingKind::Implementation, "warning",
                            "dialect '" + input.dialect + "' not executable in the sandbox"});
        return 50.0;
    }
    SandboxResult result = sandbox.run(input.code, input.harness_state_json);
    if (result.timed_out) {
        findings.push_back({Dimension::Runtime, FindingKind::Implementation, "error", "timeout"});
        return 0.0;
    }
    if (result.exit_status != 0) {
        std::string head = result.stderr_text.substr(0, 160);
        std::replace(head.begin(), head.end(), '\n', ' ');
        findings.push_back({Dimension::Runtime, FindingKind::Implementation, "error",
                            "execution failed (exit " + std::to_string(result.exit_status) +
                                "): " + head});
        return 20.0;
    }
    try {
        auto parsed = json::parse(result.stdout_text);
        if (parsed.contains("error")) {
            findings.push_back({Dimension::Runtime, FindingKind::Implementation, "warning",
                                "artifact reported a handled error"});
            return 60.0;
        }
    } catch (const json::exception&) {
        findings.push_back({Dimension::Runtime, FindingKind::Implementation, "warning",
                            "stdout is not structured JSON"});
        return 60.0;
    }
    return 100.0;
}

// Pattern scan against the forbidden-construct list: any hit zeroes the
// dimension and names the construct.
double policy_check(const CheckerInput& input, const CheckerConfig& config,
                    std::vector<Finding>& findings) {
    bool hit = false;
    for (const auto& construct : config.forbidden_constructs) {
        if (input.code.find(construct) != std::string::npos) {
            hit = true;
            findings.push_back({Dimension::Policy, FindingKind::Implementation, "error",
                                "forbidden construct: " + construct});
        }
    }
    return hit ? 0.0 : 100.0;
}

// Presence heuristics: +50 error handling, +30 total branch coverage,
// +20 input validation.
double formal_check(const CheckerInput& input, std::vector<Finding>& findings) {
    double score = 0.0;
    const std::string& code = input.code;
    const bool has_handling = code.find("try:") != std::string::npos ||
                              code.find("except") != std::string::npos;
    if (has_handling) {
        score += 50.0;
    } else {
        findings.push_back({Dimension::Formal, FindingKind::Implementation, "warning",
                            "no error handling (try/except) present"});
    }
    const int if_count = count_occurrences(code, "if ");
    const int else_count = count_occurrences(code, "else:") + count_occurrences(code, "elif ");
    if (if_count == 0 || else_count > 0) {
        score += 30.0;
    } else {
        findings.push_back({Dimension::Formal, FindingKind::Implementation, "warning",
                            "conditional branches lack else coverage"});
    }
    const bool has_validation = code.find("raise ValueError") != std::string::npos ||
                                code.find("assert ") != std::string::npos ||
                                code.find("isinstance(") != std::string::npos;
    if (has_validation) {
        score += 20.0;
    } else {
        findings.push_back({Dimension::Formal, FindingKind::Implementation, "warning",
                            "no input validation detected"});
    }
    return score;
}

} // namespace

ValidationReport builtin_checkers(const CheckerInput& input, const CheckerConfig& config,
                                  ExecutionSandbox& sandbox) {
    if (trim(input.code).empty()) throw Error("builtin_checkers requires non-empty code");
    ValidationReport report;
    auto guarded = [&](Dimension dim, auto&& fn) -> double {
        try {
            return fn();
        } catch (const std::exception& e) {
            report.findings.push_back({dim, FindingKind::Implementation, "error",
                                       std::string("checker error: ") + e.what()});
            return 0.0;
        }
    };
    report.structure =
        guarded(Dimension::Structure, [&] { return structure_check(input, report.findings); });
    report.runtime = guarded(Dimension::Runtime,
                             [&] { return runtime_check(input, sandbox, report.findings); });
    report.policy =
        guarded(Dimension::Policy, [&] { return policy_check(input, config, report.findings); });
    report.formal =
        guarded(Dimension::Formal, [&] { return formal_check(input, report.findings); });
    decide_verdict(report, config);
    return report;
}

void decide_verdict(ValidationReport& report, const CheckerConfig& config) {
    std::vector<Dimension> failing;
    for (Dimension d : {Dimension::Structure, Dimension::Runtime, Dimension::Policy,
                        Dimension::Formal}) {
        if (report.score(d) < config.threshold(d)) failing.push_back(d);
    }
    if (failing.empty()) {
        report.verdict = Verdict::Pass;
        report.route.reset();
        return;
    }
    report.verdict = Verdict::Refine;
    bool any_implementation = false;
    std::set<Dimension> failing_set(failing.begin(), failing.end());
    for (const auto& f : report.findings) {
        if (f.severity == "info") continue;
        if (failing_set.count(f.dimension) && f.kind == FindingKind::Implementation) {
            any_implementation = true;
            break;
        }
    }
    report.route = any_implementation ? AgentRole::CodeAgent : AgentRole::ResourceAllocator;
}

std::string refinement_feedback(const ValidationReport& report, const CheckerConfig& config) {
    std::ostringstream out;
    out << "Refine the artifact; failing dimensions:";
    for (Dimension d : {Dimension::Structure, Dimension::Runtime, Dimension::Policy,
                        Dimension::Formal}) {
        if (report.score(d) < config.threshold(d)) {
            out << " " << dimension_name(d) << "=" << format_double(report.score(d), 1);
        }
    }
    out << ". Findings:";
    std::set<Dimension> failing;
    for (Dimension d : {Dimension::Structure, Dimension::Runtime, Dimension::Policy,
                        Dimension::Formal}) {
        if (report.score(d) < config.threshold(d)) failing.insert(d);
    }
    for (const auto& f : report.findings) {
        if (failing.count(f.dimension) && f.severity != "info") {
            out << " [" << dimension_name(f.dimension) << "] " << f.message << ";";
        }
    }
    return out.str();
}

} // namespace pmas
