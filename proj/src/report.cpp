#include "pmas/report.hpp"

#include <filesystem>
#include <map>
#include <sstream>

#include "pmas/serialization.hpp"

namespace fs = std::filesystem;

namespace pmas {

ReportBundle build_reports(const std::vector<EvaluationRecord>& records,
                           const PersonaRegistry& registry, double convergence_epsilon) {
    ReportBundle bundle;

    ImpactTable table;
    try {
        table = build_impact_table(records, registry);
        bundle.warnings = table.warnings;
    } catch (const Error& e) {
        // No usable baseline: emit empty impact CSVs, keep the behavioral ones.
        bundle.warnings.push_back(std::string("impact table unavailable: ") + e.what());
    }
    bundle.impact_table = impact_table_csv(table);
    bundle.system_impact = system_impact_csv(table);

    std::ostringstream prescriptive;
    prescriptive << "config_id,task,agent,persona,pi_linguistic,pi_consistency,pi_ethical,"
                    "pi_overall\n";
    std::ostringstream expansion;
    expansion << "config_id,task,agent,persona,novel,expansion,drift,r_exp,r_drift,defined\n";
    std::ostringstream quality;
    quality << "config_id,task,run,structure,runtime,policy,formal,overall,delta_prev\n";
    std::ostringstream series;
    series << "config_id,task,agent,kind,run,index,distance\n";

    struct ConvAccum {
        int transitions = 0;
        int perfect = 0;
    };
    std::map<std::pair<std::string, std::string>, ConvAccum> conv; // (task, agent)

    for (const auto& r : records) {
        for (AgentRole role : kAllRoles) {
            const std::string rname = role_name(role);
            auto it = r.agents.find(rname);
            if (it == r.agents.end()) continue;
            const auto& a = it->second;
            prescriptive << r.config_id << "," << r.task_id << "," << rname << ","
                         << a.persona_id << "," << format_double(a.prescriptive.pi_linguistic, 4)
                         << "," << format_double(a.prescriptive.pi_consistency, 4) << ","
                         << format_double(a.prescriptive.pi_ethical, 4) << ","
                         << format_double(a.prescriptive.overall, 4) << "\n";
            expansion << r.config_id << "," << r.task_id << "," << rname << "," << a.persona_id
                      << "," << a.novel_count << "," << a.expansion_count << "," << a.drift_count
                      << "," << format_double(a.expansion.r_exp, 4) << ","
                      << format_double(a.expansion.r_drift, 4) << ","
                      << (a.expansion.defined ? "1" : "0") << "\n";
        }
        for (size_t i = 0; i < r.code_quality_runs.size(); ++i) {
            const auto& q = r.code_quality_runs[i];
            quality << r.config_id << "," << r.task_id << "," << q.run_index << ","
                    << format_double(q.structure, 2) << "," << format_double(q.runtime, 2) << ","
                    << format_double(q.policy, 2) << "," << format_double(q.formal, 2) << ","
                    << format_double(q.overall, 2) << ","
                    << (i == 0 ? "" : format_double(r.quality_deltas[i - 1], 2)) << "\n";
        }
        for (const auto& p : r.planner_alignment) {
            series << r.config_id << "," << r.task_id << ",Planner,alignment," << p.run << ","
                   << p.round << "," << format_double(p.distance, 6) << "\n";
        }
        auto emit_series = [&](const char* agent, const std::vector<double>& values) {
            for (size_t i = 0; i < values.size(); ++i) {
                series << r.config_id << "," << r.task_id << "," << agent << ",cross-run,0,"
                       << i + 1 << "," << format_double(values[i], 6) << "\n";
                auto& acc = conv[{r.task_id, agent}];
                ++acc.transitions;
                if (values[i] < convergence_epsilon) ++acc.perfect;
            }
        };
        emit_series("ResourceAllocator", r.allocator_series);
        emit_series("CodeAgent", r.code_series);
    }
    bundle.prescriptive_dimensions = prescriptive.str();
    bundle.expansion_drift = expansion.str();
    bundle.code_quality_progression = quality.str();
    bundle.convergence_series = series.str();

    std::ostringstream summary;
    summary << "task,agent,transitions,perfect,perfect_rate\n";
    for (const auto& [key, acc] : conv) {
        summary << key.first << "," << key.second << "," << acc.transitions << "," << acc.perfect
                << ","
                << format_double(acc.transitions == 0
                                     ? 0.0
                                     : static_cast<double>(acc.perfect) / acc.transitions,
                                 4)
                << "\n";
    }
    bundle.convergence_summary = summary.str();
    return bundle;
}

std::vector<std::string> cmd_report(Runtime& runtime) {
    if (!fs::exists(runtime.evaluations_path())) {
        throw ConfigError("evaluation store not found: " + runtime.evaluations_path());
    }
    std::vector<EvaluationRecord> records;
    for (const auto& line : read_jsonl_lines(runtime.evaluations_path())) {
        records.push_back(evaluation_record_from_json(line));
    }
    ReportBundle bundle =
        build_reports(records, runtime.registry, runtime.config.convergence_epsilon);
    fs::create_directories(runtime.reports_dir());
    const std::string dir = runtime.reports_dir();
    write_file(dir + "/impact_table.csv", bundle.impact_table);
    write_file(dir + "/system_impact.csv", bundle.system_impact);
    write_file(dir + "/prescriptive_dimensions.csv", bundle.prescriptive_dimensions);
    write_file(dir + "/expansion_drift.csv", bundle.expansion_drift);
    write_file(dir + "/code_quality_progression.csv", bundle.code_quality_progression);
    write_file(dir + "/convergence_series.csv", bundle.convergence_series);
    write_file(dir + "/convergence_summary.csv", bundle.convergence_summary);
    return bundle.warnings;
}

} // namespace pmas
