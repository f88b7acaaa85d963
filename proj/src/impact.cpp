#include "pmas/impact.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace pmas {

double agent_delta(const Score& score_persona, const Score& score_baseline) {
    if (score_persona.scale() != score_baseline.scale()) {
        throw Error("agent_delta requires scores on the same scale");
    }
    const double diff = score_persona.value() - score_baseline.value();
    return score_persona.scale() == Scale::Unit ? diff * 100.0 : diff;
}

ImpactRow impact_row(const std::string& agent, const std::string& persona,
                     const std::vector<double>& category_deltas) {
    if (category_deltas.size() != 3) {
        throw Error("impact_row requires exactly three category deltas, got " +
                    std::to_string(category_deltas.size()));
    }
    ImpactRow row;
    row.agent = agent;
    row.persona = persona;
    row.delta_normative = category_deltas[0];
    row.delta_prescriptive = category_deltas[1];
    row.delta_behavioral = category_deltas[2];
    row.delta_average = (category_deltas[0] + category_deltas[1] + category_deltas[2]) / 3.0;
    return row;
}

SystemImpact system_impact(const std::string& config_id, const ScoreGrid& config_scores,
                           const ScoreGrid& baseline_scores,
                           const std::vector<std::string>& modified_roles) {
    SystemImpact impact;
    impact.config_id = config_id;
    std::set<std::string> modified(modified_roles.begin(), modified_roles.end());

    std::vector<std::string> tasks;
    for (const auto& [task, grid] : config_scores) {
        (void)grid;
        if (!baseline_scores.count(task)) throw Error("missing baseline for task " + task);
        tasks.push_back(task);
    }
    if (tasks.empty()) throw Error("system_impact requires at least one task");

    double system_sum = 0.0;
    for (AgentRole role : kAllRoles) {
        const std::string rname = role_name(role);
        double role_sum = 0.0;
        for (const auto& task : tasks) {
            const auto& cfg_grid = config_scores.at(task);
            const auto& base_grid = baseline_scores.at(task);
            if (!cfg_grid.count(rname) || !base_grid.count(rname)) {
                throw Error("missing role " + rname + " in score grid for task " + task);
            }
            role_sum += (cfg_grid.at(rname).average() - base_grid.at(rname).average()) * 100.0;
        }
        const double role_delta = role_sum / static_cast<double>(tasks.size());
        impact.per_role[rname] = role_delta;
        system_sum += role_delta;
    }
    impact.delta_system = system_sum / static_cast<double>(kAllRoles.size());

    // Cascade cells: (non-modified role) x task.
    if (!modified.empty()) {
        int cells = 0;
        int positive = 0;
        double sum = 0.0;
        for (AgentRole role : kAllRoles) {
            const std::string rname = role_name(role);
            if (modified.count(rname)) continue;
            for (const auto& task : tasks) {
                const double d = (config_scores.at(task).at(rname).average() -
                                  baseline_scores.at(task).at(rname).average()) *
                                 100.0;
                ++cells;
                if (d > 0.0) ++positive;
                sum += d;
            }
        }
        if (cells > 0) {
            impact.cascade_defined = true;
            impact.cascade_fraction = static_cast<double>(positive) / static_cast<double>(cells);
            impact.cascade_mean = sum / static_cast<double>(cells);
        }
    }
    return impact;
}

double behavioral_composite(const EvaluationRecord& record, const std::string& role) {
    std::vector<double> components;
    auto series_component = [&](const std::vector<double>& series) {
        if (series.empty()) return;
        double sum = 0.0;
        for (double d : series) sum += d;
        components.push_back(clamp01(1.0 - sum / static_cast<double>(series.size())));
    };
    if (role == "ResourceAllocator") {
        series_component(record.allocator_series);
    } else if (role == "CodeAgent") {
        series_component(record.code_series);
    } else if (role == "Planner") {
        std::vector<double> distances;
        for (const auto& p : record.planner_alignment) distances.push_back(p.distance);
        series_component(distances);
    }
    auto it = record.agents.find(role);
    if (it != record.agents.end() && it->second.expansion.defined) {
        components.push_back(it->second.expansion.r_exp);
    }
    if (role == "CodeAgent" && !record.code_quality_runs.empty()) {
        components.push_back(record.code_quality_runs.back().overall / 100.0);
    }
    if (components.empty()) return 0.0;
    double sum = 0.0;
    for (double c : components) sum += c;
    return sum / static_cast<double>(components.size());
}

CategoryScores category_scores(const EvaluationRecord& record, const std::string& role) {
    auto it = record.agents.find(role);
    if (it == record.agents.end()) throw Error("record has no agent entry for " + role);
    CategoryScores scores;
    scores.normative = it->second.normative;
    scores.prescriptive = it->second.prescriptive.overall;
    scores.behavioral = behavioral_composite(record, role);
    return scores;
}

namespace {

// Roles whose persona differs from the registry default.
std::vector<std::string> modified_roles_of(const EvaluationRecord& record,
                                           const PersonaRegistry& registry) {
    std::vector<std::string> out;
    for (AgentRole role : kAllRoles) {
        const std::string rname = role_name(role);
        auto it = record.assignment.find(rname);
        if (it == record.assignment.end()) throw Error("record assignment missing " + rname);
        if (!registry.get(it->second).is_default) out.push_back(rname);
    }
    return out;
}

} // namespace

ImpactTable build_impact_table(const std::vector<EvaluationRecord>& records,
                               const PersonaRegistry& registry) {
    ImpactTable table;
    // Baseline record per task.
    std::map<std::string, const EvaluationRecord*> baselines;
    std::set<std::string> tasks;
    for (const auto& r : records) {
        tasks.insert(r.task_id);
        if (modified_roles_of(r, registry).empty()) baselines[r.task_id] = &r;
    }
    for (const auto& task : tasks) {
        if (!baselines.count(task)) {
            throw Error("missing baseline record for task " + task);
        }
    }
    ScoreGrid baseline_grid;
    for (const auto& [task, rec] : baselines) {
        for (AgentRole role : kAllRoles) {
            baseline_grid[task][role_name(role)] = category_scores(*rec, role_name(role));
        }
    }

    // Group single-role-modified records by config id.
    std::map<std::string, std::vector<const EvaluationRecord*>> by_config;
    for (const auto& r : records) {
        auto modified = modified_roles_of(r, registry);
        if (modified.empty()) continue;
        if (modified.size() > 1) {
            table.warnings.push_back("config " + r.config_id + " modifies " +
                                     std::to_string(modified.size()) +
                                     " roles; excluded from the impact table");
            continue;
        }
        by_config[r.config_id].push_back(&r);
    }

    struct Accum {
        std::string role;
        std::string persona;
        double dn = 0.0, dp = 0.0, db = 0.0;
        int cells = 0;
    };
    std::map<std::pair<std::string, std::string>, Accum> groups;
    for (const auto& [config_id, recs] : by_config) {
        ScoreGrid config_grid;
        std::vector<std::string> modified;
        for (const EvaluationRecord* rec : recs) {
            modified = modified_roles_of(*rec, registry);
            for (AgentRole role : kAllRoles) {
                config_grid[rec->task_id][role_name(role)] =
                    category_scores(*rec, role_name(role));
            }
            const std::string& mrole = modified.front();
            const std::string persona = rec->assignment.at(mrole);
            auto& acc = groups[{mrole, persona}];
            acc.role = mrole;
            acc.persona = persona;
            const auto& cfg = config_grid[rec->task_id].at(mrole);
            const auto& base = baseline_grid.at(rec->task_id).at(mrole);
            acc.dn += (cfg.normative - base.normative) * 100.0;
            acc.dp += (cfg.prescriptive - base.prescriptive) * 100.0;
            acc.db += (cfg.behavioral - base.behavioral) * 100.0;
            acc.cells += 1;
        }
        table.system_rows.push_back(
            system_impact(config_id, config_grid, baseline_grid, modified));
    }

    // Deterministic row order: workflow role order, then persona id.
    for (AgentRole role : kAllRoles) {
        const std::string rname = role_name(role);
        std::vector<const Accum*> row_group;
        for (const auto& [key, acc] : groups) {
            if (key.first == rname) row_group.push_back(&acc);
        }
        std::sort(row_group.begin(), row_group.end(),
                  [](const Accum* a, const Accum* b) { return a->persona < b->persona; });
        for (const Accum* acc : row_group) {
            const double n = static_cast<double>(acc->cells);
            table.rows.push_back(impact_row(
                acc->role, acc->persona, {acc->dn / n, acc->dp / n, acc->db / n}));
        }
    }
    std::sort(table.system_rows.begin(), table.system_rows.end(),
              [](const SystemImpact& a, const SystemImpact& b) { return a.config_id < b.config_id; });
    return table;
}

std::string impact_table_csv(const ImpactTable& table) {
    std::ostringstream out;
    out << "agent,persona,delta_normative,delta_prescriptive,delta_behavioral,delta_average\n";
    for (const auto& row : table.rows) {
        out << row.agent << "," << row.persona << "," << format_double(row.delta_normative, 2)
            << "," << format_double(row.delta_prescriptive, 2) << ","
            << format_double(row.delta_behavioral, 2) << "," << format_double(row.delta_average, 2)
            << "\n";
    }
    return out.str();
}

std::string system_impact_csv(const ImpactTable& table) {
    std::ostringstream out;
    out << "config_id,delta_system";
    for (AgentRole role : kAllRoles) out << ",delta_" << role_name(role);
    out << ",cascade_defined,cascade_fraction,cascade_mean\n";
    for (const auto& row : table.system_rows) {
        out << row.config_id << "," << format_double(row.delta_system, 3);
        for (AgentRole role : kAllRoles) {
            out << "," << format_double(row.per_role.at(role_name(role)), 3);
        }
        out << "," << (row.cascade_defined ? "1" : "0") << ","
            << format_double(row.cascade_fraction, 4) << "," << format_double(row.cascade_mean, 3)
            << "\n";
    }
    return out.str();
}

} // namespace pmas
