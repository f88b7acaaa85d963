#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pmas/evaluator.hpp"
#include "pmas/types.hpp"

namespace pmas {

// (score_persona - score_baseline) in percentage points of the unit scale.
double agent_delta(const Score& score_persona, const Score& score_baseline);

struct ImpactRow {
    std::string agent;
    std::string persona;
    double delta_normative = 0.0;   // percentage points
    double delta_prescriptive = 0.0;
    double delta_behavioral = 0.0;
    double delta_average = 0.0; // mean of the three
};

ImpactRow impact_row(const std::string& agent, const std::string& persona,
                     const std::vector<double>& category_deltas);

// Per-agent category scores on the unit scale for one (config, task) cell.
struct CategoryScores {
    double normative = 0.0;
    double prescriptive = 0.0;
    double behavioral = 0.0;

    double average() const { return (normative + prescriptive + behavioral) / 3.0; }
};

// task id -> role name -> scores
using ScoreGrid = std::map<std::string, std::map<std::string, CategoryScores>>;

struct SystemImpact {
    std::string config_id;
    double delta_system = 0.0;                  // mean of the five per-role deltas
    std::map<std::string, double> per_role;     // role name -> delta (pp, task-averaged)
    // Cascade statistics over non-modified (agent x task) cells.
    bool cascade_defined = false;
    double cascade_fraction = 0.0; // share of cells with positive delta
    double cascade_mean = 0.0;     // mean delta over those cells
};

SystemImpact system_impact(const std::string& config_id, const ScoreGrid& config_scores,
                           const ScoreGrid& baseline_scores,
                           const std::vector<std::string>& modified_roles);

// The documented behavioral composite: mean of the defined components among
// (1 - mean convergence distance), r_exp, and final overall code quality /100.
double behavioral_composite(const EvaluationRecord& record, const std::string& role);

CategoryScores category_scores(const EvaluationRecord& record, const std::string& role);

struct ImpactTable {
    std::vector<ImpactRow> rows;            // one per (role, non-default persona)
    std::vector<SystemImpact> system_rows;  // one per single-role-modified config
    std::vector<std::string> warnings;
};

// Builds the table from evaluation records: requires the all-default baseline
// record for every task; configs differing from the baseline in more than one
// role are rejected with a warning. Rows average Q1 and Q2.
ImpactTable build_impact_table(const std::vector<EvaluationRecord>& records,
                               const PersonaRegistry& registry);

std::string impact_table_csv(const ImpactTable& table);
std::string system_impact_csv(const ImpactTable& table);

} // namespace pmas
