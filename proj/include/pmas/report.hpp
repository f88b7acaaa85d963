#pragma once

#include <string>
#include <vector>

#include "pmas/evaluator.hpp"
#include "pmas/impact.hpp"
#include "pmas/sweep.hpp"

namespace pmas {

// The CSV bundle emitted by `report`: persona-impact table, system-wide
// impact, per-dimension prescriptive scores, expansion/drift ratios,
// code-quality progression, and convergence series. All files are
// deterministic functions of the record store.
struct ReportBundle {
    std::string impact_table;
    std::string system_impact;
    std::string prescriptive_dimensions;
    std::string expansion_drift;
    std::string code_quality_progression;
    std::string convergence_series;
    std::string convergence_summary;
    std::vector<std::string> warnings;
};

ReportBundle build_reports(const std::vector<EvaluationRecord>& records,
                           const PersonaRegistry& registry, double convergence_epsilon);

// Reads the evaluation store, writes the bundle under <out>/reports/.
std::vector<std::string> cmd_report(Runtime& runtime);

} // namespace pmas
