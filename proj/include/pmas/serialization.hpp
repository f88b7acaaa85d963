#pragma once

#include <string>
#include <vector>

#include "pmas/evaluator.hpp"
#include "pmas/types.hpp"

namespace pmas {

// Line-delimited records with a fixed field order (schema in
// docs/formats.md); output is byte-stable across runs for golden-file tests.

std::string trajectory_to_json(const Trajectory& trajectory);
Trajectory trajectory_from_json(const std::string& line);

std::string evaluation_record_to_json(const EvaluationRecord& record);
EvaluationRecord evaluation_record_from_json(const std::string& line);

std::vector<std::string> read_jsonl_lines(const std::string& path);

} // namespace pmas
