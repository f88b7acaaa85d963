#pragma once

#include <map>
#include <string>
#include <vector>

#include "pmas/checkers.hpp"
#include "pmas/http_backend.hpp"
#include "pmas/workflow.hpp"

namespace pmas {

// One structured configuration document governs a run; see docs/formats.md.
// Relative paths are resolved against the config file's directory.
struct RunConfig {
    std::string backend = "scripted"; // "scripted" | "live"
    HttpBackendConfig endpoint;
    std::string api_key_env = "OPENAI_API_KEY";

    std::string persona_dir = "data/personas";
    std::string knowledge_graph = "data/knowledge/graph.json";
    std::string corpus_dir = "data/knowledge/docs";
    std::string taxonomy_file = "data/taxonomy.json";
    std::string tasks_file = "data/tasks.json";
    std::string harness_dir = "data/harness";

    std::vector<std::string> tasks = {"Q1", "Q2"};
    WorkflowLimits limits;
    int parallelism = 4;
    std::string out_dir = "out";
    std::uint64_t seed = 42;

    int candidate_paths = 3;
    size_t memory_window = 8;
    RetrievalConfig retrieval;
    CheckerConfig checkers;
    int sandbox_timeout_seconds = 10;
    double generation_temperature = kGenerationTemperature;
    double evaluation_temperature = kEvaluationTemperature;
    std::map<std::string, double> role_temperature_overrides;
    double convergence_epsilon = 1e-6;

    WorkflowConfig workflow() const;
};

RunConfig load_run_config(const std::string& path);
ValidationResult validate_run_config(const RunConfig& config);

} // namespace pmas
