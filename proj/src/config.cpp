#include "pmas/config.hpp"

#include <filesystem>

#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace pmas {

WorkflowConfig RunConfig::workflow() const {
    WorkflowConfig wf;
    wf.limits = limits;
    wf.candidate_paths = candidate_paths;
    wf.memory_window = memory_window;
    wf.retrieval = retrieval;
    wf.checkers = checkers;
    wf.generation_temperature = generation_temperature;
    wf.role_temperature_overrides = role_temperature_overrides;
    return wf;
}

RunConfig load_run_config(const std::string& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ConfigError("run config " + path + " is not valid JSON: " + e.what());
    }
    RunConfig cfg;
    const fs::path base = fs::absolute(fs::path(path)).parent_path();
    auto resolve = [&](const std::string& p) {
        if (p.empty() || fs::path(p).is_absolute()) return p;
        return (base / p).lexically_normal().string();
    };
    cfg.backend = doc.value("backend", cfg.backend);
    if (doc.contains("endpoint")) {
        const auto& e = doc["endpoint"];
        cfg.endpoint.base_url = e.value("base_url", cfg.endpoint.base_url);
        cfg.api_key_env = e.value("api_key_env", cfg.api_key_env);
        cfg.endpoint.model_generation = e.value("model_generation", cfg.endpoint.model_generation);
        cfg.endpoint.model_judge = e.value("model_judge", cfg.endpoint.model_judge);
        cfg.endpoint.model_embedding = e.value("model_embedding", cfg.endpoint.model_embedding);
        cfg.endpoint.max_retries = e.value("max_retries", cfg.endpoint.max_retries);
        cfg.endpoint.retry_base_ms = e.value("retry_base_ms", cfg.endpoint.retry_base_ms);
        cfg.endpoint.timeout_seconds = e.value("timeout_seconds", cfg.endpoint.timeout_seconds);
    }
    cfg.persona_dir = resolve(doc.value("persona_dir", cfg.persona_dir));
    cfg.knowledge_graph = resolve(doc.value("knowledge_graph", cfg.knowledge_graph));
    cfg.corpus_dir = resolve(doc.value("corpus_dir", cfg.corpus_dir));
    cfg.taxonomy_file = resolve(doc.value("taxonomy", cfg.taxonomy_file));
    cfg.tasks_file = resolve(doc.value("tasks_file", cfg.tasks_file));
    cfg.harness_dir = resolve(doc.value("harness_dir", cfg.harness_dir));
    if (doc.contains("tasks")) cfg.tasks = doc["tasks"].get<std::vector<std::string>>();
    if (doc.contains("limits")) {
        const auto& l = doc["limits"];
        cfg.limits.negotiation = l.value("negotiation", cfg.limits.negotiation);
        cfg.limits.refinement = l.value("refinement", cfg.limits.refinement);
        cfg.limits.runs = l.value("runs", cfg.limits.runs);
    }
    cfg.parallelism = doc.value("parallelism", cfg.parallelism);
    cfg.out_dir = resolve(doc.value("out_dir", cfg.out_dir));
    cfg.seed = doc.value("seed", cfg.seed);
    cfg.candidate_paths = doc.value("candidate_paths", cfg.candidate_paths);
    cfg.memory_window = doc.value("memory_window", cfg.memory_window);
    if (doc.contains("retrieval")) {
        const auto& r = doc["retrieval"];
        cfg.retrieval.k_paths = r.value("k_paths", cfg.retrieval.k_paths);
        cfg.retrieval.k_nodes = r.value("k_nodes", cfg.retrieval.k_nodes);
        cfg.retrieval.k_docs = r.value("k_docs", cfg.retrieval.k_docs);
        cfg.retrieval.max_path_hops = r.value("max_path_hops", cfg.retrieval.max_path_hops);
    }
    if (doc.contains("thresholds")) {
        const auto& t = doc["thresholds"];
        cfg.checkers.threshold_structure = t.value("structure", cfg.checkers.threshold_structure);
        cfg.checkers.threshold_runtime = t.value("runtime", cfg.checkers.threshold_runtime);
        cfg.checkers.threshold_policy = t.value("policy", cfg.checkers.threshold_policy);
        cfg.checkers.threshold_formal = t.value("formal", cfg.checkers.threshold_formal);
    }
    if (doc.contains("forbidden_constructs")) {
        cfg.checkers.forbidden_constructs =
            doc["forbidden_constructs"].get<std::vector<std::string>>();
    }
    cfg.sandbox_timeout_seconds = doc.value("sandbox_timeout_seconds", cfg.sandbox_timeout_seconds);
    if (doc.contains("temperature")) {
        cfg.generation_temperature = doc["temperature"].value("generation", cfg.generation_temperature);
        cfg.evaluation_temperature = doc["temperature"].value("evaluation", cfg.evaluation_temperature);
    }
    if (doc.contains("role_temperature_overrides")) {
        cfg.role_temperature_overrides =
            doc["role_temperature_overrides"].get<std::map<std::string, double>>();
    }
    cfg.convergence_epsilon = doc.value("convergence_epsilon", cfg.convergence_epsilon);
    auto v = validate_run_config(cfg);
    if (!v.ok()) throw ConfigError("invalid run config: " + v.violations.front());
    return cfg;
}

ValidationResult validate_run_config(const RunConfig& config) {
    ValidationResult result;
    if (config.backend != "scripted" && config.backend != "live") {
        result.violations.push_back("backend must be 'scripted' or 'live'");
    }
    auto in_range = [&](int v, const char* name) {
        if (v < 1 || v > 3) {
            result.violations.push_back(std::string(name) + " must be within [1,3]");
        }
    };
    in_range(config.limits.negotiation, "limits.negotiation");
    in_range(config.limits.refinement, "limits.refinement");
    in_range(config.limits.runs, "limits.runs");
    if (config.parallelism < 1) result.violations.push_back("parallelism must be >= 1");
    if (config.tasks.empty()) result.violations.push_back("tasks must be non-empty");
    if (config.backend == "live" && config.endpoint.base_url.empty()) {
        result.violations.push_back("live backend requires endpoint.base_url");
    }
    return result;
}

} // namespace pmas
