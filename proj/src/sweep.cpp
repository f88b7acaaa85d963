#include "pmas/sweep.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <set>

#include "json.hpp"
#include "pmas/scripted_backend.hpp"
#include "pmas/serialization.hpp"
#include "pmas/workflow.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace pmas {

std::string Runtime::trajectories_path() const { return config.out_dir + "/trajectories.jsonl"; }
std::string Runtime::evaluations_path() const { return config.out_dir + "/evaluations.jsonl"; }
std::string Runtime::reports_dir() const { return config.out_dir + "/reports"; }

namespace {

std::map<std::string, TaskSpec> load_tasks(const std::string& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ConfigError("tasks file " + path + " is not valid JSON: " + e.what());
    }
    std::map<std::string, TaskSpec> tasks;
    for (const auto& [id, body] : doc.items()) {
        TaskSpec spec;
        spec.task_id = id;
        spec.prompt_text = body.at("prompt_text").get<std::string>();
        for (const auto& [k, v] : body.at("constraints").items()) {
            spec.constraints[k] = v.get<double>();
        }
        auto v = validate_task_spec(spec);
        if (!v.ok()) throw ConfigError("task " + id + ": " + v.violations.front());
        tasks.emplace(id, std::move(spec));
    }
    return tasks;
}

std::string config_id_for(size_t index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "cfg-%03zu", index);
    return buf;
}

} // namespace

Runtime make_runtime(RunConfig config) {
    Runtime rt;
    rt.config = std::move(config);
    if (rt.config.backend == "live") {
        HttpBackendConfig endpoint = rt.config.endpoint;
        if (const char* key = std::getenv(rt.config.api_key_env.c_str())) {
            endpoint.api_key = key;
        }
        rt.backend = std::make_unique<HttpBackend>(endpoint);
    } else {
        rt.backend = std::make_unique<ScriptedBackend>(rt.config.seed);
    }
    rt.registry = PersonaRegistry::load_library(rt.config.persona_dir);
    auto embed = [&rt](const std::string& text) { return rt.backend->embed(text); };
    rt.graph = KnowledgeGraph::load(rt.config.knowledge_graph, embed);
    rt.corpus = DocumentCorpus::load(rt.config.corpus_dir, embed);
    rt.taxonomy = DomainTaxonomy::load(rt.config.taxonomy_file);
    rt.tasks = load_tasks(rt.config.tasks_file);
    for (const auto& task_id : rt.config.tasks) {
        if (!rt.tasks.count(task_id)) throw ConfigError("unknown task id in config: " + task_id);
        rt.harness[task_id] = read_file(rt.config.harness_dir + "/" + task_id + ".json");
    }
    rt.sandbox = std::make_unique<ExecutionSandbox>(rt.config.sandbox_timeout_seconds);
    fs::create_directories(rt.config.out_dir);
    return rt;
}

SweepStats cmd_sweep(Runtime& runtime, bool resume) {
    SweepStats stats;
    const auto assignments = runtime.registry.enumerate_configurations();

    std::set<std::pair<std::string, std::string>> done;
    if (resume && fs::exists(runtime.trajectories_path())) {
        for (const auto& line : read_jsonl_lines(runtime.trajectories_path())) {
            Trajectory t = trajectory_from_json(line);
            done.insert({t.config_id, t.task_id});
        }
    } else if (fs::exists(runtime.trajectories_path())) {
        fs::remove(runtime.trajectories_path());
    }

    struct Pair {
        size_t config_index;
        std::string config_id;
        std::string task_id;
    };
    std::vector<Pair> pending;
    for (size_t i = 0; i < assignments.size(); ++i) {
        for (const auto& task_id : runtime.config.tasks) {
            const std::string id = config_id_for(i);
            if (done.count({id, task_id})) {
                ++stats.skipped;
                continue;
            }
            pending.push_back({i, id, task_id});
        }
    }

    WorkflowEngine engine(*runtime.backend, runtime.registry, runtime.graph, runtime.corpus,
                          *runtime.sandbox, runtime.config.workflow());
    std::ofstream out(runtime.trajectories_path(), std::ios::app | std::ios::binary);
    if (!out) throw ConfigError("cannot open " + runtime.trajectories_path() + " for append");

    // Chunked execution: up to `parallelism` pairs in flight, results written
    // in enumeration order so repeated sweeps are byte-identical.
    const size_t chunk = static_cast<size_t>(runtime.config.parallelism);
    for (size_t base = 0; base < pending.size(); base += chunk) {
        const size_t end = std::min(pending.size(), base + chunk);
        std::vector<std::future<Trajectory>> futures;
        for (size_t i = base; i < end; ++i) {
            const Pair& pair = pending[i];
            futures.push_back(std::async(std::launch::async, [&runtime, &engine, pair,
                                                              &assignments] {
                return engine.run_configuration(pair.config_id, assignments[pair.config_index],
                                                runtime.tasks.at(pair.task_id),
                                                runtime.harness.at(pair.task_id));
            }));
        }
        for (size_t i = base; i < end; ++i) {
            Trajectory t = futures[i - base].get();
            if (t.status == TerminalStatus::Error) {
                ++stats.errors;
                std::cerr << "sweep: " << t.config_id << "/" << t.task_id << " errored: " << t.error
                          << "\n";
            }
            out << trajectory_to_json(t) << "\n";
            ++stats.executed;
        }
    }
    return stats;
}

EvaluateStats cmd_evaluate(Runtime& runtime) {
    EvaluateStats stats;
    EvaluatorConfig eval_config;
    eval_config.convergence_epsilon = runtime.config.convergence_epsilon;
    TrajectoryEvaluator evaluator(*runtime.backend, runtime.registry, runtime.taxonomy,
                                  eval_config);
    std::ofstream out(runtime.evaluations_path(), std::ios::trunc | std::ios::binary);
    if (!out) throw ConfigError("cannot open " + runtime.evaluations_path() + " for write");
    if (!fs::exists(runtime.trajectories_path())) {
        throw ConfigError("trajectory store not found: " + runtime.trajectories_path());
    }
    for (const auto& line : read_jsonl_lines(runtime.trajectories_path())) {
        Trajectory t = trajectory_from_json(line);
        if (t.status == TerminalStatus::Error) {
            ++stats.skipped;
            std::cerr << "evaluate: skipping errored pair " << t.config_id << "/" << t.task_id
                      << "\n";
            continue;
        }
        auto task_it = runtime.tasks.find(t.task_id);
        if (task_it == runtime.tasks.end()) {
            throw ConfigError("trajectory references unknown task " + t.task_id);
        }
        EvaluationRecord record = evaluator.evaluate(t, task_it->second);
        if (!record.complete) ++stats.incomplete;
        out << evaluation_record_to_json(record) << "\n";
        ++stats.evaluated;
    }
    return stats;
}

} // namespace pmas
