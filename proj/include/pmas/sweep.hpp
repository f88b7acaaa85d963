#pragma once

#include <memory>

#include "pmas/config.hpp"
#include "pmas/evaluator.hpp"
#include "pmas/knowledge.hpp"
#include "pmas/persona.hpp"
#include "pmas/sandbox.hpp"
#include "pmas/taxonomy.hpp"

namespace pmas {

// Everything a sweep/evaluate/report invocation needs, loaded once.
struct Runtime {
    RunConfig config;
    std::unique_ptr<Backend> backend;
    PersonaRegistry registry;
    KnowledgeGraph graph;
    DocumentCorpus corpus;
    DomainTaxonomy taxonomy;
    std::map<std::string, TaskSpec> tasks;          // keyed by task id
    std::map<std::string, std::string> harness;     // task id -> stub state JSON
    std::unique_ptr<ExecutionSandbox> sandbox;

    std::string trajectories_path() const;
    std::string evaluations_path() const;
    std::string reports_dir() const;
};

Runtime make_runtime(RunConfig config);

struct SweepStats {
    int executed = 0;
    int skipped = 0;
    int errors = 0;
};

// Runs enumerate_configurations x selected tasks. Already-completed
// (config, task) pairs are skipped when resuming; results append in
// enumeration order through a single writer.
SweepStats cmd_sweep(Runtime& runtime, bool resume);

struct EvaluateStats {
    int evaluated = 0;
    int skipped = 0;    // error-status trajectories
    int incomplete = 0; // records with a failed branch
};

EvaluateStats cmd_evaluate(Runtime& runtime);

} // namespace pmas
