#include <iostream>

#include "CLI11.hpp"
#include "pmas/report.hpp"
#include "pmas/sweep.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string backend_override;
    std::string tasks_override;
    std::string out_override;
    int parallelism_override = 0;
};

pmas::Runtime build_runtime(const CommonOpts& opts) {
    pmas::RunConfig config = pmas::load_run_config(opts.config_path);
    if (!opts.backend_override.empty()) config.backend = opts.backend_override;
    if (!opts.out_override.empty()) config.out_dir = opts.out_override;
    if (opts.parallelism_override > 0) config.parallelism = opts.parallelism_override;
    if (!opts.tasks_override.empty()) {
        config.tasks.clear();
        std::string item;
        std::istringstream ss(opts.tasks_override);
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) config.tasks.push_back(item);
        }
    }
    auto v = pmas::validate_run_config(config);
    if (!v.ok()) throw pmas::ConfigError("invalid run config: " + v.violations.front());
    return pmas::make_runtime(std::move(config));
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "Run configuration document")->required();
    cmd->add_option("--backend", opts.backend_override, "Override backend (scripted|live)");
    cmd->add_option("--tasks", opts.tasks_override, "Comma-separated task ids");
    cmd->add_option("--out", opts.out_override, "Override output directory");
    cmd->add_option("--parallelism", opts.parallelism_override, "Concurrent configuration runs");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Persona-driven multi-agent orchestration and evaluation harness"};
    app.require_subcommand(1);

    CommonOpts opts;
    bool resume = false;

    auto* sweep = app.add_subcommand("sweep", "Run the configuration-task sweep");
    add_common(sweep, opts);
    sweep->add_flag("--resume", resume, "Skip (config, task) pairs already in the store");

    auto* evaluate = app.add_subcommand("evaluate", "Score stored trajectories offline");
    add_common(evaluate, opts);

    auto* report = app.add_subcommand("report", "Emit the CSV report bundle");
    add_common(report, opts);

    auto* validate = app.add_subcommand("validate-personas", "Validate the persona library");
    add_common(validate, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) {
            auto runtime = build_runtime(opts);
            auto stats = pmas::cmd_sweep(runtime, resume);
            std::cout << "sweep: executed=" << stats.executed << " skipped=" << stats.skipped
                      << " errors=" << stats.errors << "\n";
            return stats.errors > 0 ? 1 : 0;
        }
        if (evaluate->parsed()) {
            auto runtime = build_runtime(opts);
            auto stats = pmas::cmd_evaluate(runtime);
            std::cout << "evaluate: evaluated=" << stats.evaluated
                      << " skipped=" << stats.skipped << " incomplete=" << stats.incomplete
                      << "\n";
            return stats.incomplete > 0 ? 1 : 0;
        }
        if (report->parsed()) {
            auto runtime = build_runtime(opts);
            auto warnings = pmas::cmd_report(runtime);
            for (const auto& w : warnings) std::cerr << "report: " << w << "\n";
            std::cout << "report: bundle written to " << runtime.reports_dir() << "\n";
            return 0;
        }
        if (validate->parsed()) {
            pmas::RunConfig config = pmas::load_run_config(opts.config_path);
            auto registry = pmas::PersonaRegistry::load_library(config.persona_dir);
            for (pmas::AgentRole role : pmas::kAllRoles) {
                std::cout << pmas::role_name(role) << ":";
                for (const auto& id : registry.personas_for_role(role)) std::cout << " " << id;
                std::cout << "\n";
            }
            std::cout << "validate-personas: " << registry.size() << " personas ok\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
