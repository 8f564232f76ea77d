#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hfaos/benchmarks.hpp"
#include "hfaos/harness.hpp"

using namespace hfaos;

int main(int argc, char** argv) {
    CLI::App app{"hfaos - hybrid adaptive operator selection lab"};
    app.require_subcommand(1);

    std::string config_path, model_path, out_path, results_path, instance_path;
    std::vector<std::string> aos_modes;
    double alpha = 0.05;

    CLI::App* train = app.add_subcommand("train", "offline-train a value network");
    train->add_option("--config", config_path, "experiment config JSON")->required();
    train->add_option("--out", model_path, "model file to write")->required();

    CLI::App* run = app.add_subcommand("run", "run trials and write reports");
    run->add_option("--config", config_path, "experiment config JSON")->required();
    run->add_option("--model", model_path, "model file (overrides config)");
    run->add_option("--out", out_path, "output directory (overrides config)");
    run->add_option("--instance", instance_path,
                    "Solomon instance path (cvrptw; replaces config problems)");
    run->add_option("--aos", aos_modes,
                    "AOS mode(s): hf, hf-nu, hf-na:<p>, sl, sb, sb-u, random "
                    "(overrides config)");

    CLI::App* compare = app.add_subcommand("compare", "rebuild comparisons from trials.csv");
    compare->add_option("--results", results_path, "trials.csv path")->required();
    compare->add_option("--out", out_path, "output directory")->required();
    compare->add_option("--alpha", alpha, "significance level (default 0.05)");

    CLI::App* bench = app.add_subcommand("bench", "benchmark function registry");
    CLI::App* bench_list = bench->add_subcommand("list", "list registered functions");
    bench->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (train->parsed()) {
            ExperimentConfig cfg = ExperimentConfig::from_json_file(config_path);
            offline_train(cfg, model_path);
            std::printf("model written to %s\n", model_path.c_str());
        } else if (run->parsed()) {
            ExperimentConfig cfg = ExperimentConfig::from_json_file(config_path);
            if (!model_path.empty()) cfg.model_path = model_path;
            if (!out_path.empty()) cfg.output_dir = out_path;
            if (!instance_path.empty()) cfg.problems = {instance_path};
            if (!aos_modes.empty()) cfg.aos_modes = aos_modes;
            const std::vector<TrialResult> results = evaluate(cfg);
            const ComparisonTable table =
                build_comparison_table(results, cfg.aos_modes, alpha);
            write_report(results, table, cfg.output_dir);
            std::printf("%zu trials written to %s\n", results.size(),
                        cfg.output_dir.c_str());
        } else if (compare->parsed()) {
            const std::vector<TrialResult> results = read_trials_csv(results_path);
            const ComparisonTable table =
                build_comparison_table(results, modes_in_results(results), alpha);
            write_report(results, table, out_path);
            std::printf("comparisons written to %s\n", out_path.c_str());
        } else if (bench_list->parsed()) {
            std::printf("%-18s %-8s %-20s %s\n", "name", "min_dim", "bounds", "optimum");
            for (const FunctionInfo& f : list_functions()) {
                char bounds[32];
                std::snprintf(bounds, sizeof bounds, "[%g, %g]", f.lower, f.upper);
                std::printf("%-18s %-8d %-20s %s\n", f.name.c_str(), f.min_dim,
                            bounds, f.optimum_note.c_str());
            }
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
