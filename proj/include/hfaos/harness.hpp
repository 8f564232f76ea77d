#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hfaos/hybrid.hpp"
#include "hfaos/wilcoxon.hpp"

namespace hfaos {

/// Experiment description, loadable from a JSON file with these fields as
/// keys. Problems are "name:dim" entries for the real domain and Solomon
/// instance paths for cvrptw.
struct ExperimentConfig {
    std::string domain = "real";
    std::vector<std::string> problems;
    std::vector<std::string> aos_modes;
    int trials = 30;
    long budget = 10000;
    std::uint64_t base_seed = 1;
    std::string output_dir = ".";
    std::string model_path;
    int episodes = 20; // offline training campaigns only

    // engine settings, fixed across modes
    int population_size = 50;
    double scale_factor = 0.5;
    double crossover_rate = 0.9;

    static ExperimentConfig from_json_file(const std::string& path);
    void validate(bool for_training = false) const;
};

struct TrialResult {
    std::string problem;
    std::string mode;
    int trial = 0;
    double best = 0.0;
    long evaluations = 0;
    double seconds = 0.0;      // measured wall clock; lives in timings.csv only
    double initial_best = 0.0; // not serialized
};

struct ComparisonCell {
    int better = 0;
    int comparable = 0;
    int worse = 0;
};

/// Pairwise cells for every unordered mode pair, row index < column index
/// in `modes` order.
struct ComparisonTable {
    std::vector<std::string> modes;
    std::vector<std::vector<ComparisonCell>> cells; // cells[i][j], j > i
    double alpha = 0.05;
};

/// Pre-trains the value network: episodes round-robin over cfg.problems,
/// epsilon-greedy selection with the annealed offline schedule, replay and
/// network persisting across episodes. Writes the model file to
/// `model_out` and the per-update loss trace to output_dir/training_loss.csv.
void offline_train(const ExperimentConfig& cfg, const std::string& model_out);

/// Runs every (problem, mode, trial) cell; trial seeds are base_seed +
/// trial, shared across modes so each trial index starts from the same
/// initial solution or population. Trials run in parallel (HF_AOS_THREADS
/// caps the worker count); results come back in deterministic order.
std::vector<TrialResult> evaluate(const ExperimentConfig& cfg);

/// Per-problem Wilcoxon comparison of two modes at significance alpha.
/// A problem counts as better/worse only when p < alpha; the direction is
/// the sign of the mean difference. Throws ConfigError on unequal trial
/// counts.
ComparisonCell build_comparison(const std::vector<TrialResult>& results,
                                const std::string& mode_row,
                                const std::string& mode_col, double alpha = 0.05);

ComparisonTable build_comparison_table(const std::vector<TrialResult>& results,
                                       const std::vector<std::string>& modes,
                                       double alpha = 0.05);

/// Writes trials.csv (problem, mode, trial, best, evals, seconds),
/// comparison.csv, a plain-text comparison matrix and timings.csv into
/// `dir`. Everything except timings.csv is byte-deterministic for a given
/// config and seed; the seconds column in trials.csv is therefore written
/// as 0 and measured wall time goes to timings.csv.
void write_report(const std::vector<TrialResult>& results,
                  const ComparisonTable& table, const std::string& dir);

std::vector<TrialResult> read_trials_csv(const std::string& path);

/// Modes in first-appearance order of a result list (used by the compare
/// subcommand when only trials.csv is available).
std::vector<std::string> modes_in_results(const std::vector<TrialResult>& results);

} // namespace hfaos
