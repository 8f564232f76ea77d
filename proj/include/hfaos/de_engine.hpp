#pragma once

#include <vector>

#include "hfaos/benchmarks.hpp"
#include "hfaos/core.hpp"
#include "hfaos/rng.hpp"
#include "hfaos/search_host.hpp"

namespace hfaos {

/// Differential evolution settings. The budget counts objective
/// evaluations, including the ones spent on initialization.
struct DeConfig {
    int population_size = 50; // NP
    double scale_factor = 0.5;  // F
    double crossover_rate = 0.9; // CR
    long budget = 10000;

    void validate() const; // ConfigError on violation
};

/// Mutation strategy pool, K = 4.
enum DeStrategy : int {
    kRand1 = 0,
    kRand2 = 1,
    kRandToBest2 = 2,
    kCurrentToRand1 = 3,
};
inline constexpr int kDeOperatorCount = 4;

struct Population {
    std::vector<std::vector<double>> members;
    std::vector<Objective> objectives;
    int best_index = 0;

    int size() const { return static_cast<int>(members.size()); }
    double best_value() const { return objectives[static_cast<std::size_t>(best_index)].value; }
};

/// NP members drawn uniformly inside the bounds, evaluated, best located.
Population init_population(const RealFunction& f, const DeConfig& cfg, RngStream& rng);

/// Builds one trial vector for `target`: mutant per the named strategy from
/// donors distinct from each other and from the target, binomial crossover
/// against the target (skipped for current-to-rand/1), then bound clamping.
/// Throws ConfigError when the population cannot supply enough donors.
std::vector<double> apply_operator(OperatorId op, const Population& pop, int target,
                                   const DeConfig& cfg, const RealFunction& f,
                                   RngStream& rng);

enum class SurvivorDecision { KeepTarget, TakeTrial };

/// Greedy replacement; ties go to the trial (standard DE convention, looser
/// than the controller's strict improvement test).
inline SurvivorDecision select_survivor(Objective target_obj, Objective trial_obj) {
    return trial_obj.value <= target_obj.value ? SurvivorDecision::TakeTrial
                                               : SurvivorDecision::KeepTarget;
}

/// Population engine as a controller host. Targets are visited round-robin;
/// one apply() builds, evaluates and greedily settles one trial vector.
/// The step outcome compares the trial against its target parent.
class DeHost final : public SearchHost {
public:
    DeHost(const RealFunction& f, DeConfig cfg, RngStream rng);

    int k_ops() const override { return kDeOperatorCount; }
    StepOutcome apply(OperatorId op) override;
    double best_objective() const override { return best_value_; }
    long evaluations() const override { return evaluations_; }

    /// Dispersion = mean distance to the population centroid; the state
    /// objective is the population mean.
    SearchSnapshot snapshot() const override;

    const Population& population() const { return pop_; }
    const std::vector<double>& best_member() const;

private:
    const RealFunction& f_;
    DeConfig cfg_;
    RngStream rng_;
    Population pop_;
    int cursor_ = 0;
    long evaluations_ = 0;
    double best_value_ = 0.0;
    double mean_value_ = 0.0;
};

} // namespace hfaos
