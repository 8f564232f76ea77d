#pragma once

#include <span>

#include "hfaos/core.hpp"

namespace hfaos {

/// Shape of the state vector: 8 run-level features plus a selection share
/// and a mean credit per operator, everything in [0, 1].
struct FeatureSpec {
    int k_ops = 4;
    int window = 50; // recent applications considered

    int dim() const { return 8 + 2 * k_ops; }
};

/// Scalars the hosting meta-heuristic exposes about its current search
/// state. Dispersion is host-defined (population spread for the population
/// engine, relative spread of the recent objective window for the
/// single-trajectory engine).
struct SearchSnapshot {
    double current_objective = 0.0;
    double best_objective = 0.0;
    double dispersion = 0.0;
};

/// Turns a snapshot plus the recent iteration history into the state
/// vector. Keeps only one piece of cross-call state: the running maximum
/// of the dispersion scalar used for its normalization.
class FeatureExtractor {
public:
    explicit FeatureExtractor(FeatureSpec spec) : spec_(spec) {}

    const FeatureSpec& spec() const { return spec_; }

    /// history = most recent iteration logs, oldest first, at most
    /// spec.window entries. Cold start (empty history) yields budget and
    /// zero flags with uniform per-operator shares.
    StateVector extract(const SearchSnapshot& snap,
                        std::span<const IterationLog> history,
                        double budget_used);

private:
    FeatureSpec spec_;
    double max_dispersion_ = 0.0;
};

} // namespace hfaos
