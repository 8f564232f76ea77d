#pragma once

#include "hfaos/core.hpp"
#include "hfaos/features.hpp"

namespace hfaos {

/// Outcome of one operator application inside a host.
struct StepOutcome {
    double y_before = 0.0; // objective the candidate is judged against
    double y_after = 0.0;  // objective of the generated candidate
    bool accepted = false; // host committed the candidate
    bool new_best = false; // strict improvement of the run best
};

/// The meta-heuristic side of the controller loop. A host owns the problem,
/// the incumbent solution(s) and its own RNG stream; each apply() costs
/// exactly one objective evaluation.
class SearchHost {
public:
    virtual ~SearchHost() = default;

    virtual int k_ops() const = 0;
    virtual StepOutcome apply(OperatorId op) = 0;
    virtual double best_objective() const = 0;
    virtual long evaluations() const = 0;
    virtual SearchSnapshot snapshot() const = 0;
};

} // namespace hfaos
