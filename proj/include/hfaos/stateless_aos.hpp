#pragma once

#include <vector>

#include "hfaos/core.hpp"
#include "hfaos/rng.hpp"

namespace hfaos {

/// Fitness improvement rate, clamped to [0, 1]. The denominator guard
/// max(|y_prev|, 1e-12) keeps the rate total on zero or negative
/// objectives; the cap stops one step from dominating the quality average.
double assign_credit(double y_prev, double y_new);

/// Stateless operator-selection module: exponentially averaged quality
/// estimates plus the adaptive pursuit rule. The best-quality operator's
/// probability is pulled toward p_max, every other one toward the common
/// floor (1 - p_max) / (K - 1); the probability vector stays on the simplex.
class StatelessAos {
public:
    explicit StatelessAos(int k, double alpha = 0.01, double beta = 0.01,
                          double p_max = 0.85);

    int k() const { return static_cast<int>(p_.size()); }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double p_max() const { return p_max_; }
    const std::vector<double>& probabilities() const { return p_; }
    const std::vector<double>& qualities() const { return q_; }

    /// Q[op] <- alpha * credit + (1 - alpha) * Q[op]. credit >= 0.
    void update_quality(OperatorId op, double credit);

    /// One adaptive pursuit step; winner is argmax Q, lowest index on ties.
    void update_probabilities();

    /// Convenience: quality update followed by a pursuit step, the
    /// once-per-application order used by the controller.
    void update(OperatorId op, double credit);

    /// Categorical draw from P via inverse CDF on a single uniform.
    OperatorId sample(RngStream& rng) const;

    /// Winner of the current quality ranking (lowest index on ties).
    int argmax_quality() const;

private:
    std::vector<double> p_, q_;
    double alpha_, beta_, p_max_;
};

} // namespace hfaos
