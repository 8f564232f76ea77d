#include "hfaos/stateless_aos.hpp"

#include <algorithm>
#include <cmath>

#include "hfaos/errors.hpp"

namespace hfaos {

double assign_credit(double y_prev, double y_new) {
    const double denom = std::max(std::abs(y_prev), kEps);
    const double rate = (y_prev - y_new) / denom;
    return std::clamp(rate, 0.0, 1.0);
}

StatelessAos::StatelessAos(int k, double alpha, double beta, double p_max)
    : alpha_(alpha), beta_(beta), p_max_(p_max) {
    if (k < 2) throw ConfigError("stateless AOS needs at least 2 operators");
    if (alpha <= 0.0 || alpha >= 1.0 || beta <= 0.0 || beta >= 1.0)
        throw ConfigError("alpha and beta must lie in (0, 1)");
    if (p_max <= 1.0 / static_cast<double>(k) || p_max >= 1.0)
        throw ConfigError("p_max must lie in (1/K, 1)");
    p_.assign(static_cast<std::size_t>(k), 1.0 / static_cast<double>(k));
    q_.assign(static_cast<std::size_t>(k), 0.0);
}

void StatelessAos::update_quality(OperatorId op, double credit) {
    if (op.index < 0 || op.index >= k())
        throw ConfigError("operator index out of range");
    if (credit < 0.0) throw ConfigError("credit must be non-negative");
    auto& q = q_[static_cast<std::size_t>(op.index)];
    q = alpha_ * credit + (1.0 - alpha_) * q;
}

int StatelessAos::argmax_quality() const {
    int best = 0;
    for (int i = 1; i < k(); ++i)
        if (q_[static_cast<std::size_t>(i)] > q_[static_cast<std::size_t>(best)])
            best = i;
    return best;
}

void StatelessAos::update_probabilities() {
    const int winner = argmax_quality();
    const double floor_share = (1.0 - p_max_) / static_cast<double>(k() - 1);
    for (int i = 0; i < k(); ++i) {
        auto& p = p_[static_cast<std::size_t>(i)];
        const double pull = (i == winner) ? p_max_ : floor_share;
        p = beta_ * pull + (1.0 - beta_) * p;
    }
}

void StatelessAos::update(OperatorId op, double credit) {
    update_quality(op, credit);
    update_probabilities();
}

OperatorId StatelessAos::sample(RngStream& rng) const {
    const double u = rng.next_double();
    double acc = 0.0;
    for (int i = 0; i < k(); ++i) {
        acc += p_[static_cast<std::size_t>(i)];
        if (u < acc) return OperatorId{i};
    }
    return OperatorId{k() - 1}; // u landed in the rounding tail
}

} // namespace hfaos
