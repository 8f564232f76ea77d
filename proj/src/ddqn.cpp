#include "hfaos/ddqn.hpp"

#include <algorithm>
#include <cmath>

#include "hfaos/errors.hpp"
#include "hfaos/stateless_aos.hpp"

namespace hfaos {

void DdqnConfig::validate() const {
    if (gamma < 0.0 || gamma >= 1.0) throw ConfigError("gamma must lie in [0, 1)");
    if (learning_rate <= 0.0) throw ConfigError("learning rate must be positive");
    if (batch_size < 1) throw ConfigError("batch size must be positive");
    if (static_cast<std::size_t>(batch_size) > replay_capacity)
        throw ConfigError("batch size exceeds replay capacity");
    if (target_sync_every < 1) throw ConfigError("target sync period must be >= 1");
    if (warmup < 1) throw ConfigError("warmup must be >= 1");
}

double offline_epsilon(const DdqnConfig& cfg, long step, long total_steps) {
    const double anneal_steps =
        std::max(1.0, cfg.eps_offline_frac * static_cast<double>(total_steps));
    const double t = std::min(1.0, static_cast<double>(step) / anneal_steps);
    return cfg.eps_offline_hi + t * (cfg.eps_offline_lo - cfg.eps_offline_hi);
}

OperatorId select_epsilon_greedy(const QNetwork& net, std::span<const double> s,
                                 double eps, RngStream& rng) {
    const int k = net.output_dim();
    if (rng.next_double() < eps)
        return OperatorId{static_cast<int>(rng.next_below(static_cast<std::size_t>(k)))};
    const std::vector<double> q = net.forward(s);
    int best = 0;
    for (int i = 1; i < k; ++i)
        if (q[static_cast<std::size_t>(i)] > q[static_cast<std::size_t>(best)]) best = i;
    return OperatorId{best};
}

double reward(double y_prev, double y_new, bool new_global_best) {
    return assign_credit(y_prev, y_new) + (new_global_best ? 0.5 : 0.0);
}

double ddqn_update(QNetwork& online, const QNetwork& target,
                   std::span<const Transition* const> batch,
                   const DdqnConfig& cfg) {
    if (batch.empty()) throw ConfigError("empty DDQN batch");
    if (online.layer_dims() != target.layer_dims())
        throw DimensionError("online and target networks differ in shape");

    std::vector<QNetwork::Sample> samples;
    samples.reserve(batch.size());
    for (const Transition* t : batch) {
        const std::vector<double> q_next = online.forward(t->s_next);
        int a_star = 0;
        for (int i = 1; i < online.output_dim(); ++i)
            if (q_next[static_cast<std::size_t>(i)] >
                q_next[static_cast<std::size_t>(a_star)])
                a_star = i;
        const double bootstrap =
            target.forward(t->s_next)[static_cast<std::size_t>(a_star)];
        samples.push_back({t->s, t->a.index, t->r + cfg.gamma * bootstrap});
    }

    QNetwork::Gradients grads = online.zero_gradients();
    const double loss = online.batch_gradients(samples, grads);
    online.sgd_step(grads, cfg.learning_rate);
    return loss;
}

} // namespace hfaos
