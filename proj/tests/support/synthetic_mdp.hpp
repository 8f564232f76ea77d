#pragma once

// Two-state deterministic MDP used to sanity-check DDQN training: action 0
// pays 1 in state A, action 1 pays 1 in state B, everything else pays 0,
// and every action flips the state. Optimal play earns 1 per step.

#include <cstdint>
#include <vector>

#include "hfaos/ddqn.hpp"
#include "hfaos/qnetwork.hpp"
#include "hfaos/replay.hpp"
#include "hfaos/rng.hpp"

namespace mdp {

inline hfaos::StateVector state_vec(bool in_a) {
    return in_a ? hfaos::StateVector{1.0, 0.0} : hfaos::StateVector{0.0, 1.0};
}

inline double step_reward(bool in_a, int action) {
    return (in_a ? action == 0 : action == 1) ? 1.0 : 0.0;
}

inline hfaos::DdqnConfig config() {
    hfaos::DdqnConfig cfg;
    cfg.gamma = 0.5;
    cfg.learning_rate = 0.01;
    cfg.batch_size = 32;
    cfg.target_sync_every = 100;
    cfg.replay_capacity = 5000;
    cfg.warmup = 100;
    cfg.eps_online = 0.2;
    return cfg;
}

// Independent tabular value-iteration oracle for the analytic Q values.
inline std::vector<std::vector<double>> analytic_q(double gamma) {
    std::vector<std::vector<double>> q(2, std::vector<double>(2, 0.0));
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<std::vector<double>> next = q;
        for (int s = 0; s < 2; ++s)
            for (int a = 0; a < 2; ++a) {
                const bool in_a = s == 0;
                const int sp = 1 - s; // every action flips the state
                next[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)] =
                    step_reward(in_a, a) +
                    gamma * std::max(q[static_cast<std::size_t>(sp)][0],
                                     q[static_cast<std::size_t>(sp)][1]);
            }
        q = next;
    }
    return q;
}

struct TrainOutcome {
    hfaos::QNetwork net;
    std::vector<double> losses;
};

inline TrainOutcome train(std::uint64_t seed, int steps) {
    using namespace hfaos;
    const DdqnConfig cfg = config();
    RngStream net_rng = RngStream::substream(seed, 1);
    RngStream act_rng = RngStream::substream(seed, 2);
    RngStream train_rng = RngStream::substream(seed, 3);

    TrainOutcome out{QNetwork({2, 16, 16, 2}, net_rng), {}};
    QNetwork target = sync_target(out.net);
    ReplayBuffer buffer(cfg.replay_capacity);

    bool in_a = true;
    long updates = 0;
    for (int t = 0; t < steps; ++t) {
        const StateVector s = state_vec(in_a);
        const OperatorId a =
            select_epsilon_greedy(out.net, s, cfg.eps_online, act_rng);
        const double r = step_reward(in_a, a.index);
        in_a = !in_a;
        buffer.push({s, a, r, state_vec(in_a)});
        if (buffer.size() >= static_cast<std::size_t>(cfg.warmup)) {
            const auto batch =
                buffer.sample(static_cast<std::size_t>(cfg.batch_size), train_rng);
            out.losses.push_back(ddqn_update(out.net, target, batch, cfg));
            if (++updates % cfg.target_sync_every == 0) target = sync_target(out.net);
        }
    }
    return out;
}

} // namespace mdp
