#pragma once

#include <span>

#include "hfaos/core.hpp"
#include "hfaos/qnetwork.hpp"
#include "hfaos/replay.hpp"
#include "hfaos/rng.hpp"

namespace hfaos {

struct DdqnConfig {
    double gamma = 0.99;
    double learning_rate = 1e-3;
    int batch_size = 64;
    int target_sync_every = 500;    // gradient updates between target copies
    std::size_t replay_capacity = 20000;
    int warmup = 500;               // stored transitions before the first update
    double eps_offline_hi = 1.0;    // linear anneal during offline training
    double eps_offline_lo = 0.05;
    double eps_offline_frac = 0.2;  // fraction of offline steps spent annealing
    double eps_online = 0.05;

    void validate() const;
};

/// Exploration rate at a given offline training step; linear from hi to lo
/// over the first eps_offline_frac of total steps, flat afterwards.
double offline_epsilon(const DdqnConfig& cfg, long step, long total_steps);

/// With probability eps a uniform operator, otherwise the argmax Q-value
/// (lowest index on ties).
OperatorId select_epsilon_greedy(const QNetwork& net, std::span<const double> s,
                                 double eps, RngStream& rng);

/// Improvement-rate reward clamped to [0, 1], plus a 0.5 bonus when the
/// step produced a new global best. Commensurate with the stateless credit.
double reward(double y_prev, double y_new, bool new_global_best);

/// One Double-DQN gradient step on the online network. Targets use the
/// online net's argmax action evaluated by the target net:
///   y = r + gamma * Q_target(s', argmax_a Q_online(s', a)).
/// Returns the batch MSE loss; the target network is not touched.
double ddqn_update(QNetwork& online, const QNetwork& target,
                   std::span<const Transition* const> batch,
                   const DdqnConfig& cfg);

/// Deep copy of the online parameters into a fresh target network.
inline QNetwork sync_target(const QNetwork& online) { return online; }

} // namespace hfaos
