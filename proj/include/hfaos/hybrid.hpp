#pragma once

#include <string>
#include <vector>

#include "hfaos/core.hpp"
#include "hfaos/ddqn.hpp"
#include "hfaos/features.hpp"
#include "hfaos/qnetwork.hpp"
#include "hfaos/replay.hpp"
#include "hfaos/rng.hpp"
#include "hfaos/search_host.hpp"
#include "hfaos/stateless_aos.hpp"

namespace hfaos {

/// How each step's operator choice is delegated.
enum class SelectionMode {
    Adaptive,      // probability p, averaged toward p_upper / p_lower
    Fixed,         // probability p, never adjusted
    StatelessOnly, // bandit module alone
    StateBasedOnly, // value network alone
    UniformRandom, // uniform operator choice, both modules bypassed
};

/// The scalar decision probability p with its bounds. p is the chance the
/// stateless module picks the operator; improvements pull it toward
/// p_upper, everything else toward p_lower, each time halving the gap.
struct DecisionPolicy {
    SelectionMode mode = SelectionMode::Adaptive;
    double p = 0.5;
    double p_upper = 0.5;
    double p_lower = 0.1;

    void validate() const; // ConfigError on broken bounds
};

/// One uniform is always consumed from `rng` so that Adaptive and Fixed
/// configurations see identical downstream draw sequences.
ModuleKind choose_module(const DecisionPolicy& policy, RngStream& rng);

/// p <- (p + p_upper)/2 on improvement, (p + p_lower)/2 otherwise.
/// No-op in non-Adaptive modes.
void adjust_p(DecisionPolicy& policy, bool improved);

/// Parsed CLI/config selector label: hf, hf-nu, hf-na:<p>, sl, sb, sb-u,
/// random.
struct AosModeSpec {
    std::string label;
    SelectionMode mode = SelectionMode::Adaptive;
    bool online_update = false;
    double fixed_p = 0.5;
    bool needs_model = false;
};

AosModeSpec parse_aos_mode(const std::string& label); // ConfigError on unknown

/// RNG substream ids per trial seed, fixed so runs are reproducible and
/// modes stay comparable under common random numbers.
inline constexpr std::uint64_t kStreamEngine = 0;
inline constexpr std::uint64_t kStreamModuleChoice = 1;
inline constexpr std::uint64_t kStreamOpSelect = 2;
inline constexpr std::uint64_t kStreamTrain = 3;

struct ControllerConfig {
    DecisionPolicy policy;
    bool online_update = true;
    DdqnConfig ddqn;
    FeatureSpec features;
    // Offline-training campaigns anneal exploration over a known total
    // step count that spans episodes.
    bool offline_training = false;
    long offline_total_steps = 0;
};

struct TrialRunResult {
    double initial_best = 0.0;
    double final_best = 0.0;
    long evaluations = 0;
    std::vector<IterationLog> log;
};

/// The per-application loop: pick a module by probability p, let it select
/// an operator, apply and evaluate, then feed the shared outcome back into
/// both modules (credit + pursuit update for the bandit, transition +
/// Double-DQN step for the network) and move p. Owns its RNG substreams,
/// the replay buffer and the recent-history window behind the features.
class HybridController {
public:
    HybridController(ControllerConfig cfg, QNetwork net, std::uint64_t trial_seed);

    /// Resets per-run state (bandit, p, history) and extracts the initial
    /// state vector. Network, replay buffer and training counters persist
    /// so offline episodes accumulate experience.
    void begin(SearchHost& host, long budget);

    IterationLog step(SearchHost& host);

    /// begin() plus budgeted steps until host evaluations reach `budget`.
    TrialRunResult run(SearchHost& host, long budget);

    const DecisionPolicy& policy() const { return policy_; }
    const StatelessAos& stateless() const { return stateless_; }
    const QNetwork& network() const { return online_; }
    const ReplayBuffer& replay() const { return buffer_; }
    long gradient_updates() const { return updates_; }
    long global_steps() const { return global_step_; }
    const std::vector<double>& training_losses() const { return losses_; }
    const std::vector<IterationLog>& log() const { return log_; }

private:
    bool uses_statebased() const;
    bool uses_stateless() const;
    double current_epsilon() const;

    ControllerConfig cfg_;
    DecisionPolicy policy_;
    StatelessAos stateless_;
    QNetwork online_, target_;
    ReplayBuffer buffer_;
    FeatureExtractor extractor_;
    RngStream rng_choice_, rng_select_, rng_train_;

    long budget_ = 0;
    long t_ = 0;
    long global_step_ = 0; // persists across begin() calls
    long updates_ = 0;
    StateVector state_;
    std::vector<IterationLog> window_; // last <= spec.window entries, oldest first
    std::vector<IterationLog> log_;
    std::vector<double> losses_;
};

} // namespace hfaos
