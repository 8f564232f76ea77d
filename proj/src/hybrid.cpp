#include "hfaos/hybrid.hpp"

#include <algorithm>
#include <cmath>

#include "hfaos/errors.hpp"

namespace hfaos {

void DecisionPolicy::validate() const {
    if (!(0.0 < p_lower && p_lower < p_upper && p_upper < 1.0))
        throw ConfigError("decision policy requires 0 < p_lower < p_upper < 1");
    if (p < 0.0 || p > 1.0) throw ConfigError("decision probability must lie in [0, 1]");
}

ModuleKind choose_module(const DecisionPolicy& policy, RngStream& rng) {
    const double u = rng.next_double(); // consumed in every mode, see header
    switch (policy.mode) {
    case SelectionMode::StatelessOnly:
        return ModuleKind::Stateless;
    case SelectionMode::StateBasedOnly:
        return ModuleKind::StateBased;
    case SelectionMode::UniformRandom:
        return ModuleKind::None;
    case SelectionMode::Adaptive:
    case SelectionMode::Fixed:
        return u < policy.p ? ModuleKind::Stateless : ModuleKind::StateBased;
    }
    return ModuleKind::Stateless;
}

void adjust_p(DecisionPolicy& policy, bool improved) {
    if (policy.mode != SelectionMode::Adaptive) return;
    policy.p = improved ? 0.5 * (policy.p + policy.p_upper)
                        : 0.5 * (policy.p + policy.p_lower);
}

AosModeSpec parse_aos_mode(const std::string& label) {
    AosModeSpec spec;
    spec.label = label;
    if (label == "hf") {
        spec.mode = SelectionMode::Adaptive;
        spec.online_update = true;
        spec.needs_model = true;
    } else if (label == "hf-nu") {
        spec.mode = SelectionMode::Adaptive;
        spec.online_update = false;
        spec.needs_model = true;
    } else if (label.rfind("hf-na:", 0) == 0) {
        spec.mode = SelectionMode::Fixed;
        spec.online_update = true;
        spec.needs_model = true;
        try {
            spec.fixed_p = std::stod(label.substr(6));
        } catch (const std::exception&) {
            throw ConfigError("bad fixed probability in mode: " + label);
        }
        if (spec.fixed_p < 0.0 || spec.fixed_p > 1.0)
            throw ConfigError("fixed probability must lie in [0, 1]: " + label);
    } else if (label == "sl") {
        spec.mode = SelectionMode::StatelessOnly;
    } else if (label == "sb") {
        spec.mode = SelectionMode::StateBasedOnly;
        spec.needs_model = true;
    } else if (label == "sb-u") {
        spec.mode = SelectionMode::StateBasedOnly;
        spec.online_update = true;
        spec.needs_model = true;
    } else if (label == "random") {
        spec.mode = SelectionMode::UniformRandom;
    } else {
        throw ConfigError("unknown AOS mode: " + label);
    }
    return spec;
}

HybridController::HybridController(ControllerConfig cfg, QNetwork net,
                                   std::uint64_t trial_seed)
    : cfg_(cfg),
      policy_(cfg.policy),
      stateless_(cfg.features.k_ops),
      online_(std::move(net)),
      buffer_(cfg.ddqn.replay_capacity),
      extractor_(cfg.features),
      rng_choice_(RngStream::substream(trial_seed, kStreamModuleChoice)),
      rng_select_(RngStream::substream(trial_seed, kStreamOpSelect)),
      rng_train_(RngStream::substream(trial_seed, kStreamTrain)) {
    policy_.validate();
    cfg_.ddqn.validate();
    if (uses_statebased()) {
        if (online_.layer_dims().empty())
            throw ConfigError("selected mode needs a value network");
        if (online_.output_dim() != cfg_.features.k_ops)
            throw ConfigError("network output dim disagrees with operator count");
        if (online_.input_dim() != cfg_.features.dim())
            throw ConfigError("network input dim disagrees with feature spec");
        target_ = sync_target(online_);
    }
}

bool HybridController::uses_statebased() const {
    switch (policy_.mode) {
    case SelectionMode::Adaptive:
    case SelectionMode::Fixed:
    case SelectionMode::StateBasedOnly:
        return true;
    default:
        return false;
    }
}

bool HybridController::uses_stateless() const {
    switch (policy_.mode) {
    case SelectionMode::Adaptive:
    case SelectionMode::Fixed:
    case SelectionMode::StatelessOnly:
        return true;
    default:
        return false;
    }
}

double HybridController::current_epsilon() const {
    if (cfg_.offline_training)
        return offline_epsilon(cfg_.ddqn, global_step_, cfg_.offline_total_steps);
    return cfg_.ddqn.eps_online;
}

void HybridController::begin(SearchHost& host, long budget) {
    if (budget < 1) throw ConfigError("budget must be >= 1");
    if (host.k_ops() != cfg_.features.k_ops)
        throw ConfigError("host operator count disagrees with controller config");
    budget_ = budget;
    t_ = 0;
    policy_ = cfg_.policy;
    policy_.p = policy_.mode == SelectionMode::Adaptive ? policy_.p_upper : policy_.p;
    stateless_ = StatelessAos(cfg_.features.k_ops);
    extractor_ = FeatureExtractor(cfg_.features);
    window_.clear();
    log_.clear();
    if (uses_statebased()) {
        const double used = static_cast<double>(host.evaluations()) /
                            static_cast<double>(budget_);
        state_ = extractor_.extract(host.snapshot(), {}, used);
    }
}

IterationLog HybridController::step(SearchHost& host) {
    ++t_;
    const ModuleKind module = choose_module(policy_, rng_choice_);

    OperatorId op{0};
    switch (module) {
    case ModuleKind::Stateless:
        op = stateless_.sample(rng_select_);
        break;
    case ModuleKind::StateBased:
        op = select_epsilon_greedy(online_, state_, current_epsilon(), rng_select_);
        break;
    case ModuleKind::None:
        op = OperatorId{static_cast<int>(
            rng_select_.next_below(static_cast<std::size_t>(host.k_ops())))};
        break;
    }

    const StepOutcome outcome = host.apply(op);

    // Both modules learn from the shared outcome, whichever one chose.
    if (uses_stateless())
        stateless_.update(op, assign_credit(outcome.y_before, outcome.y_after));

    if (uses_statebased()) {
        const double used = std::min(1.0, static_cast<double>(host.evaluations()) /
                                              static_cast<double>(budget_));
        StateVector next_state = extractor_.extract(host.snapshot(), window_, used);
        if (cfg_.online_update) {
            const double r = reward(outcome.y_before, outcome.y_after, outcome.new_best);
            buffer_.push({state_, op, r, next_state});
            if (buffer_.size() >= static_cast<std::size_t>(cfg_.ddqn.warmup)) {
                const auto batch = buffer_.sample(
                    static_cast<std::size_t>(cfg_.ddqn.batch_size), rng_train_);
                losses_.push_back(ddqn_update(online_, target_, batch, cfg_.ddqn));
                ++updates_;
                if (updates_ % cfg_.ddqn.target_sync_every == 0)
                    target_ = sync_target(online_);
            }
        }
        state_ = std::move(next_state);
    }

    adjust_p(policy_, outcome.y_after < outcome.y_before);

    IterationLog entry;
    entry.t = t_;
    entry.module_used = module;
    entry.op = op;
    entry.y_before = outcome.y_before;
    entry.y_after = outcome.y_after;
    entry.p_after = policy_.p;
    entry.best_so_far = host.best_objective();

    window_.push_back(entry);
    if (window_.size() > static_cast<std::size_t>(cfg_.features.window))
        window_.erase(window_.begin());
    log_.push_back(entry);
    ++global_step_;
    return entry;
}

TrialRunResult HybridController::run(SearchHost& host, long budget) {
    begin(host, budget);
    TrialRunResult result;
    result.initial_best = host.best_objective();
    while (host.evaluations() < budget) step(host);
    result.final_best = host.best_objective();
    result.evaluations = host.evaluations();
    result.log = log_;
    return result;
}

} // namespace hfaos
