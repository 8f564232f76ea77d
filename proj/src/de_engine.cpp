#include "hfaos/de_engine.hpp"

#include <algorithm>
#include <cmath>

#include "hfaos/errors.hpp"

namespace hfaos {

void DeConfig::validate() const {
    if (population_size < 5)
        throw ConfigError("population size must be >= 5");
    if (scale_factor <= 0.0 || scale_factor > 2.0)
        throw ConfigError("scale factor must lie in (0, 2]");
    if (crossover_rate < 0.0 || crossover_rate > 1.0)
        throw ConfigError("crossover rate must lie in [0, 1]");
    if (budget < 1) throw ConfigError("budget must be >= 1");
    if (budget < population_size)
        throw ConfigError("budget cannot cover population initialization");
}

Population init_population(const RealFunction& f, const DeConfig& cfg, RngStream& rng) {
    cfg.validate();
    Population pop;
    pop.members.resize(static_cast<std::size_t>(cfg.population_size));
    pop.objectives.resize(static_cast<std::size_t>(cfg.population_size));
    for (int i = 0; i < cfg.population_size; ++i) {
        auto& x = pop.members[static_cast<std::size_t>(i)];
        x.resize(static_cast<std::size_t>(f.dim()));
        for (int d = 0; d < f.dim(); ++d)
            x[static_cast<std::size_t>(d)] = rng.uniform(f.lower(d), f.upper(d));
        pop.objectives[static_cast<std::size_t>(i)] = f.evaluate(x);
        if (pop.objectives[static_cast<std::size_t>(i)].value <
            pop.objectives[static_cast<std::size_t>(pop.best_index)].value)
            pop.best_index = i;
    }
    return pop;
}

namespace {

// Draws `n` pairwise-distinct indices from [0, NP) excluding `target`.
void draw_donors(int n, int np, int target, RngStream& rng, int* out) {
    if (np - 1 < n) throw ConfigError("population too small for the strategy");
    int drawn = 0;
    while (drawn < n) {
        const int cand = static_cast<int>(rng.next_below(static_cast<std::size_t>(np)));
        if (cand == target) continue;
        bool dup = false;
        for (int i = 0; i < drawn; ++i)
            if (out[i] == cand) dup = true;
        if (dup) continue;
        out[drawn++] = cand;
    }
}

} // namespace

std::vector<double> apply_operator(OperatorId op, const Population& pop, int target,
                                   const DeConfig& cfg, const RealFunction& f,
                                   RngStream& rng) {
    if (op.index < 0 || op.index >= kDeOperatorCount)
        throw ConfigError("unknown DE strategy index");
    const int np = pop.size();
    const std::size_t dim = pop.members[static_cast<std::size_t>(target)].size();
    const double F = cfg.scale_factor;
    const auto& x = pop.members;
    const auto at = [&](int i) -> const std::vector<double>& {
        return x[static_cast<std::size_t>(i)];
    };

    int r[5];
    std::vector<double> v(dim, 0.0);
    bool crossover = true;

    switch (op.index) {
    case kRand1: {
        draw_donors(3, np, target, rng, r);
        for (std::size_t d = 0; d < dim; ++d)
            v[d] = at(r[0])[d] + F * (at(r[1])[d] - at(r[2])[d]);
        break;
    }
    case kRand2: {
        draw_donors(5, np, target, rng, r);
        for (std::size_t d = 0; d < dim; ++d)
            v[d] = at(r[0])[d] + F * (at(r[1])[d] - at(r[2])[d]) +
                   F * (at(r[3])[d] - at(r[4])[d]);
        break;
    }
    case kRandToBest2: {
        draw_donors(5, np, target, rng, r);
        const auto& best = at(pop.best_index);
        for (std::size_t d = 0; d < dim; ++d)
            v[d] = at(r[0])[d] + F * (best[d] - at(r[0])[d]) +
                   F * (at(r[1])[d] - at(r[2])[d]) + F * (at(r[3])[d] - at(r[4])[d]);
        break;
    }
    case kCurrentToRand1: {
        draw_donors(3, np, target, rng, r);
        const double k = rng.next_double(); // fresh combination weight per use
        const auto& xt = at(target);
        for (std::size_t d = 0; d < dim; ++d)
            v[d] = xt[d] + k * (at(r[0])[d] - xt[d]) + F * (at(r[1])[d] - at(r[2])[d]);
        crossover = false; // rotation-invariant by convention
        break;
    }
    }

    if (crossover) {
        const auto& xt = at(target);
        const std::size_t jrand = rng.next_below(dim);
        for (std::size_t d = 0; d < dim; ++d) {
            const bool take = d == jrand || rng.next_double() < cfg.crossover_rate;
            if (!take) v[d] = xt[d];
        }
    }

    for (std::size_t d = 0; d < dim; ++d)
        v[d] = std::clamp(v[d], f.lower(static_cast<int>(d)), f.upper(static_cast<int>(d)));
    return v;
}

DeHost::DeHost(const RealFunction& f, DeConfig cfg, RngStream rng)
    : f_(f), cfg_(cfg), rng_(rng) {
    cfg_.validate();
    pop_ = init_population(f_, cfg_, rng_);
    evaluations_ = cfg_.population_size;
    best_value_ = pop_.best_value();
    double sum = 0.0;
    for (const Objective& o : pop_.objectives) sum += o.value;
    mean_value_ = sum / static_cast<double>(pop_.size());
}

StepOutcome DeHost::apply(OperatorId op) {
    const int target = cursor_;
    cursor_ = (cursor_ + 1) % pop_.size();

    const std::vector<double> trial = apply_operator(op, pop_, target, cfg_, f_, rng_);
    const Objective trial_obj = f_.evaluate(trial);
    ++evaluations_;

    const Objective target_obj = pop_.objectives[static_cast<std::size_t>(target)];
    StepOutcome out;
    out.y_before = target_obj.value;
    out.y_after = trial_obj.value;
    out.new_best = trial_obj.value < best_value_;

    if (select_survivor(target_obj, trial_obj) == SurvivorDecision::TakeTrial) {
        mean_value_ += (trial_obj.value - target_obj.value) /
                       static_cast<double>(pop_.size());
        pop_.members[static_cast<std::size_t>(target)] = trial;
        pop_.objectives[static_cast<std::size_t>(target)] = trial_obj;
        out.accepted = true;
        int best = 0;
        for (int i = 1; i < pop_.size(); ++i)
            if (pop_.objectives[static_cast<std::size_t>(i)].value <
                pop_.objectives[static_cast<std::size_t>(best)].value)
                best = i;
        pop_.best_index = best;
        best_value_ = std::min(best_value_, trial_obj.value);
    }
    return out;
}

SearchSnapshot DeHost::snapshot() const {
    SearchSnapshot snap;
    snap.current_objective = mean_value_;
    snap.best_objective = best_value_;

    const std::size_t dim = pop_.members.front().size();
    std::vector<double> centroid(dim, 0.0);
    for (const auto& m : pop_.members)
        for (std::size_t d = 0; d < dim; ++d) centroid[d] += m[d];
    for (double& c : centroid) c /= static_cast<double>(pop_.size());
    double spread = 0.0;
    for (const auto& m : pop_.members) {
        double sq = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            const double diff = m[d] - centroid[d];
            sq += diff * diff;
        }
        spread += std::sqrt(sq);
    }
    snap.dispersion = spread / static_cast<double>(pop_.size());
    return snap;
}

const std::vector<double>& DeHost::best_member() const {
    return pop_.members[static_cast<std::size_t>(pop_.best_index)];
}

} // namespace hfaos
