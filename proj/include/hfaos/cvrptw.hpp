#pragma once

#include <deque>
#include <string>
#include <vector>

#include "hfaos/core.hpp"
#include "hfaos/rng.hpp"
#include "hfaos/search_host.hpp"

namespace hfaos {

struct SolomonNode {
    int id = 0;
    double x = 0.0, y = 0.0;
    double demand = 0.0;
    double ready = 0.0, due = 0.0;
    double service = 0.0;

    bool operator==(const SolomonNode&) const = default;
};

/// A Solomon-format CVRPTW instance; node 0 is the depot.
struct Instance {
    std::string name;
    int vehicle_limit = 0;
    double capacity = 0.0;
    std::vector<SolomonNode> nodes;

    int customers() const { return static_cast<int>(nodes.size()) - 1; }

    /// Unrounded double-precision Euclidean distance.
    double distance(int i, int j) const;

    void validate() const; // FormatError on broken invariants

    bool operator==(const Instance&) const = default;
};

/// Parses the standard Solomon text layout (name line, VEHICLE section with
/// NUMBER and CAPACITY, CUSTOMER table). Whitespace-delimited and tolerant
/// of blank lines. Throws FormatError on missing sections, non-numeric
/// fields or duplicate customer ids.
Instance parse_solomon(const std::string& text);

Instance load_solomon_file(const std::string& path); // IoError + FormatError

/// Emits the same layout parse_solomon reads; parse(serialize(i)) == i.
std::string serialize_solomon(const Instance& inst);

/// Routes of customer ids; the depot is implicit at both ends of each route.
struct RoutePlan {
    std::vector<std::vector<int>> routes;

    bool operator==(const RoutePlan&) const = default;
};

struct PlanWeights {
    double vehicle = 1000.0;  // W_v
    double penalty = 10000.0; // W_p, applied to time-window + capacity violations
};

struct EvaluatedPlan {
    RoutePlan plan;
    double distance = 0.0;
    int vehicles = 0;
    double tw_violation = 0.0;  // sum of lateness vs due dates, depot return included
    double cap_violation = 0.0; // sum of per-route overloads
    Objective objective;

    bool feasible() const { return tw_violation == 0.0 && cap_violation == 0.0; }
};

/// Walks every route propagating arrival times (service starts no earlier
/// than ready; waiting is free) and accumulates distance plus violations.
/// objective = W_v * vehicles + distance + W_p * (tw + cap).
/// Throws PlanError if the plan misses or duplicates a customer.
EvaluatedPlan evaluate_plan(const Instance& inst, const RoutePlan& plan,
                            PlanWeights weights = {});

/// Randomized greedy construction: each route is seeded with one of the
/// earliest-ready unrouted customers (random pick from that candidate
/// list), then extended by the nearest customer that fits capacity and
/// time windows. Always places every customer; infeasibility is carried
/// as objective penalties rather than rejected.
RoutePlan initial_plan(const Instance& inst, RngStream& rng);

/// Neighborhood move pool, K = 4.
enum CvrptwMove : int {
    kRelocate = 0,  // move one customer to the best position of another route
    kSwap = 1,      // exchange two customers across routes
    kTwoOptStar = 2, // exchange route tails
    kOrOpt = 3,     // move a segment of 2-3 customers within or across routes
};
inline constexpr int kCvrptwMoveCount = 4;

struct MoveResult {
    RoutePlan plan;
    bool changed = false; // false = null move, plan returned unchanged
};

/// Applies the indexed move with rng-drawn arguments. Impossible moves
/// (e.g. tail exchange with a single route) return the plan unchanged.
/// Resulting plans always keep every customer exactly once; emptied routes
/// are pruned.
MoveResult apply_move(OperatorId op, const RoutePlan& plan, const Instance& inst,
                      RngStream& rng);

// Deterministic move primitives used by apply_move and tests.
RoutePlan relocate_customer(const RoutePlan& plan, const Instance& inst,
                            int from_route, int position, int to_route);
RoutePlan swap_customers(const RoutePlan& plan, int route_a, int pos_a,
                         int route_b, int pos_b);
RoutePlan two_opt_star(const RoutePlan& plan, int route_a, int cut_a,
                       int route_b, int cut_b);
RoutePlan or_opt_segment(const RoutePlan& plan, int from_route, int position,
                         int length, int to_route, int insert_position);

struct CvrptwConfig {
    PlanWeights weights;
    long budget = 20000; // objective evaluations, initial plan included
};

/// Single-trajectory first-improvement descent host: every apply() draws a
/// move, evaluates the candidate and accepts only strict objective
/// improvements, so the incumbent equals the best found so far.
class CvrptwHost final : public SearchHost {
public:
    CvrptwHost(const Instance& inst, CvrptwConfig cfg, RngStream rng);

    int k_ops() const override { return kCvrptwMoveCount; }
    StepOutcome apply(OperatorId op) override;
    double best_objective() const override { return current_.objective.value; }
    long evaluations() const override { return evaluations_; }

    /// State objective = last proposed candidate (the incumbent would make
    /// the gap feature identically zero under strict descent); dispersion =
    /// relative spread of the recent candidate-objective window.
    SearchSnapshot snapshot() const override;

    const EvaluatedPlan& incumbent() const { return current_; }

private:
    const Instance& inst_;
    CvrptwConfig cfg_;
    RngStream rng_;
    EvaluatedPlan current_;
    double last_candidate_ = 0.0;
    long evaluations_ = 0;
    std::deque<double> recent_;
};

} // namespace hfaos
