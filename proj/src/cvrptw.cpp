#include "hfaos/cvrptw.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hfaos/errors.hpp"

namespace hfaos {

double Instance::distance(int i, int j) const {
    const SolomonNode& a = nodes[static_cast<std::size_t>(i)];
    const SolomonNode& b = nodes[static_cast<std::size_t>(j)];
    const double dx = a.x - b.x, dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

void Instance::validate() const {
    if (nodes.empty()) throw FormatError("instance has no depot node");
    if (capacity <= 0.0) throw FormatError("vehicle capacity must be positive");
    if (nodes.front().demand != 0.0) throw FormatError("depot demand must be zero");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].id != static_cast<int>(i))
            throw FormatError("node ids must be contiguous from 0, got id " +
                              std::to_string(nodes[i].id));
        if (nodes[i].ready > nodes[i].due)
            throw FormatError("node " + std::to_string(nodes[i].id) +
                              " has ready > due");
    }
}

namespace {

bool has_alpha(const std::string& line) {
    return std::any_of(line.begin(), line.end(),
                       [](unsigned char c) { return std::isalpha(c) != 0; });
}

bool blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

// Strictly numeric whitespace-separated fields; returns false on any
// non-numeric token.
bool parse_fields(const std::string& line, std::vector<double>& out) {
    out.clear();
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            return false;
        }
        if (used != tok.size()) return false;
        out.push_back(v);
    }
    return !out.empty();
}

std::string format_number(double v) {
    char buf[40];
    if (v == std::floor(v) && std::abs(v) < 1e15)
        std::snprintf(buf, sizeof buf, "%.0f", v);
    else
        std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

Instance parse_solomon(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Instance inst;

    while (std::getline(in, line)) {
        if (blank(line)) continue;
        std::istringstream ss(line);
        ss >> inst.name;
        break;
    }
    if (inst.name.empty()) throw FormatError("missing instance name line");

    bool found_vehicle = false;
    while (std::getline(in, line)) {
        if (line.find("VEHICLE") != std::string::npos) {
            found_vehicle = true;
            break;
        }
    }
    if (!found_vehicle) throw FormatError("missing section: VEHICLE");

    std::vector<double> fields;
    bool have_vehicle = false;
    bool found_customer = false;
    while (std::getline(in, line)) {
        if (line.find("CUSTOMER") != std::string::npos) {
            found_customer = true;
            break;
        }
        if (blank(line) || has_alpha(line)) continue;
        if (!parse_fields(line, fields) || fields.size() != 2)
            throw FormatError("bad VEHICLE line: " + line);
        inst.vehicle_limit = static_cast<int>(fields[0]);
        inst.capacity = fields[1];
        have_vehicle = true;
        break;
    }
    if (!have_vehicle) throw FormatError("missing NUMBER/CAPACITY in VEHICLE section");
    while (!found_customer && std::getline(in, line))
        found_customer = line.find("CUSTOMER") != std::string::npos;
    if (!found_customer) throw FormatError("missing section: CUSTOMER");

    bool rows_started = false;
    while (std::getline(in, line)) {
        if (blank(line)) continue;
        if (!rows_started && has_alpha(line)) continue; // column headers
        if (!parse_fields(line, fields))
            throw FormatError("non-numeric customer row: " + line);
        if (fields.size() != 7)
            throw FormatError("customer row needs 7 fields: " + line);
        rows_started = true;
        SolomonNode n;
        n.id = static_cast<int>(fields[0]);
        n.x = fields[1];
        n.y = fields[2];
        n.demand = fields[3];
        n.ready = fields[4];
        n.due = fields[5];
        n.service = fields[6];
        inst.nodes.push_back(n);
    }
    if (inst.nodes.empty()) throw FormatError("CUSTOMER section has no rows");

    std::sort(inst.nodes.begin(), inst.nodes.end(),
              [](const SolomonNode& a, const SolomonNode& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < inst.nodes.size(); ++i)
        if (inst.nodes[i].id == inst.nodes[i - 1].id)
            throw FormatError("duplicate customer id " +
                              std::to_string(inst.nodes[i].id));

    inst.validate();
    return inst;
}

Instance load_solomon_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open instance file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_solomon(ss.str());
}

std::string serialize_solomon(const Instance& inst) {
    std::ostringstream out;
    out << inst.name << "\n\nVEHICLE\nNUMBER     CAPACITY\n";
    out << "  " << inst.vehicle_limit << "        " << format_number(inst.capacity)
        << "\n\nCUSTOMER\n";
    out << "CUST NO.  XCOORD.   YCOORD.    DEMAND   READY TIME  DUE DATE   "
           "SERVICE TIME\n\n";
    for (const SolomonNode& n : inst.nodes) {
        out << "  " << n.id << "  " << format_number(n.x) << "  " << format_number(n.y)
            << "  " << format_number(n.demand) << "  " << format_number(n.ready)
            << "  " << format_number(n.due) << "  " << format_number(n.service)
            << "\n";
    }
    return out.str();
}

EvaluatedPlan evaluate_plan(const Instance& inst, const RoutePlan& plan,
                            PlanWeights weights) {
    const int n = inst.customers();
    std::vector<int> seen(static_cast<std::size_t>(n) + 1, 0);

    EvaluatedPlan ev;
    ev.plan = plan;
    ev.vehicles = static_cast<int>(plan.routes.size());

    const SolomonNode& depot = inst.nodes.front();
    for (const auto& route : plan.routes) {
        if (route.empty()) throw PlanError("plan contains an empty route");
        double load = 0.0;
        double t = depot.ready;
        int prev = 0;
        for (int c : route) {
            if (c < 1 || c > n) throw PlanError("plan references unknown customer " +
                                                std::to_string(c));
            if (seen[static_cast<std::size_t>(c)]++)
                throw PlanError("customer " + std::to_string(c) +
                                " appears more than once");
            const SolomonNode& node = inst.nodes[static_cast<std::size_t>(c)];
            ev.distance += inst.distance(prev, c);
            const double arrival = t + inst.distance(prev, c);
            ev.tw_violation += std::max(0.0, arrival - node.due);
            t = std::max(arrival, node.ready) + node.service;
            load += node.demand;
            prev = c;
        }
        ev.distance += inst.distance(prev, 0);
        const double back = t + inst.distance(prev, 0);
        ev.tw_violation += std::max(0.0, back - depot.due);
        ev.cap_violation += std::max(0.0, load - inst.capacity);
    }

    for (int c = 1; c <= n; ++c)
        if (!seen[static_cast<std::size_t>(c)])
            throw PlanError("customer " + std::to_string(c) + " missing from plan");

    ev.objective = Objective(weights.vehicle * ev.vehicles + ev.distance +
                             weights.penalty * (ev.tw_violation + ev.cap_violation));
    return ev;
}

RoutePlan initial_plan(const Instance& inst, RngStream& rng) {
    inst.validate();
    const int n = inst.customers();
    std::vector<int> unrouted;
    unrouted.reserve(static_cast<std::size_t>(n));
    for (int c = 1; c <= n; ++c) unrouted.push_back(c);

    const SolomonNode& depot = inst.nodes.front();
    RoutePlan plan;

    while (!unrouted.empty()) {
        // Seed with one of the earliest-ready unrouted customers.
        std::sort(unrouted.begin(), unrouted.end(), [&](int a, int b) {
            const auto& na = inst.nodes[static_cast<std::size_t>(a)];
            const auto& nb = inst.nodes[static_cast<std::size_t>(b)];
            return na.ready != nb.ready ? na.ready < nb.ready : a < b;
        });
        const std::size_t rcl = std::max<std::size_t>(
            1, (unrouted.size() + 3) / 4);
        const std::size_t pick = rng.next_below(rcl);
        const int seed = unrouted[pick];
        unrouted.erase(unrouted.begin() + static_cast<std::ptrdiff_t>(pick));

        std::vector<int> route{seed};
        const SolomonNode& s = inst.nodes[static_cast<std::size_t>(seed)];
        double load = s.demand;
        double t = std::max(depot.ready + inst.distance(0, seed), s.ready) + s.service;
        int last = seed;

        for (;;) {
            int best = -1;
            double best_dist = 0.0;
            for (int c : unrouted) {
                const SolomonNode& node = inst.nodes[static_cast<std::size_t>(c)];
                if (load + node.demand > inst.capacity) continue;
                const double arrival = t + inst.distance(last, c);
                if (arrival > node.due) continue;
                const double depart = std::max(arrival, node.ready) + node.service;
                if (depart + inst.distance(c, 0) > depot.due) continue;
                const double d = inst.distance(last, c);
                if (best < 0 || d < best_dist || (d == best_dist && c < best)) {
                    best = c;
                    best_dist = d;
                }
            }
            if (best < 0) break;
            unrouted.erase(std::find(unrouted.begin(), unrouted.end(), best));
            const SolomonNode& node = inst.nodes[static_cast<std::size_t>(best)];
            t = std::max(t + inst.distance(last, best), node.ready) + node.service;
            load += node.demand;
            route.push_back(best);
            last = best;
        }
        plan.routes.push_back(std::move(route));
    }
    return plan;
}

namespace {

void prune_empty(RoutePlan& plan) {
    std::erase_if(plan.routes, [](const std::vector<int>& r) { return r.empty(); });
}

void check_route(const RoutePlan& plan, int route) {
    if (route < 0 || route >= static_cast<int>(plan.routes.size()))
        throw ConfigError("route index out of range");
}

void check_pos(const std::vector<int>& route, int pos) {
    if (pos < 0 || pos >= static_cast<int>(route.size()))
        throw ConfigError("route position out of range");
}

} // namespace

RoutePlan relocate_customer(const RoutePlan& plan, const Instance& inst,
                            int from_route, int position, int to_route) {
    check_route(plan, from_route);
    check_route(plan, to_route);
    if (from_route == to_route)
        throw ConfigError("relocate requires two distinct routes");
    check_pos(plan.routes[static_cast<std::size_t>(from_route)], position);

    RoutePlan out = plan;
    auto& src = out.routes[static_cast<std::size_t>(from_route)];
    const int customer = src[static_cast<std::size_t>(position)];
    src.erase(src.begin() + position);

    // Cheapest-insertion position by distance delta over depot-closed legs.
    auto& dst = out.routes[static_cast<std::size_t>(to_route)];
    int best_pos = 0;
    double best_delta = 0.0;
    for (int p = 0; p <= static_cast<int>(dst.size()); ++p) {
        const int before = p == 0 ? 0 : dst[static_cast<std::size_t>(p - 1)];
        const int after = p == static_cast<int>(dst.size())
                              ? 0
                              : dst[static_cast<std::size_t>(p)];
        const double delta = inst.distance(before, customer) +
                             inst.distance(customer, after) -
                             inst.distance(before, after);
        if (p == 0 || delta < best_delta) {
            best_pos = p;
            best_delta = delta;
        }
    }
    dst.insert(dst.begin() + best_pos, customer);
    prune_empty(out);
    return out;
}

RoutePlan swap_customers(const RoutePlan& plan, int route_a, int pos_a, int route_b,
                         int pos_b) {
    check_route(plan, route_a);
    check_route(plan, route_b);
    if (route_a == route_b) throw ConfigError("swap requires two distinct routes");
    check_pos(plan.routes[static_cast<std::size_t>(route_a)], pos_a);
    check_pos(plan.routes[static_cast<std::size_t>(route_b)], pos_b);

    RoutePlan out = plan;
    std::swap(out.routes[static_cast<std::size_t>(route_a)][static_cast<std::size_t>(pos_a)],
              out.routes[static_cast<std::size_t>(route_b)][static_cast<std::size_t>(pos_b)]);
    return out;
}

RoutePlan two_opt_star(const RoutePlan& plan, int route_a, int cut_a, int route_b,
                       int cut_b) {
    check_route(plan, route_a);
    check_route(plan, route_b);
    if (route_a == route_b)
        throw ConfigError("tail exchange requires two distinct routes");
    const auto& a = plan.routes[static_cast<std::size_t>(route_a)];
    const auto& b = plan.routes[static_cast<std::size_t>(route_b)];
    if (cut_a < 0 || cut_a > static_cast<int>(a.size()) || cut_b < 0 ||
        cut_b > static_cast<int>(b.size()))
        throw ConfigError("cut point out of range");

    RoutePlan out = plan;
    std::vector<int> new_a(a.begin(), a.begin() + cut_a);
    new_a.insert(new_a.end(), b.begin() + cut_b, b.end());
    std::vector<int> new_b(b.begin(), b.begin() + cut_b);
    new_b.insert(new_b.end(), a.begin() + cut_a, a.end());
    out.routes[static_cast<std::size_t>(route_a)] = std::move(new_a);
    out.routes[static_cast<std::size_t>(route_b)] = std::move(new_b);
    prune_empty(out);
    return out;
}

RoutePlan or_opt_segment(const RoutePlan& plan, int from_route, int position,
                         int length, int to_route, int insert_position) {
    check_route(plan, from_route);
    check_route(plan, to_route);
    if (length < 1) throw ConfigError("segment length must be positive");
    const auto& src_in = plan.routes[static_cast<std::size_t>(from_route)];
    if (position < 0 || position + length > static_cast<int>(src_in.size()))
        throw ConfigError("segment out of range");

    RoutePlan out = plan;
    auto& src = out.routes[static_cast<std::size_t>(from_route)];
    std::vector<int> segment(src.begin() + position, src.begin() + position + length);
    src.erase(src.begin() + position, src.begin() + position + length);

    auto& dst = out.routes[static_cast<std::size_t>(to_route)];
    if (insert_position < 0 || insert_position > static_cast<int>(dst.size()))
        throw ConfigError("insert position out of range");
    dst.insert(dst.begin() + insert_position, segment.begin(), segment.end());
    prune_empty(out);
    return out;
}

MoveResult apply_move(OperatorId op, const RoutePlan& plan, const Instance& inst,
                      RngStream& rng) {
    if (op.index < 0 || op.index >= kCvrptwMoveCount)
        throw ConfigError("unknown move index");
    const int n_routes = static_cast<int>(plan.routes.size());
    const auto route_len = [&](int r) {
        return static_cast<int>(plan.routes[static_cast<std::size_t>(r)].size());
    };

    RoutePlan next;
    switch (op.index) {
    case kRelocate: {
        if (n_routes < 2) return {plan, false};
        const int src = static_cast<int>(rng.next_below(static_cast<std::size_t>(n_routes)));
        const int pos = static_cast<int>(rng.next_below(static_cast<std::size_t>(route_len(src))));
        int dst = static_cast<int>(rng.next_below(static_cast<std::size_t>(n_routes - 1)));
        if (dst >= src) ++dst;
        next = relocate_customer(plan, inst, src, pos, dst);
        break;
    }
    case kSwap: {
        if (n_routes < 2) return {plan, false};
        const int ra = static_cast<int>(rng.next_below(static_cast<std::size_t>(n_routes)));
        int rb = static_cast<int>(rng.next_below(static_cast<std::size_t>(n_routes - 1)));
        if (rb >= ra) ++rb;
        const int pa = static_cast<int>(rng.next_below(static_cast<std::size_t>(route_len(ra))));
        const int pb = static_cast<int>(rng.next_below(static_cast<std::size_t>(route_len(rb))));
        next = swap_customers(plan, ra, pa, rb, pb);
        break;
    }
    case kTwoOptStar: {
        if (n_routes < 2) return {plan, false};
        const int ra = static_cast<int>(rng.next_below(static_cast<std::size_t>(n_routes)));
        int rb = static_cast<int>(rng.next_below(static_cast<std::size_t>(n_routes - 1)));
        if (rb >= ra) ++rb;
        // Cuts in [1, len] keep both heads nonempty.
        const int ca = 1 + static_cast<int>(rng.next_below(static_cast<std::size_t>(route_len(ra))));
        const int cb = 1 + static_cast<int>(rng.next_below(static_cast<std::size_t>(route_len(rb))));
        next = two_opt_star(plan, ra, ca, rb, cb);
        break;
    }
    case kOrOpt: {
        int length = 2 + static_cast<int>(rng.next_below(2));
        auto eligible = [&](int len) {
            std::vector<int> v;
            for (int r = 0; r < n_routes; ++r)
                if (route_len(r) >= len) v.push_back(r);
            return v;
        };
        std::vector<int> cands = eligible(length);
        if (cands.empty() && length == 3) {
            length = 2;
            cands = eligible(length);
        }
        if (cands.empty()) return {plan, false};
        const int src = cands[rng.next_below(cands.size())];
        const int pos = static_cast<int>(
            rng.next_below(static_cast<std::size_t>(route_len(src) - length + 1)));
        const int dst = static_cast<int>(rng.next_below(static_cast<std::size_t>(n_routes)));
        const int dst_len = dst == src ? route_len(dst) - length : route_len(dst);
        const int ins = static_cast<int>(
            rng.next_below(static_cast<std::size_t>(dst_len + 1)));
        next = or_opt_segment(plan, src, pos, length, dst, ins);
        break;
    }
    }

    const bool changed = !(next == plan);
    return {changed ? std::move(next) : plan, changed};
}

CvrptwHost::CvrptwHost(const Instance& inst, CvrptwConfig cfg, RngStream rng)
    : inst_(inst), cfg_(cfg), rng_(rng) {
    if (cfg_.budget < 1) throw ConfigError("budget must be >= 1");
    RoutePlan plan = initial_plan(inst_, rng_);
    current_ = evaluate_plan(inst_, plan, cfg_.weights);
    evaluations_ = 1;
    last_candidate_ = current_.objective.value;
}

StepOutcome CvrptwHost::apply(OperatorId op) {
    const MoveResult mr = apply_move(op, current_.plan, inst_, rng_);
    EvaluatedPlan cand =
        mr.changed ? evaluate_plan(inst_, mr.plan, cfg_.weights) : current_;
    ++evaluations_;

    StepOutcome out;
    out.y_before = current_.objective.value;
    out.y_after = cand.objective.value;
    out.new_best = cand.objective.value < current_.objective.value;
    out.accepted = out.new_best; // strict first-improvement descent

    last_candidate_ = cand.objective.value;
    recent_.push_back(cand.objective.value);
    if (recent_.size() > 50) recent_.pop_front();

    if (out.accepted) current_ = std::move(cand);
    return out;
}

SearchSnapshot CvrptwHost::snapshot() const {
    SearchSnapshot snap;
    snap.current_objective = last_candidate_;
    snap.best_objective = current_.objective.value;
    if (recent_.size() >= 2) {
        double mean = 0.0;
        for (double v : recent_) mean += v;
        mean /= static_cast<double>(recent_.size());
        double var = 0.0;
        for (double v : recent_) var += (v - mean) * (v - mean);
        var /= static_cast<double>(recent_.size());
        snap.dispersion = std::sqrt(var) / (std::abs(mean) + kEps);
    }
    return snap;
}

} // namespace hfaos
