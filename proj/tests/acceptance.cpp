// Acceptance suite: one numbered criterion per run argument, one PASS/FAIL
// line each. Heavy artifacts (trained models, trial tables) are cached in
// the work directory so later criteria reuse earlier results.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hfaos/benchmarks.hpp"
#include "hfaos/cvrptw.hpp"
#include "hfaos/de_engine.hpp"
#include "hfaos/harness.hpp"
#include "hfaos/hybrid.hpp"
#include "hfaos/qnetwork.hpp"
#include "hfaos/stateless_aos.hpp"
#include "hfaos/wilcoxon.hpp"
#include "support/synthetic_mdp.hpp"
#include "support/wilcoxon_oracle.hpp"

using namespace hfaos;
namespace fs = std::filesystem;

namespace {

const char* kWorkDir = HFAOS_ACCEPT_WORK_DIR;
const char* kDataDir = HFAOS_DATA_DIR;

std::string work_path(const std::string& leaf) {
    fs::create_directories(kWorkDir);
    return (fs::path(kWorkDir) / leaf).string();
}

// ---------------------------------------------------------------- C1
bool c1_p_bounds(std::string& detail) {
    RngStream rng(11);
    long checks = 0, violations = 0;
    for (int seq = 0; seq < 1000; ++seq) {
        DecisionPolicy policy; // p starts at p_upper = 0.5
        for (int step = 0; step < 1000; ++step) {
            adjust_p(policy, rng.next_double() < 0.5);
            ++checks;
            if (policy.p < 0.1 || policy.p > 0.5) ++violations;
        }
    }
    std::ostringstream ss;
    ss << checks << " updates, " << violations << " violations";
    detail = ss.str();
    return checks == 1000000 && violations == 0;
}

// ---------------------------------------------------------------- C2
bool c2_simplex(std::string& detail) {
    StatelessAos aos(4);
    RngStream rng(22);
    double worst_gap = 0.0, min_p = 1.0;
    for (int i = 0; i < 100000; ++i) {
        aos.update(OperatorId{static_cast<int>(rng.next_below(4))}, rng.next_double());
        double sum = 0.0;
        for (double p : aos.probabilities()) {
            sum += p;
            min_p = std::min(min_p, p);
        }
        worst_gap = std::max(worst_gap, std::abs(sum - 1.0));
    }
    std::ostringstream ss;
    ss << "max |sum P - 1| = " << worst_gap << ", min P = " << min_p;
    detail = ss.str();
    return worst_gap < 1e-9 && min_p > 0.0;
}

// ---------------------------------------------------------------- C3
bool c3_bandit_convergence(std::string& detail) {
    StatelessAos aos(4);
    RngStream rng(33);
    for (int i = 0; i < 10000; ++i) {
        const OperatorId op = aos.sample(rng);
        const double credit =
            op.index == 2 ? rng.uniform(0.6, 1.0) : rng.uniform(0.0, 0.4);
        aos.update(op, credit);
    }
    const auto& p = aos.probabilities();
    std::ostringstream ss;
    ss << "P = (" << p[0] << ", " << p[1] << ", " << p[2] << ", " << p[3] << ")";
    detail = ss.str();
    bool ok = p[2] >= 0.84 && p[2] <= 0.85;
    for (int i : {0, 1, 3})
        ok = ok && p[static_cast<std::size_t>(i)] >= 0.0495 &&
             p[static_cast<std::size_t>(i)] <= 0.051;
    return ok;
}

// ---------------------------------------------------------------- C4
bool c4_gradient_check(std::string& detail) {
    RngStream rng(44);
    RngStream net_rng(45);
    QNetwork net({4, 5, 5, 3}, net_rng);

    double worst = 0.0;
    for (int round = 0; round < 10; ++round) {
        std::vector<std::vector<double>> states;
        for (int i = 0; i < 6; ++i) {
            std::vector<double> s(4);
            for (double& v : s) v = rng.next_double();
            states.push_back(std::move(s));
        }
        std::vector<QNetwork::Sample> batch;
        for (int i = 0; i < 6; ++i)
            batch.push_back({states[static_cast<std::size_t>(i)],
                             static_cast<int>(rng.next_below(3)),
                             rng.uniform(-1.0, 1.0)});

        QNetwork::Gradients grads = net.zero_gradients();
        net.batch_gradients(batch, grads);
        std::vector<double> flat;
        for (std::size_t l = 0; l < grads.weights.size(); ++l) {
            flat.insert(flat.end(), grads.weights[l].begin(), grads.weights[l].end());
            flat.insert(flat.end(), grads.bias[l].begin(), grads.bias[l].end());
        }

        const double h = 1e-5;
        for (std::size_t i = 0; i < net.parameter_count(); ++i) {
            const double saved = net.get_parameter(i);
            net.set_parameter(i, saved + h);
            const double up = net.batch_loss(batch);
            net.set_parameter(i, saved - h);
            const double down = net.batch_loss(batch);
            net.set_parameter(i, saved);
            const double numeric = (up - down) / (2.0 * h);
            const double denom = std::max({1.0, std::abs(flat[i]), std::abs(numeric)});
            worst = std::max(worst, std::abs(flat[i] - numeric) / denom);
        }
    }
    std::ostringstream ss;
    ss << "worst relative error = " << worst;
    detail = ss.str();
    return worst < 1e-6;
}

// ---------------------------------------------------------------- C5
bool c5_mdp_learnability(std::string& detail) {
    const auto q_star = mdp::analytic_q(mdp::config().gamma);
    int successes = 0;
    double worst_q_err_of_success = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto outcome = mdp::train(seed * 7919, 5000);
        const auto qa = outcome.net.forward(mdp::state_vec(true));
        const auto qb = outcome.net.forward(mdp::state_vec(false));
        const bool policy_ok = qa[0] > qa[1] && qb[1] > qb[0];
        double q_err = 0.0;
        q_err = std::max(q_err, std::abs(qa[0] - q_star[0][0]));
        q_err = std::max(q_err, std::abs(qa[1] - q_star[0][1]));
        q_err = std::max(q_err, std::abs(qb[0] - q_star[1][0]));
        q_err = std::max(q_err, std::abs(qb[1] - q_star[1][1]));
        if (policy_ok && q_err <= 0.05) {
            ++successes;
            worst_q_err_of_success = std::max(worst_q_err_of_success, q_err);
        }
    }
    std::ostringstream ss;
    ss << successes << "/10 runs optimal, worst passing |Q - Q*| = "
       << worst_q_err_of_success;
    detail = ss.str();
    return successes >= 9;
}

// ---------------------------------------------------------------- C6
bool c6_wilcoxon_oracle(std::string& detail) {
    RngStream rng(66);
    double worst = 0.0;
    for (int n = 2; n <= 12; ++n) {
        for (int rep = 0; rep < 200; ++rep) {
            std::vector<double> a(static_cast<std::size_t>(n)),
                b(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                a[static_cast<std::size_t>(i)] = rng.uniform(-10.0, 10.0);
                b[static_cast<std::size_t>(i)] = rng.uniform(-10.0, 10.0);
            }
            const WilcoxonResult r = wilcoxon_signed_rank(a, b);
            if (!r.exact) return false;
            worst = std::max(worst,
                             std::abs(r.p_two_sided - oracle::exact_two_sided_p(a, b)));
        }
    }

    const std::vector<double> pos{1.0, 2.0, 3.0, 4.0, 5.0};
    const std::vector<double> zero(5, 0.0);
    const WilcoxonResult five = wilcoxon_signed_rank(pos, zero);

    std::ostringstream ss;
    ss << "worst |p - oracle| = " << worst << ", n=5 all-positive p = "
       << five.p_two_sided;
    detail = ss.str();
    return worst < 1e-12 && five.p_two_sided == 0.0625;
}

// ------------------------------------------------------- C7/C8 shared
const std::uint64_t kDeskSeed = 1001;

ExperimentConfig desk_eval_config(const std::vector<std::string>& modes) {
    ExperimentConfig cfg;
    cfg.domain = "real";
    cfg.problems = {"rastrigin:10", "griewank:10",        "schwefel_1_2:10",
                    "levy:10",      "zakharov:10",        "styblinski_tang:10",
                    "schaffer_f7:10"};
    cfg.aos_modes = modes;
    cfg.trials = 30;
    cfg.budget = 10000;
    cfg.base_seed = kDeskSeed;
    cfg.output_dir = work_path("");
    cfg.model_path = work_path("model_real.json");
    return cfg;
}

void ensure_real_model() {
    const std::string model = work_path("model_real.json");
    if (fs::exists(model)) return;
    ExperimentConfig cfg;
    cfg.domain = "real";
    cfg.problems = {"sphere:10", "rosenbrock:10", "ackley:10"};
    cfg.budget = 10000;
    cfg.episodes = 20;
    cfg.base_seed = kDeskSeed;
    cfg.output_dir = work_path("");
    offline_train(cfg, model);
}

std::vector<TrialResult> cached_mode_results(const std::string& mode) {
    const std::string cache = work_path("desk_" + mode + ".csv");
    if (fs::exists(cache)) return read_trials_csv(cache);

    ensure_real_model();
    ExperimentConfig cfg = desk_eval_config({mode});
    const std::vector<TrialResult> results = evaluate(cfg);

    ComparisonTable empty_table;
    empty_table.modes = {mode};
    empty_table.cells.resize(1);
    const std::string dir = work_path("desk_" + mode);
    write_report(results, empty_table, dir);
    fs::copy_file(dir + "/trials.csv", cache, fs::copy_options::overwrite_existing);
    return results;
}

// ---------------------------------------------------------------- C7
bool c7_hf_vs_random(std::string& detail) {
    std::vector<TrialResult> results = cached_mode_results("hf");
    const std::vector<TrialResult> random_results = cached_mode_results("random");
    results.insert(results.end(), random_results.begin(), random_results.end());

    const ComparisonCell cell = build_comparison(results, "hf", "random");
    std::ostringstream ss;
    ss << "hf vs random = " << cell.better << "/" << cell.comparable << "/"
       << cell.worse;
    detail = ss.str();
    return cell.better >= cell.worse && cell.better >= 2;
}

// ---------------------------------------------------------------- C8
bool c8_hf_vs_hfnu(std::string& detail) {
    std::vector<TrialResult> results = cached_mode_results("hf");
    const std::vector<TrialResult> nu_results = cached_mode_results("hf-nu");
    results.insert(results.end(), nu_results.begin(), nu_results.end());

    const ComparisonCell cell = build_comparison(results, "hf", "hf-nu");
    std::ostringstream ss;
    ss << "hf vs hf-nu = " << cell.better << "/" << cell.comparable << "/"
       << cell.worse;
    detail = ss.str();
    return 2 * cell.worse <= 7; // not worse on a majority of the 7 functions
}

// ---------------------------------------------------------------- C9
bool c9_cvrptw_track(std::string& detail) {
    const Instance inst = load_solomon_file(std::string(kDataDir) + "/c25.txt");

    const std::string model = work_path("model_cvrptw.json");
    if (!fs::exists(model)) {
        ExperimentConfig train;
        train.domain = "cvrptw";
        train.problems = {std::string(kDataDir) + "/c25.txt"};
        // Short episodes keep the improving phase in view and the episode
        // total inside the replay capacity, so nothing is overwritten.
        train.budget = 1000;
        train.episodes = 20;
        train.base_seed = kDeskSeed;
        train.output_dir = work_path("");
        offline_train(train, model);
    }
    const QNetwork net = QNetwork::load(model);

    // Independent accounting re-check of an evaluated plan.
    auto audit = [&](const EvaluatedPlan& ev) -> bool {
        std::vector<int> seen(26, 0);
        double distance = 0.0, tw = 0.0, cap = 0.0;
        for (const auto& route : ev.plan.routes) {
            if (route.empty()) return false;
            double load = 0.0, t = inst.nodes[0].ready;
            int prev = 0;
            for (int c : route) {
                if (c < 1 || c > 25) return false;
                ++seen[static_cast<std::size_t>(c)];
                const auto& node = inst.nodes[static_cast<std::size_t>(c)];
                const double leg = std::hypot(node.x - inst.nodes[static_cast<std::size_t>(prev)].x,
                                              node.y - inst.nodes[static_cast<std::size_t>(prev)].y);
                distance += leg;
                const double arrival = t + leg;
                if (arrival > node.due) tw += arrival - node.due;
                t = std::max(arrival, node.ready) + node.service;
                load += node.demand;
                prev = c;
            }
            const auto& depot = inst.nodes[0];
            const double leg = std::hypot(depot.x - inst.nodes[static_cast<std::size_t>(prev)].x,
                                          depot.y - inst.nodes[static_cast<std::size_t>(prev)].y);
            distance += leg;
            if (t + leg > depot.due) tw += t + leg - depot.due;
            if (load > inst.capacity) cap += load - inst.capacity;
        }
        for (int c = 1; c <= 25; ++c)
            if (seen[static_cast<std::size_t>(c)] != 1) return false;
        return std::abs(distance - ev.distance) < 1e-9 &&
               std::abs(tw - ev.tw_violation) < 1e-9 &&
               std::abs(cap - ev.cap_violation) < 1e-9;
    };

    auto run_mode = [&](const char* label, double& mean_out) -> bool {
        const AosModeSpec spec = parse_aos_mode(label);
        double sum = 0.0;
        for (int trial = 0; trial < 30; ++trial) {
            const std::uint64_t seed = kDeskSeed + static_cast<std::uint64_t>(trial);
            CvrptwConfig cc;
            cc.budget = 20000;
            CvrptwHost host(inst, cc, RngStream::substream(seed, kStreamEngine));
            ControllerConfig ctrl_cfg;
            ctrl_cfg.policy.mode = spec.mode;
            if (spec.mode == SelectionMode::Fixed) ctrl_cfg.policy.p = spec.fixed_p;
            ctrl_cfg.online_update = spec.online_update;
            HybridController ctrl(ctrl_cfg, spec.needs_model ? net : QNetwork(), seed);
            const TrialRunResult run = ctrl.run(host, cc.budget);
            sum += run.final_best;
            if (!audit(host.incumbent())) return false;
        }
        mean_out = sum / 30.0;
        return true;
    };

    double mean_hf = 0.0, mean_random = 0.0;
    const bool plans_ok = run_mode("hf", mean_hf) && run_mode("random", mean_random);

    std::ostringstream ss;
    ss << "mean objective hf = " << mean_hf << ", random = " << mean_random
       << (plans_ok ? ", all plans valid" : ", PLAN AUDIT FAILED");
    detail = ss.str();
    return plans_ok && mean_hf <= mean_random;
}

// ---------------------------------------------------------------- C10
bool c10_determinism(std::string& detail) {
    ExperimentConfig cfg;
    cfg.domain = "real";
    cfg.problems = {"sphere:3"};
    cfg.aos_modes = {"sl", "random"};
    cfg.trials = 3;
    cfg.budget = 500;
    cfg.base_seed = 42;
    cfg.population_size = 10;

    auto run_into = [&](const std::string& dir) {
        cfg.output_dir = dir;
        const auto results = evaluate(cfg);
        write_report(results, build_comparison_table(results, cfg.aos_modes), dir);
        std::ifstream in(dir + "/trials.csv", std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };

    const std::string first = run_into(work_path("det_a"));
    const std::string second = run_into(work_path("det_b"));
    detail = first == second ? "trials.csv byte-identical across reruns"
                             : "trials.csv differs between reruns";
    return !first.empty() && first == second;
}

struct Criterion {
    int id;
    const char* name;
    bool (*fn)(std::string&);
};

const Criterion kCriteria[] = {
    {1, "p-bound invariant", c1_p_bounds},
    {2, "simplex conservation", c2_simplex},
    {3, "bandit convergence", c3_bandit_convergence},
    {4, "gradient check", c4_gradient_check},
    {5, "ddqn learnability", c5_mdp_learnability},
    {6, "wilcoxon oracle", c6_wilcoxon_oracle},
    {7, "hf vs random ordering", c7_hf_vs_random},
    {8, "hf vs hf-nu ablation", c8_hf_vs_hfnu},
    {9, "cvrptw track", c9_cvrptw_track},
    {10, "determinism", c10_determinism},
};

} // namespace

int main(int argc, char** argv) {
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

    int failures = 0;
    for (const Criterion& c : kCriteria) {
        if (!wanted.empty() &&
            std::find(wanted.begin(), wanted.end(), c.id) == wanted.end())
            continue;
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const std::chrono::duration<double> elapsed =
            std::chrono::steady_clock::now() - start;
        std::printf("[%s] C%-2d %-24s (%.1fs) %s\n", ok ? "PASS" : "FAIL", c.id,
                    c.name, elapsed.count(), detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures;
}
