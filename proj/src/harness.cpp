#include "hfaos/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "hfaos/benchmarks.hpp"
#include "hfaos/cvrptw.hpp"
#include "hfaos/de_engine.hpp"
#include "hfaos/errors.hpp"

namespace hfaos {

using nlohmann::json;

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct RealProblem {
    std::string name;
    int dim = 0;
};

RealProblem parse_real_problem(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw ConfigError("real-domain problems need name:dim, got " + spec);
    RealProblem p;
    p.name = spec.substr(0, colon);
    try {
        p.dim = std::stoi(spec.substr(colon + 1));
    } catch (const std::exception&) {
        throw ConfigError("bad dimension in problem spec: " + spec);
    }
    if (p.dim < 1) throw ConfigError("dimension must be >= 1 in " + spec);
    return p;
}

// One solvable problem plus the factory for per-trial hosts.
struct ProblemEntry {
    std::string label;
    std::unique_ptr<RealFunction> function; // real domain
    std::unique_ptr<Instance> instance;     // cvrptw domain
};

std::vector<ProblemEntry> load_problems(const ExperimentConfig& cfg) {
    std::vector<ProblemEntry> entries;
    for (const std::string& spec : cfg.problems) {
        ProblemEntry e;
        if (cfg.domain == "real") {
            const RealProblem p = parse_real_problem(spec);
            e.function = std::make_unique<RealFunction>(make_function(p.name, p.dim));
            e.label = spec;
        } else {
            e.instance = std::make_unique<Instance>(load_solomon_file(spec));
            e.label = e.instance->name;
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

std::unique_ptr<SearchHost> make_host(const ExperimentConfig& cfg,
                                      const ProblemEntry& e,
                                      std::uint64_t trial_seed) {
    RngStream engine = RngStream::substream(trial_seed, kStreamEngine);
    if (e.function) {
        DeConfig de;
        de.population_size = cfg.population_size;
        de.scale_factor = cfg.scale_factor;
        de.crossover_rate = cfg.crossover_rate;
        de.budget = cfg.budget;
        return std::make_unique<DeHost>(*e.function, de, engine);
    }
    CvrptwConfig cc;
    cc.budget = cfg.budget;
    return std::make_unique<CvrptwHost>(*e.instance, cc, engine);
}

ControllerConfig make_controller_config(const AosModeSpec& spec) {
    ControllerConfig cc;
    cc.policy.mode = spec.mode;
    cc.policy.p = spec.mode == SelectionMode::Fixed ? spec.fixed_p : cc.policy.p_upper;
    cc.online_update = spec.online_update;
    cc.features = FeatureSpec{};
    return cc;
}

int worker_count() {
    if (const char* env = std::getenv("HF_AOS_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::uint64_t training_seed(std::uint64_t base) {
    return base ^ 0x7261696E5F6F6666ULL; // keeps training streams apart from trials
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    return out;
}

} // namespace

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw FormatError("config is not valid JSON: " + std::string(e.what()));
    }

    ExperimentConfig cfg;
    try {
        if (doc.contains("domain")) cfg.domain = doc["domain"].get<std::string>();
        if (doc.contains("problems"))
            cfg.problems = doc["problems"].get<std::vector<std::string>>();
        if (doc.contains("aos_modes"))
            cfg.aos_modes = doc["aos_modes"].get<std::vector<std::string>>();
        if (doc.contains("trials")) cfg.trials = doc["trials"].get<int>();
        if (doc.contains("budget")) cfg.budget = doc["budget"].get<long>();
        if (doc.contains("base_seed"))
            cfg.base_seed = doc["base_seed"].get<std::uint64_t>();
        else if (doc.contains("seeds"))
            cfg.base_seed = doc["seeds"].get<std::uint64_t>();
        if (doc.contains("output_dir"))
            cfg.output_dir = doc["output_dir"].get<std::string>();
        if (doc.contains("model_path"))
            cfg.model_path = doc["model_path"].get<std::string>();
        if (doc.contains("episodes")) cfg.episodes = doc["episodes"].get<int>();
        if (doc.contains("population_size"))
            cfg.population_size = doc["population_size"].get<int>();
        if (doc.contains("scale_factor"))
            cfg.scale_factor = doc["scale_factor"].get<double>();
        if (doc.contains("crossover_rate"))
            cfg.crossover_rate = doc["crossover_rate"].get<double>();
    } catch (const json::exception& e) {
        throw FormatError("bad config field: " + std::string(e.what()));
    }
    return cfg;
}

void ExperimentConfig::validate(bool for_training) const {
    if (domain != "real" && domain != "cvrptw")
        throw ConfigError("domain must be real or cvrptw");
    if (problems.empty()) throw ConfigError("config needs at least one problem");
    if (budget < 1) throw ConfigError("budget must be >= 1");
    if (for_training) {
        if (episodes < 1) throw ConfigError("training needs episodes >= 1");
    } else {
        if (trials < 2) throw ConfigError("statistics need trials >= 2");
        if (aos_modes.empty()) throw ConfigError("config needs at least one AOS mode");
        for (const std::string& m : aos_modes) parse_aos_mode(m);
    }
}

void offline_train(const ExperimentConfig& cfg, const std::string& model_out) {
    cfg.validate(true);
    ensure_dir(cfg.output_dir);
    const std::vector<ProblemEntry> problems = load_problems(cfg);

    const long init_cost = cfg.domain == "real" ? cfg.population_size : 1;
    const long steps_per_episode = std::max<long>(0, cfg.budget - init_cost);

    ControllerConfig cc;
    cc.policy.mode = SelectionMode::StateBasedOnly;
    cc.online_update = true;
    cc.offline_training = true;
    cc.offline_total_steps = steps_per_episode * cfg.episodes;
    cc.features = FeatureSpec{};

    const std::uint64_t seed = training_seed(cfg.base_seed);
    RngStream net_rng = RngStream::substream(seed, 977);
    QNetwork net({cc.features.dim(), 32, 32, cc.features.k_ops}, net_rng);

    HybridController controller(cc, std::move(net), seed);
    for (int ep = 0; ep < cfg.episodes; ++ep) {
        const ProblemEntry& prob =
            problems[static_cast<std::size_t>(ep) % problems.size()];
        const std::uint64_t episode_seed =
            RngStream::substream(seed, 5000 + static_cast<std::uint64_t>(ep)).state();
        auto host = make_host(cfg, prob, episode_seed);
        controller.run(*host, cfg.budget);
    }

    controller.network().save(model_out, cfg.domain);

    std::ofstream loss = open_out(cfg.output_dir + "/training_loss.csv");
    loss << "update,loss\n";
    const auto& losses = controller.training_losses();
    for (std::size_t i = 0; i < losses.size(); ++i)
        loss << i << ',' << format_double(losses[i]) << '\n';
}

std::vector<TrialResult> evaluate(const ExperimentConfig& cfg) {
    cfg.validate(false);
    const std::vector<ProblemEntry> problems = load_problems(cfg);

    std::vector<AosModeSpec> specs;
    bool needs_model = false;
    for (const std::string& m : cfg.aos_modes) {
        specs.push_back(parse_aos_mode(m));
        needs_model |= specs.back().needs_model;
    }

    QNetwork model;
    if (needs_model) {
        if (cfg.model_path.empty())
            throw ConfigError("state-based modes need model_path");
        std::string model_domain;
        try {
            model = QNetwork::load(cfg.model_path, &model_domain);
        } catch (const IoError&) {
            throw ConfigError("model file not found: " + cfg.model_path);
        }
        if (model_domain != cfg.domain)
            throw ConfigError("model trained for domain " + model_domain +
                              ", config wants " + cfg.domain);
    }

    struct Task {
        std::size_t problem;
        std::size_t mode;
        int trial;
    };
    std::vector<Task> tasks;
    for (std::size_t p = 0; p < problems.size(); ++p)
        for (std::size_t m = 0; m < specs.size(); ++m)
            for (int t = 0; t < cfg.trials; ++t) tasks.push_back({p, m, t});

    std::vector<TrialResult> results(tasks.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;

    auto run_task = [&](const Task& task) {
        const ProblemEntry& prob = problems[task.problem];
        const AosModeSpec& spec = specs[task.mode];
        const std::uint64_t trial_seed =
            cfg.base_seed + static_cast<std::uint64_t>(task.trial);

        auto host = make_host(cfg, prob, trial_seed);
        ControllerConfig cc = make_controller_config(spec);
        HybridController controller(cc, spec.needs_model ? model : QNetwork(),
                                    trial_seed);

        const auto start = std::chrono::steady_clock::now();
        const TrialRunResult run = controller.run(*host, cfg.budget);
        const std::chrono::duration<double> elapsed =
            std::chrono::steady_clock::now() - start;

        TrialResult r;
        r.problem = prob.label;
        r.mode = spec.label;
        r.trial = task.trial;
        r.best = run.final_best;
        r.evaluations = run.evaluations;
        r.seconds = elapsed.count();
        r.initial_best = run.initial_best;
        return r;
    };

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size() || failed.load()) break;
            try {
                results[i] = run_task(tasks[i]);
            } catch (const std::exception& e) {
                std::scoped_lock lock(error_mutex);
                failed.store(true);
                if (error_message.empty()) error_message = e.what();
            }
        }
    };

    const int n_workers =
        std::min<int>(worker_count(), static_cast<int>(tasks.size()));
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    if (failed.load()) throw ConfigError("trial failed: " + error_message);
    return results;
}

namespace {

// problem -> (mode -> bests ordered by trial)
std::map<std::string, std::map<std::string, std::vector<double>>>
group_results(const std::vector<TrialResult>& results) {
    std::map<std::string, std::map<std::string, std::vector<std::pair<int, double>>>> tmp;
    for (const TrialResult& r : results)
        tmp[r.problem][r.mode].push_back({r.trial, r.best});
    std::map<std::string, std::map<std::string, std::vector<double>>> out;
    for (auto& [problem, modes] : tmp) {
        for (auto& [mode, vals] : modes) {
            std::sort(vals.begin(), vals.end());
            auto& dst = out[problem][mode];
            for (const auto& [trial, best] : vals) dst.push_back(best);
        }
    }
    return out;
}

} // namespace

ComparisonCell build_comparison(const std::vector<TrialResult>& results,
                                const std::string& mode_row,
                                const std::string& mode_col, double alpha) {
    const auto grouped = group_results(results);
    ComparisonCell cell;
    for (const auto& [problem, modes] : grouped) {
        const auto row_it = modes.find(mode_row);
        const auto col_it = modes.find(mode_col);
        if (row_it == modes.end() || col_it == modes.end()) continue;
        const std::vector<double>& a = row_it->second;
        const std::vector<double>& b = col_it->second;
        if (a.size() != b.size())
            throw ConfigError("unequal trial counts for " + mode_row + " vs " +
                              mode_col + " on " + problem);

        const WilcoxonResult w = wilcoxon_signed_rank(a, b);
        double mean_a = 0.0, mean_b = 0.0;
        for (double v : a) mean_a += v;
        for (double v : b) mean_b += v;
        mean_a /= static_cast<double>(a.size());
        mean_b /= static_cast<double>(b.size());

        if (w.p_two_sided < alpha && mean_a < mean_b)
            ++cell.better;
        else if (w.p_two_sided < alpha && mean_a > mean_b)
            ++cell.worse;
        else
            ++cell.comparable;
    }
    return cell;
}

ComparisonTable build_comparison_table(const std::vector<TrialResult>& results,
                                       const std::vector<std::string>& modes,
                                       double alpha) {
    ComparisonTable table;
    table.modes = modes;
    table.alpha = alpha;
    table.cells.resize(modes.size());
    for (std::size_t i = 0; i < modes.size(); ++i) {
        table.cells[i].resize(modes.size());
        for (std::size_t j = i + 1; j < modes.size(); ++j)
            table.cells[i][j] = build_comparison(results, modes[i], modes[j], alpha);
    }
    return table;
}

void write_report(const std::vector<TrialResult>& results,
                  const ComparisonTable& table, const std::string& dir) {
    ensure_dir(dir);

    {
        std::ofstream out = open_out(dir + "/trials.csv");
        out << "problem,mode,trial,best,evals,seconds\n";
        for (const TrialResult& r : results)
            out << r.problem << ',' << r.mode << ',' << r.trial << ','
                << format_double(r.best) << ',' << r.evaluations << ",0\n";
    }
    {
        std::ofstream out = open_out(dir + "/timings.csv");
        out << "problem,mode,trial,seconds\n";
        for (const TrialResult& r : results)
            out << r.problem << ',' << r.mode << ',' << r.trial << ','
                << format_double(r.seconds) << '\n';
    }
    {
        std::ofstream out = open_out(dir + "/comparison.csv");
        out << "row_mode,col_mode,better,comparable,worse\n";
        for (std::size_t i = 0; i < table.modes.size(); ++i)
            for (std::size_t j = i + 1; j < table.modes.size(); ++j) {
                const ComparisonCell& c = table.cells[i][j];
                out << table.modes[i] << ',' << table.modes[j] << ',' << c.better
                    << ',' << c.comparable << ',' << c.worse << '\n';
            }
    }
    {
        std::ofstream out = open_out(dir + "/comparison.txt");
        out << "(+/~/-) row statistically better/comparable/worse than column, "
               "alpha="
            << table.alpha << "\n\n";
        out << "            ";
        for (std::size_t j = 1; j < table.modes.size(); ++j) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%14s", table.modes[j].c_str());
            out << buf;
        }
        out << '\n';
        for (std::size_t i = 0; i + 1 < table.modes.size(); ++i) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%-12s", table.modes[i].c_str());
            out << buf;
            for (std::size_t j = 1; j < table.modes.size(); ++j) {
                if (j <= i) {
                    std::snprintf(buf, sizeof buf, "%14s", "-");
                } else {
                    const ComparisonCell& c = table.cells[i][j];
                    std::string cell = std::to_string(c.better) + "/" +
                                       std::to_string(c.comparable) + "/" +
                                       std::to_string(c.worse);
                    std::snprintf(buf, sizeof buf, "%14s", cell.c_str());
                }
                out << buf;
            }
            out << '\n';
        }
    }
}

std::vector<TrialResult> read_trials_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open trials file: " + path);
    std::string line;
    if (!std::getline(in, line) || line != "problem,mode,trial,best,evals,seconds")
        throw FormatError("trials.csv header mismatch");

    std::vector<TrialResult> results;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string field;
        TrialResult r;
        try {
            std::getline(ss, r.problem, ',');
            std::getline(ss, r.mode, ',');
            std::getline(ss, field, ',');
            r.trial = std::stoi(field);
            std::getline(ss, field, ',');
            r.best = std::stod(field);
            std::getline(ss, field, ',');
            r.evaluations = std::stol(field);
            std::getline(ss, field, ',');
            r.seconds = std::stod(field);
        } catch (const std::exception&) {
            throw FormatError("bad trials.csv row: " + line);
        }
        results.push_back(std::move(r));
    }
    return results;
}

std::vector<std::string> modes_in_results(const std::vector<TrialResult>& results) {
    std::vector<std::string> modes;
    for (const TrialResult& r : results)
        if (std::find(modes.begin(), modes.end(), r.mode) == modes.end())
            modes.push_back(r.mode);
    return modes;
}

} // namespace hfaos
