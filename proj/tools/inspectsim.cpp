#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "inspsim/config.hpp"
#include "inspsim/ply.hpp"
#include "inspsim/results.hpp"

namespace fs = std::filesystem;
using namespace inspsim;

namespace {

struct CommonOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out = "out";
    int jobs = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "TOML or JSON config file");
    cmd->add_option("--seed", opts.seed, "RNG seed override");
    cmd->add_option("--out", opts.out, "output directory");
    cmd->add_option("--jobs", opts.jobs, "parallel workers (0 = all cores)");
}

ExperimentConfig resolve(const CommonOpts& opts) {
    ExperimentConfig cfg =
        opts.config_path.empty() ? ExperimentConfig{} : load_config(opts.config_path);
    if (opts.seed) {
        cfg.mc.rng_seed = *opts.seed;
        cfg.val.rng_seed = *opts.seed;
    }
    cfg.output_dir = opts.out;
    fs::create_directories(cfg.output_dir);
    return cfg;
}

void dump_resolved(const ExperimentConfig& cfg) {
    std::ofstream f(cfg.output_dir + "/resolved_config.json", std::ios::binary);
    if (!f) throw std::runtime_error("cannot write resolved_config.json");
    f << dump_config(cfg);
}

StrategyKind family_kind(const std::string& family) {
    if (family == "ph") return StrategyKind::PointHold;
    if (family == "nmc") return StrategyKind::NmcHold;
    throw ConfigError("--family must be ph or nmc");
}

std::vector<EvalResult> run_mc_family(const ExperimentConfig& cfg, StrategyKind kind,
                                      int jobs) {
    const Constants& c = cfg.constants;
    const ActionSpace space =
        kind == StrategyKind::PointHold
            ? build_waypoint_ring(cfg.mc.n_agloc, cfg.mc.waypoint_radius, c)
            : build_nmc_family(cfg.mc.n_agloc, cfg.mc.nmc_x0, 0.0, c);
    const auto specs = enumerate_passive_strategies(space, cfg.mc.n_deputies);

    std::vector<EvalResult> results(specs.size());
    std::atomic<std::size_t> next{0};
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned n_threads =
        std::min<unsigned>(jobs > 0 ? unsigned(jobs) : hw, unsigned(specs.size()));
    std::vector<std::thread> workers;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (unsigned w = 0; w < n_threads; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= specs.size()) return;
                try {
                    results[i] = evaluate_strategy(specs[i], cfg.mc);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& w : workers) w.join();
    if (first_error) std::rethrow_exception(first_error);
    return results;
}

int cmd_mc_eval(const CommonOpts& opts, const std::string& family,
                std::optional<std::size_t> samples, std::optional<std::size_t> max_strategies) {
    ExperimentConfig cfg = resolve(opts);
    if (samples) cfg.mc.n_samples = *samples;
    const StrategyKind kind = family_kind(family);

    auto results = run_mc_family(cfg, kind, opts.jobs);
    if (max_strategies && results.size() > *max_strategies) {
        results.resize(*max_strategies);
    }
    const std::string eval_name = "eval_" + family + ".csv";
    write_eval_csv(results, cfg.output_dir + "/" + eval_name);

    const auto front = pareto_front(results);
    nlohmann::json pj;
    pj["family"] = family;
    pj["front"] = nlohmann::json::array();
    for (const auto i : front) {
        pj["front"].push_back({{"index", i},
                               {"mean_inspection_fraction", results[i].mean_inspection_fraction},
                               {"mean_time_to_threshold", results[i].mean_time_to_threshold},
                               {"mean_fuel", results[i].mean_fuel},
                               {"assignment", results[i].strategy.assignment}});
    }
    const std::string pareto_name = "pareto_" + family + ".json";
    {
        std::ofstream f(cfg.output_dir + "/" + pareto_name, std::ios::binary);
        f << pj.dump(2) << "\n";
    }
    dump_resolved(cfg);
    write_manifest(cfg.output_dir, dump_config(cfg), cfg.mc.rng_seed,
                   {eval_name, pareto_name, "resolved_config.json"});
    std::cout << results.size() << " strategies evaluated, front size " << front.size()
              << "\n";
    return 0;
}

int cmd_select_pareto(const CommonOpts& opts, std::optional<std::size_t> samples) {
    ExperimentConfig cfg = resolve(opts);
    if (samples) cfg.mc.n_samples = *samples;
    for (const std::string family : {"ph", "nmc"}) {
        const StrategyKind kind = family_kind(family);
        const auto results = run_mc_family(cfg, kind, opts.jobs);
        const auto front = pareto_front(results);
        // best fraction; ties broken by the shorter time-to-threshold
        std::size_t best = front.front();
        for (const auto i : front) {
            const auto &a = results[i], &b = results[best];
            if (a.mean_inspection_fraction > b.mean_inspection_fraction ||
                (a.mean_inspection_fraction == b.mean_inspection_fraction &&
                 a.mean_time_to_threshold < b.mean_time_to_threshold)) {
                best = i;
            }
        }
        save_strategy(results[best].strategy,
                      cfg.output_dir + "/strategy_" + family + ".json");
        std::cout << family << ": picked assignment";
        for (const auto& dep : results[best].strategy.assignment) {
            std::cout << " " << dep.front();
        }
        std::cout << "\n";
    }
    dump_resolved(cfg);
    return 0;
}

void apply_strategy_files(ExperimentConfig& cfg) {
    auto first_actions = [](const StrategySpec& s) {
        std::vector<std::uint32_t> a;
        for (const auto& dep : s.assignment) a.push_back(dep.front());
        return a;
    };
    if (!cfg.ph_strategy_file.empty()) {
        cfg.val.ph_assignment = first_actions(load_strategy(cfg.ph_strategy_file));
    }
    if (!cfg.nmc_strategy_file.empty()) {
        cfg.val.nmc_assignment = first_actions(load_strategy(cfg.nmc_strategy_file));
    }
}

int cmd_validate(const CommonOpts& opts, std::optional<std::size_t> trials,
                 const std::vector<std::string>& modes,
                 const std::vector<std::string>& policies) {
    ExperimentConfig cfg = resolve(opts);
    apply_strategy_files(cfg);
    if (trials) cfg.val.trials_per_cell = *trials;
    if (!modes.empty()) {
        cfg.val.modes.clear();
        for (const auto& m : modes) {
            if (m == "StaticCWH" || m == "static") cfg.val.modes.push_back(RsoMode::StaticCWH);
            else if (m == "StableTumble" || m == "tumble")
                cfg.val.modes.push_back(RsoMode::StableTumble);
            else throw ConfigError("--modes: unknown mode '" + m + "'");
        }
    }
    if (!policies.empty()) {
        cfg.val.policies.clear();
        for (const auto& p : policies) {
            if (p == "PH") cfg.val.policies.push_back(StrategyKind::PointHold);
            else if (p == "NMC") cfg.val.policies.push_back(StrategyKind::NmcHold);
            else if (p == "greedy") cfg.val.policies.push_back(StrategyKind::GreedyActive);
            else throw ConfigError("--policies: unknown policy '" + p + "'");
        }
    }

    const auto records = run_campaign(cfg.val, opts.jobs);
    write_trials_csv(records, cfg.output_dir + "/trials.csv");
    write_series_csv(records, cfg.output_dir + "/series.csv");
    dump_resolved(cfg);
    write_manifest(cfg.output_dir, dump_config(cfg), cfg.val.rng_seed,
                   {"trials.csv", "series.csv", "resolved_config.json"});
    std::size_t ok = 0;
    for (const auto& r : records) ok += r.failure_reason.empty();
    std::cout << records.size() << " trials (" << ok << " feasible entrances)\n";
    return 0;
}

FactorialData trials_to_factorial(const std::vector<TrialRecord>& records,
                                  const std::string& response) {
    std::vector<double> y;
    std::vector<std::size_t> la, lb;
    std::vector<std::string> a_names, b_names;
    auto level_of = [](std::vector<std::string>& names, const std::string& name) {
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (names[i] == name) return i;
        }
        names.push_back(name);
        return names.size() - 1;
    };
    for (const auto& r : records) {
        y.push_back(response == "coverage" ? r.inspection_fraction : r.fuel_total);
        la.push_back(level_of(a_names, policy_name(r.policy)));
        lb.push_back(level_of(b_names, mode_name(r.mode)));
    }
    FactorialData d = FactorialData::from_observations(y, la, lb);
    d.a_names = a_names;
    d.b_names = b_names;
    return d;
}

int cmd_analyze(const CommonOpts& opts, const std::string& trials_path,
                const std::string& response, double alpha) {
    ExperimentConfig cfg = resolve(opts);
    const auto records = read_trials_csv(trials_path);
    const FactorialData data = trials_to_factorial(records, response);

    write_summary_csv(data, summarize(data), cfg.output_dir + "/summary.csv");
    const AnovaTable anova = two_way_anova(data);
    write_anova_csv(anova, cfg.output_dir + "/anova.csv");
    write_levene_csv(levene_test(data), cfg.output_dir + "/levene.csv");
    const AnovaTable art = art_anova(data);
    write_anova_csv(art, cfg.output_dir + "/art.csv");

    const bool interaction = anova.row("A:B").f_defined && anova.row("A:B").p < alpha;
    const ContrastFamily family =
        interaction ? ContrastFamily::SimpleEffects : ContrastFamily::MainEffects;
    write_contrasts_csv(pairwise_contrasts(data, family),
                        cfg.output_dir + "/contrasts.csv");
    FactorialData ranked = data;
    ranked.response = average_ranks(data.response);
    const bool art_interaction = art.row("A:B").f_defined && art.row("A:B").p < alpha;
    write_contrasts_csv(pairwise_contrasts(ranked, art_interaction
                                                       ? ContrastFamily::SimpleEffects
                                                       : ContrastFamily::MainEffects),
                        cfg.output_dir + "/contrasts_art.csv");

    // residuals from the cell means, for the normality check
    std::vector<double> residuals;
    const auto cells = summarize(data);
    for (std::size_t ia = 0; ia < data.a_levels; ++ia) {
        for (std::size_t ib = 0; ib < data.b_levels; ++ib) {
            const auto& cell = cells[ia * data.b_levels + ib];
            for (std::size_t k = 0; k < data.cell_n; ++k) {
                residuals.push_back(data.value(ia, ib, k) - cell.mean);
            }
        }
    }
    write_qq_csv(qq_data(residuals), cfg.output_dir + "/qq.csv");
    dump_resolved(cfg);
    write_manifest(cfg.output_dir, dump_config(cfg), cfg.val.rng_seed,
                   {"summary.csv", "anova.csv", "levene.csv", "art.csv", "contrasts.csv",
                    "contrasts_art.csv", "qq.csv", "resolved_config.json"});
    std::cout << "analysis written to " << cfg.output_dir << " ("
              << (interaction ? "interaction" : "main-effects") << " contrasts)\n";
    return 0;
}

int cmd_demo(const CommonOpts& opts) {
    ExperimentConfig cfg = resolve(opts);
    apply_strategy_files(cfg);
    const PoiCloud cloud = cfg.val.geometry_ply.empty()
                               ? panel_satellite_cloud(cfg.val.standin_vertices)
                               : load_ply(cfg.val.geometry_ply);
    const TrialRecord rec =
        run_trial(cfg.val.modes.front(), cfg.val.policies.front(), 0, cfg.val, cloud);
    write_trials_csv({rec}, cfg.output_dir + "/demo_trial.csv");
    write_series_csv({rec}, cfg.output_dir + "/demo_series.csv");
    dump_resolved(cfg);
    write_manifest(cfg.output_dir, dump_config(cfg), cfg.val.rng_seed,
                   {"demo_trial.csv", "demo_series.csv", "resolved_config.json"});
    std::cout << "demo trial: coverage " << rec.inspection_fraction << ", fuel "
              << rec.fuel_total << " m/s, "
              << (rec.success ? "success" : "threshold not reached") << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Satellite inspection simulation and evaluation toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string family = "ph";
    std::optional<std::size_t> samples, max_strategies, trials;
    std::vector<std::string> modes, policies;
    std::string trials_path = "out/trials.csv";
    std::string response = "fuel";
    double alpha = 0.05;

    auto* mc = app.add_subcommand("mc-eval", "Monte-Carlo passive-strategy sweep");
    add_common(mc, opts);
    mc->add_option("--family", family, "strategy family: ph | nmc");
    mc->add_option("--samples", samples, "rotation samples per strategy");
    mc->add_option("--max-strategies", max_strategies, "cap on evaluated strategies");

    auto* sel = app.add_subcommand("select-pareto", "pick the best passive strategies");
    add_common(sel, opts);
    sel->add_option("--samples", samples, "rotation samples per strategy");

    auto* val = app.add_subcommand("validate", "factorial validation campaign");
    add_common(val, opts);
    val->add_option("--trials", trials, "trials per (mode, policy) cell");
    val->add_option("--modes", modes, "subset of modes (StaticCWH, StableTumble)");
    val->add_option("--policies", policies, "subset of policies (PH, NMC, greedy)");

    auto* ana = app.add_subcommand("analyze", "statistical comparison of a campaign");
    add_common(ana, opts);
    ana->add_option("--trials-csv", trials_path, "trials.csv produced by validate");
    ana->add_option("--response", response, "response column: fuel | coverage");
    ana->add_option("--alpha", alpha, "interaction significance level");

    auto* demo = app.add_subcommand("demo", "single seeded trial for smoke testing");
    add_common(demo, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (mc->parsed()) return cmd_mc_eval(opts, family, samples, max_strategies);
        if (sel->parsed()) return cmd_select_pareto(opts, samples);
        if (val->parsed()) return cmd_validate(opts, trials, modes, policies);
        if (ana->parsed()) return cmd_analyze(opts, trials_path, response, alpha);
        if (demo->parsed()) return cmd_demo(opts);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
