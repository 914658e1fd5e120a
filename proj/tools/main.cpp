#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gexplore/experiment.hpp"
#include "gexplore/presets.hpp"
#include "gexplore/report.hpp"

namespace fs = std::filesystem;
using namespace gexplore;

namespace {

fs::path default_out_dir() {
    if (const char* env = std::getenv("GEXPLORE_OUT")) return fs::path(env);
    return fs::path("out");
}

struct CommonOpts {
    std::string app_preset = "desk";
    std::string app_file;
    std::string catalog_file;
    std::string plan_file;
    std::string out_dir = default_out_dir().string();
    std::uint64_t seed = 1;
    engine::ExplorerConfig base;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--app-preset", o.app_preset, "Application preset (desk, erp-like)")
        ->check(CLI::IsMember({"desk", "erp-like", "invoice-demo"}));
    cmd->add_option("--app-file", o.app_file, "Application spec file (JSON), overrides the preset");
    cmd->add_option("--catalog", o.catalog_file, "Input value catalog file");
    cmd->add_option("--plan", o.plan_file, "Test plan file");
    cmd->add_option("--out", o.out_dir, "Output directory");
    cmd->add_option("--seed", o.seed, "Base random seed");
    cmd->add_option("--episodes", o.base.episodes, "Episodes per run");
    cmd->add_option("--actions-per-episode", o.base.actions_per_episode, "Actions per episode");
    cmd->add_option("--epsilon", o.base.epsilon, "Exploration probability");
    cmd->add_option("--pcomplex", o.base.p_complex, "Complex action probability");
    cmd->add_option("--pi", o.base.pi, "Fill-and-submit probability");
    cmd->add_option("--alpha", o.base.alpha, "Learning rate");
    cmd->add_option("--gamma", o.base.gamma, "Discount factor");
}

experiment::ExperimentConfig to_experiment_config(const CommonOpts& o) {
    experiment::ExperimentConfig cfg;
    cfg.app_preset = o.app_preset;
    if (!o.app_file.empty()) cfg.app_file = o.app_file;
    if (!o.catalog_file.empty()) cfg.catalog_file = o.catalog_file;
    if (!o.plan_file.empty()) cfg.plan_file = o.plan_file;
    cfg.seed = o.seed;
    cfg.base = o.base;
    cfg.out_dir = o.out_dir;
    return cfg;
}

engine::Strategy parse_strategy(const std::string& name) {
    auto s = engine::strategy_from_string(name);
    if (!s)
        throw ValidationError("unknown strategy '" + name +
                              "' (rls, ssrls-partitioning, ssrls-fillforms, ssrls)");
    return *s;
}

void resolve_refs(const std::string& app_ref, const std::string& catalog_ref, sim::AppSpec& app,
                  catalog::Catalog& cat) {
    if (presets::is_app_preset(app_ref))
        app = presets::app_by_name(app_ref);
    else
        app = sim::load_app_spec(app_ref);
    if (presets::is_app_preset(catalog_ref))
        cat = presets::catalog_by_name(catalog_ref);
    else
        cat = catalog::load_catalog(catalog_ref).catalog;
}

int cmd_run(const CommonOpts& o, const std::vector<std::string>& strategy_names,
            int repetitions) {
    experiment::ExperimentConfig cfg = to_experiment_config(o);
    cfg.repetitions = repetitions;
    if (!strategy_names.empty()) {
        cfg.strategies.clear();
        for (const auto& name : strategy_names) cfg.strategies.push_back(parse_strategy(name));
    }
    experiment::ExperimentResult result = experiment::run_experiment(cfg);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << experiment::frequency_table_text(result, cfg.strategies);
    if (!result.wilcoxon_vs_rls.empty())
        std::cout << "\n" << experiment::wilcoxon_table_text(result, cfg.strategies);
    std::cout << "\nartifacts written to " << cfg.out_dir << "\n";
    return 0;
}

int cmd_explore(const CommonOpts& o, const std::string& strategy_name) {
    experiment::ExperimentConfig cfg = to_experiment_config(o);
    sim::AppSpec app = experiment::resolve_app(cfg);
    catalog::Catalog cat = experiment::resolve_catalog(cfg);
    std::string app_ref = o.app_file.empty() ? o.app_preset : o.app_file;
    std::string catalog_ref = o.catalog_file.empty() ? o.app_preset : o.catalog_file;

    engine::ExplorerConfig run_cfg = o.base;
    run_cfg.strategy = parse_strategy(strategy_name);
    run_cfg.seed = o.seed;
    engine::RunResult run = engine::run_strategy(app, cat, run_cfg, app_ref, catalog_ref);

    fs::path out(o.out_dir);
    fs::path log_path = out / "logs" /
                        (std::string(engine::to_string(run_cfg.strategy)) + "_seed" +
                         std::to_string(o.seed) + ".runlog");
    fs::create_directories(log_path.parent_path());
    engine::save_runlog(run.log, log_path);
    report::GeneratedReport rep = report::generate_report(run.tests, app);
    report::render(rep, out / "reports");

    std::cout << "episodes: " << run.tests.size() << ", steps: " << run.log.steps.size()
              << ", divergences: " << run.log.divergences << "\n";
    std::cout << "runlog: " << log_path.string() << "\n";
    std::cout << "reports: " << (out / "reports" / "index.html").string() << "\n";
    return 0;
}

int cmd_report(const std::string& runlog, const std::string& out_dir) {
    engine::RunLogHeader header = engine::parse_runlog_header(runlog);
    sim::AppSpec app;
    catalog::Catalog cat;
    resolve_refs(header.app_ref, header.catalog_ref, app, cat);
    std::vector<engine::TestCase> tests = engine::replay_runlog(runlog, app, cat);
    report::GeneratedReport rep = report::generate_report(tests, app);
    report::render(rep, out_dir);
    std::cout << "re-rendered " << tests.size() << " test cases to " << out_dir << "\n";
    return 0;
}

int cmd_verify(const CommonOpts& o, const std::string& runlog) {
    engine::RunLogHeader header = engine::parse_runlog_header(runlog);
    sim::AppSpec app;
    catalog::Catalog cat;
    resolve_refs(header.app_ref, header.catalog_ref, app, cat);
    std::vector<engine::TestCase> tests = engine::replay_runlog(runlog, app, cat);

    std::vector<plan::TestObjective> objectives;
    if (!o.plan_file.empty())
        objectives = plan::load_plan(o.plan_file);
    else if (presets::is_app_preset(header.app_ref))
        objectives = presets::plan_by_name(header.app_ref);
    else
        throw ValidationError("no --plan given and the runlog does not name a preset");

    plan::CoverageResult cov = plan::verify_oracles(objectives, tests, app);
    plan::TriageSummary t = plan::triage(objectives, cov);

    std::cout << "functional area\tobjectives\tsatisfied\treached oracles\tverified\n";
    for (const auto& [area, a] : cov.areas)
        std::cout << area << '\t' << a.objectives << '\t' << a.satisfied << '\t'
                  << a.reached_checks << '\t' << a.verified << "\n";
    std::cout << "Total\t" << cov.total.objectives << '\t' << cov.total.satisfied << '\t'
              << cov.total.reached_checks << '\t' << cov.total.verified << "\n";
    std::cout << "satisfied: " << cov.percent_satisfied()
              << "%, verified of reached oracles: " << cov.percent_verified() << "%\n";
    std::cout << "triage: manual design " << t.manual_design << ", manual replay "
              << t.manual_replay << ", browsed " << t.browsed << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"GUI exploration test generator for menu-driven business applications"};
    app.require_subcommand(1);

    CommonOpts run_opts;
    std::vector<std::string> strategy_names;
    int repetitions = 5;
    CLI::App* run = app.add_subcommand("run", "Run the full multi-strategy experiment");
    add_common(run, run_opts);
    run->add_option("--strategy", strategy_names,
                    "Strategies to run (default: rls, ssrls-partitioning, ssrls-fillforms, ssrls)");
    run->add_option("--repetitions", repetitions, "Paired repetitions per strategy");

    CommonOpts explore_opts;
    std::string explore_strategy = "ssrls";
    CLI::App* explore = app.add_subcommand("explore", "Run a single strategy once");
    add_common(explore, explore_opts);
    explore->add_option("--strategy", explore_strategy, "Strategy to run");

    std::string report_runlog, report_out = default_out_dir().string();
    CLI::App* report_cmd = app.add_subcommand("report", "Re-render reports from a runlog");
    report_cmd->add_option("--runlog", report_runlog, "Runlog file")->required();
    report_cmd->add_option("--out", report_out, "Output directory");

    CommonOpts verify_opts;
    std::string verify_runlog;
    CLI::App* verify = app.add_subcommand("verify", "Check a test plan against a runlog");
    add_common(verify, verify_opts);
    verify->add_option("--runlog", verify_runlog, "Runlog file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(run_opts, strategy_names, repetitions);
        if (explore->parsed()) return cmd_explore(explore_opts, explore_strategy);
        if (report_cmd->parsed()) return cmd_report(report_runlog, report_out);
        if (verify->parsed()) return cmd_verify(verify_opts, verify_runlog);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
