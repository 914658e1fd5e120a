#include "gexplore/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gexplore/presets.hpp"
#include "gexplore/report.hpp"
#include "gexplore/stats.hpp"

namespace gexplore::experiment {

using classify::ActionClass;
using engine::Strategy;

sim::AppSpec resolve_app(const ExperimentConfig& cfg) {
    if (cfg.app_file) return sim::load_app_spec(*cfg.app_file);
    return presets::app_by_name(cfg.app_preset);
}

catalog::Catalog resolve_catalog(const ExperimentConfig& cfg) {
    if (cfg.catalog_file) return catalog::load_catalog(*cfg.catalog_file).catalog;
    return presets::catalog_by_name(cfg.app_preset);
}

std::vector<plan::TestObjective> resolve_plan(const ExperimentConfig& cfg) {
    if (cfg.plan_file) return plan::load_plan(*cfg.plan_file);
    return presets::plan_by_name(cfg.app_preset);
}

ClassCounts count_classes(const engine::RunLog& log) {
    ClassCounts counts;
    for (ActionClass c : classify::kTableClasses) counts[c] = 0;
    counts[ActionClass::Other] = 0;
    // the navigation prefix replays known paths; only forced and budgeted
    // steps count as selected behavior
    for (const auto& s : log.steps)
        if (s.index >= 0) counts[s.cls] += 1;
    return counts;
}

std::vector<std::vector<ActionClass>> episode_class_sequences(const engine::RunLog& log) {
    std::map<int, std::vector<ActionClass>> by_episode;
    for (const auto& s : log.steps)
        if (s.index >= 0) by_episode[s.episode].push_back(s.cls);
    std::vector<std::vector<ActionClass>> out;
    for (auto& [ep, seq] : by_episode) out.push_back(std::move(seq));
    return out;
}

namespace {

std::string seed_tag(std::uint64_t seed) { return "seed" + std::to_string(seed); }

std::string fixed1(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
}

std::string coverage_table_text(const std::vector<Strategy>& strategies,
                                const ExperimentResult& result,
                                const std::vector<plan::TestObjective>& objectives) {
    std::map<std::string, int> per_area_totals;
    for (const auto& obj : objectives) per_area_totals[obj.functional_area] += 1;
    std::ostringstream os;
    os << "Coverage of the test plan (mean satisfied objectives over repetitions)\n\n";
    os << "functional area\tobjectives";
    for (Strategy s : strategies) os << "\tsatisfied w/ " << engine::to_string(s);
    os << "\n";
    int total = 0;
    std::map<Strategy, double> strategy_totals;
    for (const auto& [area, count] : per_area_totals) {
        os << area << '\t' << count;
        total += count;
        for (Strategy s : strategies) {
            double mean = 0.0;
            auto it = result.mean_satisfied.find(s);
            if (it != result.mean_satisfied.end()) {
                auto at = it->second.find(area);
                if (at != it->second.end()) mean = at->second;
            }
            strategy_totals[s] += mean;
            os << '\t' << fixed1(mean);
        }
        os << "\n";
    }
    os << "Total\t" << total;
    for (Strategy s : strategies) os << '\t' << fixed1(strategy_totals[s]);
    os << "\n";
    return os.str();
}

std::string oracle_table_text(const std::vector<Strategy>& strategies,
                              const ExperimentResult& result) {
    std::ostringstream os;
    os << "Test oracles satisfaction rates (first repetition)\n";
    for (Strategy s : strategies) {
        auto it = result.first_seed_coverage.find(s);
        if (it == result.first_seed_coverage.end()) continue;
        const plan::CoverageResult& cov = it->second;
        os << "\nstrategy " << engine::to_string(s) << "\n";
        os << "functional area\treached oracles\tverified\tverified %\n";
        for (const auto& [area, a] : cov.areas) {
            int pct = a.reached_checks
                          ? static_cast<int>(std::lround(100.0 * a.verified / a.reached_checks))
                          : 0;
            os << area << '\t' << a.reached_checks << '\t' << a.verified << '\t' << pct << "%\n";
        }
        os << "Total\t" << cov.total.reached_checks << '\t' << cov.total.verified << '\t'
           << cov.percent_verified() << "%\n";
    }
    return os.str();
}

std::string triage_table_text(const std::vector<Strategy>& strategies,
                              const ExperimentResult& result,
                              const std::vector<plan::TestObjective>& objectives) {
    std::ostringstream os;
    os << "Residual-effort triage (first repetition)\n\n";
    os << "strategy\tmanual design\tmanual replay\tbrowsed in reports\n";
    for (Strategy s : strategies) {
        auto it = result.first_seed_coverage.find(s);
        if (it == result.first_seed_coverage.end()) continue;
        plan::TriageSummary t = plan::triage(objectives, it->second);
        os << engine::to_string(s) << '\t' << t.manual_design << '\t' << t.manual_replay << '\t'
           << t.browsed << "\n";
    }
    return os.str();
}

} // namespace

std::string frequency_table_text(const ExperimentResult& result,
                                 const std::vector<Strategy>& strategies) {
    std::ostringstream os;
    os << "Mean (m) and standard deviation (s) of the execution frequency per action class\n\n";
    os << "strategy";
    for (ActionClass c : classify::kTableClasses)
        os << '\t' << classify::to_string(c) << " m\t" << classify::to_string(c) << " s";
    os << "\n";
    for (Strategy s : strategies) {
        auto it = result.stats.find(s);
        if (it == result.stats.end()) continue;
        os << engine::to_string(s);
        for (ActionClass c : classify::kTableClasses) {
            auto ms = it->second.mean_stddev.find(c);
            if (ms == it->second.mean_stddev.end())
                os << "\t-\t-";
            else
                os << '\t' << fixed1(ms->second.first) << '\t' << fixed1(ms->second.second);
        }
        os << "\n";
    }
    return os.str();
}

std::string wilcoxon_table_text(const ExperimentResult& result,
                                const std::vector<Strategy>& strategies) {
    std::ostringstream os;
    os << "Wilcoxon (paired, one tail) test: alternative hypothesis that RLS < strategy\n\n";
    os << "strategy";
    for (ActionClass c : classify::kTableClasses) os << '\t' << classify::to_string(c);
    os << "\n";
    for (Strategy s : strategies) {
        auto it = result.wilcoxon_vs_rls.find(s);
        if (it == result.wilcoxon_vs_rls.end()) continue;
        os << engine::to_string(s);
        for (ActionClass c : classify::kTableClasses) os << '\t' << fixed2(it->second.at(c));
        os << "\n";
    }
    return os.str();
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    if (cfg.repetitions < 1) throw ValidationError("repetitions must be >= 1");
    if (cfg.strategies.empty()) throw ValidationError("no strategies configured");

    sim::AppSpec app = resolve_app(cfg);
    catalog::Catalog cat = resolve_catalog(cfg);
    std::vector<plan::TestObjective> objectives = resolve_plan(cfg);
    std::string app_ref = cfg.app_file ? cfg.app_file->string() : cfg.app_preset;
    std::string catalog_ref = cfg.catalog_file ? cfg.catalog_file->string() : cfg.app_preset;

    ExperimentResult result;
    if (cfg.repetitions == 1)
        result.warnings.push_back(
            "single repetition: standard deviations and significance tests are omitted");

    std::map<Strategy, std::vector<std::vector<ActionClass>>> all_sequences;

    for (Strategy strategy : cfg.strategies) {
        StrategyStats st;
        for (int rep = 0; rep < cfg.repetitions; ++rep) {
            engine::ExplorerConfig run_cfg = cfg.base;
            run_cfg.strategy = strategy;
            run_cfg.seed = cfg.seed + static_cast<std::uint64_t>(rep);

            engine::RunResult run = engine::run_strategy(app, cat, run_cfg, app_ref, catalog_ref);

            engine::save_runlog(run.log,
                                cfg.out_dir / "logs" /
                                    (std::string(engine::to_string(strategy)) + "_" +
                                     seed_tag(run_cfg.seed) + ".runlog"));
            report::GeneratedReport rep_files = report::generate_report(run.tests, app);
            report::render(rep_files, cfg.out_dir / "reports" / engine::to_string(strategy) /
                                          seed_tag(run_cfg.seed));

            st.per_seed.push_back(count_classes(run.log));
            for (auto& seq : episode_class_sequences(run.log))
                all_sequences[strategy].push_back(std::move(seq));

            plan::CoverageResult cov = plan::verify_oracles(objectives, run.tests, app);
            for (const auto& [area, a] : cov.areas)
                result.mean_satisfied[strategy][area] +=
                    static_cast<double>(a.satisfied) / cfg.repetitions;
            if (rep == 0) result.first_seed_coverage[strategy] = cov;
        }
        if (cfg.repetitions >= 2) {
            for (ActionClass c : classify::kTableClasses) {
                std::vector<double> values;
                for (const auto& counts : st.per_seed)
                    values.push_back(static_cast<double>(counts.at(c)));
                st.mean_stddev[c] = stats::summarize(values);
            }
        }
        st.automaton = classify::build_automaton(all_sequences[strategy]);
        write_file(cfg.out_dir / "automata" /
                       (std::string(engine::to_string(strategy)) + ".dot"),
                   classify::automaton_to_dot(st.automaton, engine::to_string(strategy)));
        result.stats[strategy] = std::move(st);
    }

    // paired significance tests against the baseline strategy
    bool has_rls = std::find(cfg.strategies.begin(), cfg.strategies.end(), Strategy::RLS) !=
                   cfg.strategies.end();
    if (has_rls && cfg.repetitions >= 2) {
        const auto& rls = result.stats.at(Strategy::RLS).per_seed;
        for (Strategy s : cfg.strategies) {
            if (s == Strategy::RLS) continue;
            for (ActionClass c : classify::kTableClasses) {
                std::vector<double> x, y;
                for (int rep = 0; rep < cfg.repetitions; ++rep) {
                    x.push_back(static_cast<double>(rls[rep].at(c)));
                    y.push_back(static_cast<double>(result.stats.at(s).per_seed[rep].at(c)));
                }
                result.wilcoxon_vs_rls[s][c] = stats::wilcoxon_paired_one_tail(x, y);
            }
        }
    }

    write_file(cfg.out_dir / "tables" / "action_frequencies.txt",
               frequency_table_text(result, cfg.strategies));
    if (!result.wilcoxon_vs_rls.empty())
        write_file(cfg.out_dir / "tables" / "wilcoxon.txt",
                   wilcoxon_table_text(result, cfg.strategies));
    write_file(cfg.out_dir / "tables" / "plan_coverage.txt",
               coverage_table_text(cfg.strategies, result, objectives));
    write_file(cfg.out_dir / "tables" / "oracle_satisfaction.txt",
               oracle_table_text(cfg.strategies, result));
    write_file(cfg.out_dir / "tables" / "triage.txt",
               triage_table_text(cfg.strategies, result, objectives));
    return result;
}

} // namespace gexplore::experiment
