#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gexplore/classify.hpp"
#include "gexplore/engine.hpp"
#include "gexplore/plan.hpp"

namespace gexplore::experiment {

struct ExperimentConfig {
    std::string app_preset = "desk"; // desk | erp-like | invoice-demo
    std::optional<std::filesystem::path> app_file;
    std::optional<std::filesystem::path> catalog_file;
    std::optional<std::filesystem::path> plan_file;
    std::vector<engine::Strategy> strategies = {
        engine::Strategy::RLS, engine::Strategy::SSRLS_Partitioning,
        engine::Strategy::SSRLS_FillForms, engine::Strategy::SSRLS};
    int repetitions = 5;
    std::uint64_t seed = 1;
    engine::ExplorerConfig base; // episodes, budget, epsilon, ...
    std::filesystem::path out_dir = "out";
};

// Counts of the five table classes over the forced and budgeted steps of
// one run (the navigation prefix is bookkeeping, not selected behavior).
using ClassCounts = std::map<classify::ActionClass, long>;
ClassCounts count_classes(const engine::RunLog& log);
std::vector<std::vector<classify::ActionClass>> episode_class_sequences(const engine::RunLog& log);

struct StrategyStats {
    std::map<classify::ActionClass, std::pair<double, double>> mean_stddev;
    classify::InteractionAutomaton automaton; // aggregated over repetitions
    std::vector<ClassCounts> per_seed;
};

struct ExperimentResult {
    std::map<engine::Strategy, StrategyStats> stats;
    // p-values of the one-tailed paired test "RLS < variant", per class
    std::map<engine::Strategy, std::map<classify::ActionClass, double>> wilcoxon_vs_rls;
    // per strategy: mean satisfied objectives per functional area
    std::map<engine::Strategy, std::map<std::string, double>> mean_satisfied;
    std::map<engine::Strategy, plan::CoverageResult> first_seed_coverage;
    std::vector<std::string> warnings;
};

// Runs every configured strategy over `repetitions` paired seeds, then
// aggregates: frequency table, Wilcoxon tests against RLS, interaction
// automata, per-run test reports, plan coverage, oracle satisfaction and
// the triage summary. All artifacts land under cfg.out_dir with a fixed
// layout (tables/, reports/, automata/, logs/). Output is byte-stable for
// identical configurations.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::string frequency_table_text(const ExperimentResult& result,
                                 const std::vector<engine::Strategy>& strategies);
std::string wilcoxon_table_text(const ExperimentResult& result,
                                const std::vector<engine::Strategy>& strategies);

sim::AppSpec resolve_app(const ExperimentConfig& cfg);
catalog::Catalog resolve_catalog(const ExperimentConfig& cfg);
std::vector<plan::TestObjective> resolve_plan(const ExperimentConfig& cfg);

} // namespace gexplore::experiment
