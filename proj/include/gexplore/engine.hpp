#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gexplore/catalog.hpp"
#include "gexplore/classify.hpp"
#include "gexplore/qmodel.hpp"
#include "gexplore/simulator.hpp"

namespace gexplore::engine {

enum class Strategy { RLS, SSRLS_Partitioning, SSRLS_FillForms, SSRLS };

const char* to_string(Strategy s);
std::optional<Strategy> strategy_from_string(const std::string& s);

// Whether the strategy constrains each episode to a single graphical menu.
bool uses_partitioning(Strategy s);
// Whether the strategy handles input forms with the fill-and-submit
// complex action (probability pi per step).
bool uses_fill_forms(Strategy s);

struct ExplorerConfig {
    double epsilon = 0.7;
    double p_complex = 0.5;
    double pi = 0.5;
    int episodes = 50;
    int actions_per_episode = 30;
    // Update-rule constants; exposed because they are assumptions, not
    // part of the published parameter set.
    double alpha = 0.9;
    double gamma = 0.9;
    Strategy strategy = Strategy::RLS;
    std::uint64_t seed = 1;

    LearningParams learning() const { return {alpha, gamma}; }
    void validate() const;
};

// One executed step. Indices: negative for the prefix that reaches the
// episode's start state, 0 for the menu action forced by the partitioning
// constraint, 1..n for budgeted actions.
struct StepRecord {
    int episode = 0;
    int index = 0;
    sim::Action action;
    std::string signature;
    classify::ActionClass cls = classify::ActionClass::Other;
    double reward = 0.0;
    AbstractStateId from;
    AbstractStateId to;
    std::vector<sim::OutputEvent> events;

    bool in_prefix() const { return index < 0; }
    bool in_budget() const { return index >= 0; }
};

struct TestCase {
    std::string id; // "T<episode>"
    Strategy strategy = Strategy::RLS;
    std::uint64_t seed = 0;
    std::vector<StepRecord> steps;
};

struct RunLog {
    Strategy strategy = Strategy::RLS;
    std::uint64_t seed = 0;
    ExplorerConfig config;
    std::string app_ref;     // preset name or file path
    std::string catalog_ref; // preset name or file path
    int divergences = 0;     // witness replays that fell back to the home page
    std::vector<StepRecord> steps;
};

struct RunResult {
    std::vector<TestCase> tests;
    QModel model;
    RunLog log;
};

// Fills every editable input field on every tab of the foreground input
// form (clicking through the tabs) using catalog lookups, then clicks the
// submit button. List and combo fields are only picked when they have no
// current selection. Throws PreconditionError when the foreground window
// is not an input form.
std::vector<std::pair<sim::Action, std::vector<sim::OutputEvent>>> fill_and_submit(
    sim::WorldState& world, const catalog::Catalog& catalog, Rng& rng);

// Same workflow, but every primitive action is routed through the caller
// (the episode loop learns on each one).
void fill_and_submit_observed(sim::WorldState& world, const catalog::Catalog& catalog, Rng& rng,
                              const std::function<void(const sim::Action&)>& run_action);

// The complex-action gate: when the current state admits a complex action
// (fill-and-submit is the only one shipped), selects it with probability
// p_complex.
bool maybe_complex_action(const sim::WorldState& world, const ExplorerConfig& cfg, Rng& rng);

using WorldFactory = std::function<sim::WorldState()>;

struct RandomStartResult {
    sim::WorldState world;
    std::vector<StepRecord> prefix; // indices filled in by the caller
    bool diverged = false;
};

// Resets the world and replays the witness path of a uniformly random
// model state (the initial page when the model is empty). A divergence
// (abstract-state mismatch at any replay step) falls back to the initial
// page.
RandomStartResult go_to_random_state(const QModel& model, const WorldFactory& factory, Rng& rng);

// One episode of the plain reinforcement-learning strategy.
TestCase run_episode_rls(const WorldFactory& factory, QModel& model,
                         const catalog::Catalog& catalog, const ExplorerConfig& cfg, Rng& rng,
                         int episode_number, int* divergences);

// One episode with the menu-partitioning and/or fill-forms constraints
// (which of the two apply follows from cfg.strategy).
TestCase run_episode_ssrls(const WorldFactory& factory, QModel& model,
                           const catalog::Catalog& catalog, const ExplorerConfig& cfg, Rng& rng,
                           int episode_number, int* divergences);

RunResult run_strategy(const sim::AppSpec& app_spec, const catalog::Catalog& cat,
                       const ExplorerConfig& cfg, const std::string& app_ref = "",
                       const std::string& catalog_ref = "");

// Line-oriented event log: "episode<TAB>step<TAB>signature<TAB>class<TAB>reward",
// preceded by '#' header lines carrying the configuration.
std::string runlog_to_text(const RunLog& log);
void save_runlog(const RunLog& log, const std::filesystem::path& path);

struct RunLogHeader {
    Strategy strategy = Strategy::RLS;
    std::uint64_t seed = 0;
    ExplorerConfig config;
    std::string app_ref;
    std::string catalog_ref;
    int divergences = 0;
};
RunLogHeader parse_runlog_header(const std::filesystem::path& path);

// Test cases reconstructed from a run log's steps (used by the report
// subcommand); verifies the log against a deterministic replay.
std::vector<TestCase> replay_runlog(const std::filesystem::path& path,
                                    const sim::AppSpec& app_spec, const catalog::Catalog& cat);

// The partitioning invariant: at most one menu action per episode and any
// menu action precedes all non-menu actions.
bool satisfies_partitioning(const std::vector<StepRecord>& steps);
bool witness_satisfies_partitioning(const QModel& model, const sim::AppSpec& spec);

} // namespace gexplore::engine
