#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gexplore/rng.hpp"
#include "gexplore/types.hpp"

namespace gexplore::engine {

// Abstraction over GUI snapshots: foreground window title plus the sorted
// multiset of (kind, title, state, value-class) of all visible widgets,
// where value-class only distinguishes empty from non-empty. Two states
// that differ only in concrete field text map to the same id.
struct AbstractStateId {
    std::uint64_t value = 0;
    auto operator<=>(const AbstractStateId&) const = default;
};

AbstractStateId abstract_state(const sim::GuiState& gui);

// Fraction of widgets added, removed or changed between two snapshots,
// normalized by the size of the union. In [0, 1], symmetric, 0 for equal
// snapshots.
double gui_diff_fraction(const sim::GuiState& prev, const sim::GuiState& next);

struct Transition {
    AbstractStateId to;
    double q = 0.0;
    int visit_count = 0;
};

struct WitnessStep {
    sim::Action action;
    AbstractStateId expect; // abstract state after executing the action
};

struct QModel {
    AbstractStateId initial;
    std::set<AbstractStateId> states;
    std::map<std::pair<AbstractStateId, std::string>, Transition> transitions;
    std::map<AbstractStateId, std::vector<WitnessStep>> witness_paths;

    bool knows(AbstractStateId s) const { return states.count(s) > 0; }
    double q_value(AbstractStateId s, const std::string& signature) const;
    double max_q(AbstractStateId s) const;
};

struct LearningParams {
    double alpha = 0.9;
    double gamma = 0.9;
};

// Utility of a transition: GUI diff fraction scaled by a novelty factor
// (1 for states not in the model yet, 0.5 for already seen ones).
double reward(const sim::GuiState& prev, const sim::GuiState& next, const QModel& model);

// Standard one-step Q-learning update; creates the successor state and
// the transition when absent and bumps the visit count.
void q_update(QModel& model, AbstractStateId s, const std::string& action_signature, double r,
              AbstractStateId s_next, const LearningParams& params);

// epsilon-greedy selection over the candidate actions. Unknown states are
// explored uniformly; otherwise uniform with probability epsilon and the
// highest-Q candidate with probability 1-epsilon, ties broken by lowest
// action signature. Throws on an empty candidate list.
sim::Action epsilon_greedy_select(const QModel& model, AbstractStateId state,
                                  const std::vector<sim::Action>& candidates, double epsilon,
                                  Rng& rng);

} // namespace gexplore::engine
