#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gexplore/types.hpp"

namespace gexplore::classify {

// The action taxonomy used to measure exploration depth. Actions fitting
// no class (tab switches, closing informational or view windows, ...) map
// to Other, which is logged but excluded from the five-class tables.
enum class ActionClass { Menu, CRUD, Input, SaveKO, SaveOK, Other };

constexpr ActionClass kTableClasses[] = {ActionClass::Menu, ActionClass::CRUD,
                                         ActionClass::Input, ActionClass::SaveKO,
                                         ActionClass::SaveOK};

const char* to_string(ActionClass c);
std::optional<ActionClass> action_class_from_string(const std::string& s);

// Classifies one executed step from the target widget's role, the verb
// and whether the step produced a database change.
ActionClass classify_action(const sim::Action& action, sim::WidgetRole target_role,
                            bool produced_db_event);

struct InteractionAutomaton {
    std::map<ActionClass, long> node_weights;
    std::map<std::pair<ActionClass, ActionClass>, long> edge_weights;
    std::map<ActionClass, long> terminal_counts; // episodes ending in a class

    long node(ActionClass c) const;
    long edge(ActionClass a, ActionClass b) const;
};

// Counts nodes and consecutive pairs over per-episode class sequences.
// Other-class steps are projected out first, and pairs never cross
// episode boundaries, so each node weight equals the sum of its outgoing
// edge weights plus the number of episodes ending in that class.
InteractionAutomaton build_automaton(const std::vector<std::vector<ActionClass>>& episodes);

// Graphviz dot rendering with node/edge weight labels.
std::string automaton_to_dot(const InteractionAutomaton& automaton, const std::string& name);

} // namespace gexplore::classify
