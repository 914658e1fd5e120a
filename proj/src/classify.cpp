#include "gexplore/classify.hpp"

#include <sstream>

namespace gexplore::classify {

const char* to_string(ActionClass c) {
    switch (c) {
    case ActionClass::Menu: return "Menu";
    case ActionClass::CRUD: return "CRUD";
    case ActionClass::Input: return "Input";
    case ActionClass::SaveKO: return "SaveKO";
    case ActionClass::SaveOK: return "SaveOK";
    case ActionClass::Other: return "Other";
    }
    return "?";
}

std::optional<ActionClass> action_class_from_string(const std::string& s) {
    if (s == "Menu") return ActionClass::Menu;
    if (s == "CRUD") return ActionClass::CRUD;
    if (s == "Input") return ActionClass::Input;
    if (s == "SaveKO") return ActionClass::SaveKO;
    if (s == "SaveOK") return ActionClass::SaveOK;
    if (s == "Other") return ActionClass::Other;
    return std::nullopt;
}

ActionClass classify_action(const sim::Action& action, sim::WidgetRole target_role,
                            bool produced_db_event) {
    using sim::WidgetRole;
    if (action.verb == sim::Verb::Fill || action.verb == sim::Verb::Pick)
        return ActionClass::Input;
    switch (target_role) {
    case WidgetRole::MenuAction: return ActionClass::Menu;
    case WidgetRole::CrudNew:
    case WidgetRole::CrudView:
    case WidgetRole::CrudEdit:
    case WidgetRole::CrudDelete: return ActionClass::CRUD;
    case WidgetRole::Submit:
        return produced_db_event ? ActionClass::SaveOK : ActionClass::SaveKO;
    case WidgetRole::FormClose: return ActionClass::SaveKO; // cancels the submission
    default: return ActionClass::Other;
    }
}

long InteractionAutomaton::node(ActionClass c) const {
    auto it = node_weights.find(c);
    return it == node_weights.end() ? 0 : it->second;
}

long InteractionAutomaton::edge(ActionClass a, ActionClass b) const {
    auto it = edge_weights.find({a, b});
    return it == edge_weights.end() ? 0 : it->second;
}

InteractionAutomaton build_automaton(const std::vector<std::vector<ActionClass>>& episodes) {
    InteractionAutomaton out;
    for (const auto& episode : episodes) {
        // project out Other so that node weights and edge weights balance
        std::vector<ActionClass> seq;
        for (ActionClass c : episode)
            if (c != ActionClass::Other) seq.push_back(c);
        for (std::size_t i = 0; i < seq.size(); ++i) {
            out.node_weights[seq[i]] += 1;
            if (i + 1 < seq.size()) out.edge_weights[{seq[i], seq[i + 1]}] += 1;
        }
        if (!seq.empty()) out.terminal_counts[seq.back()] += 1;
    }
    return out;
}

std::string automaton_to_dot(const InteractionAutomaton& automaton, const std::string& name) {
    std::ostringstream os;
    os << "digraph \"" << name << "\" {\n";
    os << "  rankdir=LR;\n";
    for (ActionClass c : kTableClasses) {
        os << "  " << to_string(c) << " [label=\"" << to_string(c) << "\\n"
           << automaton.node(c) << "\"];\n";
    }
    for (const auto& [pair, weight] : automaton.edge_weights) {
        os << "  " << to_string(pair.first) << " -> " << to_string(pair.second) << " [label=\""
           << weight << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace gexplore::classify
