#include "gexplore/types.hpp"

#include <algorithm>

namespace gexplore::sim {

const char* to_string(WidgetKind k) {
    switch (k) {
    case WidgetKind::GraphicalMenu: return "GraphicalMenu";
    case WidgetKind::Button: return "Button";
    case WidgetKind::TextField: return "TextField";
    case WidgetKind::ListField: return "ListField";
    case WidgetKind::ComboBoxField: return "ComboBoxField";
    case WidgetKind::DataGrid: return "DataGrid";
    case WidgetKind::Window: return "Window";
    }
    return "?";
}

const char* to_string(WidgetState s) {
    switch (s) {
    case WidgetState::Enabled: return "enabled";
    case WidgetState::Disabled: return "disabled";
    case WidgetState::Editable: return "editable";
    case WidgetState::Blocked: return "blocked";
    case WidgetState::Selectable: return "selectable";
    case WidgetState::Foreground: return "foreground";
    case WidgetState::Background: return "background";
    }
    return "?";
}

const char* to_string(Verb v) {
    switch (v) {
    case Verb::Click: return "click";
    case Verb::Select: return "select";
    case Verb::Fill: return "fill";
    case Verb::Pick: return "pick";
    }
    return "?";
}

std::optional<Verb> verb_from_string(const std::string& s) {
    if (s == "click") return Verb::Click;
    if (s == "select") return Verb::Select;
    if (s == "fill") return Verb::Fill;
    if (s == "pick") return Verb::Pick;
    return std::nullopt;
}

std::string action_signature(const Action& a) {
    std::string sig = to_string(a.verb);
    sig += ':';
    sig += a.widget_id;
    if (a.verb == Verb::Fill || a.verb == Verb::Pick) {
        sig += ':';
        sig += a.value;
    }
    return sig;
}

Action parse_action_signature(const std::string& sig) {
    auto first = sig.find(':');
    if (first == std::string::npos) throw ParseError("malformed action signature: " + sig);
    auto verb = verb_from_string(sig.substr(0, first));
    if (!verb) throw ParseError("unknown verb in action signature: " + sig);
    Action a;
    a.verb = *verb;
    std::string rest = sig.substr(first + 1);
    if (a.verb == Verb::Fill || a.verb == Verb::Pick) {
        // widget ids are "scope:name" with exactly one ':'; everything
        // after the second ':' is the value (values may contain colons)
        auto id_sep = rest.find(':');
        auto split = id_sep == std::string::npos ? std::string::npos : rest.find(':', id_sep + 1);
        if (split == std::string::npos)
            throw ParseError("fill/pick signature lacks a value: " + sig);
        a.widget_id = rest.substr(0, split);
        a.value = rest.substr(split + 1);
    } else {
        a.widget_id = rest;
    }
    return a;
}

const char* to_string(DbChangeEvent::Kind k) {
    switch (k) {
    case DbChangeEvent::Kind::Insert: return "insert";
    case DbChangeEvent::Kind::Delete: return "delete";
    case DbChangeEvent::Kind::Update: return "update";
    }
    return "?";
}

std::vector<Widget> GuiState::all_widgets() const {
    std::vector<Widget> all = windows;
    all.insert(all.end(), widgets.begin(), widgets.end());
    return all;
}

std::vector<Widget> GuiState::widgets_in(const std::string& window_title) const {
    std::vector<Widget> out;
    for (const auto& w : widgets)
        if (w.window == window_title) out.push_back(w);
    return out;
}

} // namespace gexplore::sim
