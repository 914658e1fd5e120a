#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gexplore/appspec.hpp"
#include "gexplore/rng.hpp"
#include "gexplore/types.hpp"

namespace gexplore::sim {

// Live state of the simulated application: the GUI window stack, the
// backing database and its change log. Everything is deterministic given
// the spec (including its seed) and the executed action sequence.
struct WorldState {
    enum class WinType { Home, EntityPage, Form, ViewWindow, InfoWindow };

    struct OpenWindow {
        WinType type = WinType::Home;
        std::string key; // entity name, or decoy title for info windows
    };

    struct FormSession {
        std::string entity;
        bool editing = false;
        std::size_t record_index = 0;
        int active_tab = 0;
        std::vector<std::pair<std::string, std::string>> values; // label -> value
    };

    AppSpec spec;
    std::map<std::string, std::vector<DbRecord>> db; // table -> records
    std::vector<DbChangeEvent> change_log;
    Rng rng;
    std::vector<OpenWindow> stack; // [0] = Home ... back() = foreground
    std::optional<FormSession> form;

    // derived, built once per app: the permanently enabled top-bar widgets
    std::shared_ptr<const std::vector<Widget>> global_widgets;
};

WorldState build_app(const AppSpec& spec);

// Pure derivation of the observable GUI from the machine state.
GuiState render_gui(const WorldState& world);

// All currently executable actions, sorted by widget id then verb then
// value. Fill actions are returned without a value; the caller supplies
// one (e.g. from the input catalog) before execution.
std::vector<Action> enabled_actions(const WorldState& world);
std::vector<Action> enabled_actions(const WorldState& world, const GuiState& gui);

// Executes an enabled action and returns the ordered output events: every
// widget that appeared, changed or disappeared (sorted by window then
// widget id) followed by the database change events in commit order.
// Throws PreconditionError for actions that are not enabled.
std::vector<OutputEvent> execute(WorldState& world, const Action& action);

// Variant for callers that already rendered the GUI and need the
// successor snapshot; avoids re-rendering in tight loops.
std::vector<OutputEvent> execute(WorldState& world, const Action& action, const GuiState& before,
                                 GuiState& after_out);

// Returns and clears the events accumulated since the last drain.
std::vector<DbChangeEvent> drain_change_log(WorldState& world);

// Canonical text form, byte-stable for determinism checks.
std::string canonical_text(const WorldState& world);

std::string describe_action(const WorldState& world, const Action& action);
std::optional<Widget> find_widget(const GuiState& gui, const std::string& widget_id);

inline bool is_menu_action(const Widget& w) { return w.role == WidgetRole::MenuAction; }

} // namespace gexplore::sim
