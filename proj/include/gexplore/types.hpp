#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace gexplore {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : Error {
    using Error::Error;
};
struct PreconditionError : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

namespace sim {

enum class WidgetKind {
    GraphicalMenu,
    Button,
    TextField,
    ListField,
    ComboBoxField,
    DataGrid,
    Window,
};

enum class WidgetState {
    Enabled,
    Disabled,
    Editable,
    Blocked,
    Selectable,
    Foreground,
    Background,
};

// Semantic role attached by the simulator; classification and the
// exploration constraints key off this instead of matching titles.
enum class WidgetRole {
    None,
    MenuAction, // top-bar menus and buttons, always available
    CrudNew,
    CrudView,
    CrudEdit,
    CrudDelete,
    Submit,    // the Save button of an input form
    FormClose, // Close on an input form (cancels the submission)
    ViewClose,
    InfoClose,
    TabButton,
};

struct Widget {
    std::string id;
    WidgetKind kind = WidgetKind::Button;
    std::string title;
    WidgetState state = WidgetState::Enabled;
    std::string value;                      // current value; "" = empty
    std::vector<std::string> values;        // possible values (list/combo)
    std::vector<std::string> marked;        // marked values (combo)
    std::vector<std::string> columns;       // column labels (grid)
    WidgetRole role = WidgetRole::None;
    std::string window;                     // title of the owning window

    bool same_content(const Widget& o) const {
        return kind == o.kind && title == o.title && state == o.state && value == o.value &&
               values == o.values && marked == o.marked && columns == o.columns &&
               window == o.window;
    }
};

const char* to_string(WidgetKind k);
const char* to_string(WidgetState s);

enum class Verb { Click, Select, Fill, Pick };

const char* to_string(Verb v);
std::optional<Verb> verb_from_string(const std::string& s);

struct Action {
    std::string widget_id;
    Verb verb = Verb::Click;
    std::string value; // required for Fill/Pick, must be empty otherwise

    bool operator==(const Action& o) const {
        return widget_id == o.widget_id && verb == o.verb && value == o.value;
    }
};

// Canonical form "verb:widget_id[:value]"; total order used for
// deterministic tie-breaking throughout the engine.
std::string action_signature(const Action& a);
Action parse_action_signature(const std::string& sig);

// An ordered (field, value) list; order follows the entity declaration.
using DbRecord = std::vector<std::pair<std::string, std::string>>;

struct DbChangeEvent {
    enum class Kind { Insert, Delete, Update };
    Kind kind = Kind::Insert;
    std::string table;
    DbRecord record;       // inserted / deleted / post-update record
    DbRecord prior_record; // update only: the record before the event
};

const char* to_string(DbChangeEvent::Kind k);

struct GuiChange {
    enum class Kind { Appeared, Changed, Disappeared };
    Kind kind = Kind::Appeared;
    Widget widget; // post-change snapshot (last known one when disappeared)
};

using OutputEvent = std::variant<GuiChange, DbChangeEvent>;

struct GuiState {
    std::vector<Widget> windows; // window widgets, [0] = foreground
    std::vector<Widget> widgets; // all visible non-window widgets
    bool is_input_form = false;

    const Widget& foreground() const { return windows.front(); }
    std::vector<Widget> all_widgets() const;
    std::vector<Widget> widgets_in(const std::string& window_title) const;
};

} // namespace sim
} // namespace gexplore
