#include "gexplore/simulator.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

namespace gexplore::sim {

namespace {

constexpr const char* kHomeTitle = "Home";

const EntityTypeSpec* entity_by_name(const AppSpec& spec, const std::string& name) {
    for (const auto& e : spec.entity_types)
        if (e.name == name) return &e;
    return nullptr;
}

std::string window_title(const AppSpec& spec, const WorldState::OpenWindow& w) {
    switch (w.type) {
    case WorldState::WinType::Home: return kHomeTitle;
    case WorldState::WinType::EntityPage: return w.key;
    case WorldState::WinType::Form: return entity_by_name(spec, w.key)->singular;
    case WorldState::WinType::ViewWindow: return "View " + entity_by_name(spec, w.key)->singular;
    case WorldState::WinType::InfoWindow: return w.key;
    }
    return "?";
}

std::string decoy_title(int index) {
    // index is 0-based among decoys
    char buf[16];
    std::snprintf(buf, sizeof buf, "Extra %02d", index + 1);
    return buf;
}

struct GlobalWidgetSpec {
    std::string title;
    WidgetKind kind;
};

std::vector<GlobalWidgetSpec> global_widgets(const AppSpec& spec) {
    std::vector<GlobalWidgetSpec> out;
    for (const auto& e : spec.entity_types) out.push_back({e.name, WidgetKind::GraphicalMenu});
    int decoys = spec.global_menu_actions - static_cast<int>(spec.entity_types.size());
    for (int i = 0; i < decoys; ++i) {
        // every third decoy is a plain top-bar button rather than a menu
        WidgetKind kind = (i % 3 == 2) ? WidgetKind::Button : WidgetKind::GraphicalMenu;
        out.push_back({decoy_title(i), kind});
    }
    return out;
}

WidgetKind field_widget_kind(ValueKind k) {
    switch (k) {
    case ValueKind::List: return WidgetKind::ListField;
    case ValueKind::Combo: return WidgetKind::ComboBoxField;
    default: return WidgetKind::TextField;
    }
}

std::string session_value(const WorldState::FormSession& s, const std::string& label) {
    for (const auto& [l, v] : s.values)
        if (l == label) return v;
    return "";
}

void set_session_value(WorldState::FormSession& s, const std::string& label,
                       const std::string& value) {
    for (auto& [l, v] : s.values) {
        if (l == label) {
            v = value;
            return;
        }
    }
    s.values.emplace_back(label, value);
}

Widget make_field_widget(const EntityTypeSpec& e, const FieldSpec& f, const std::string& window,
                         const std::string& id_scope, WidgetState state,
                         const std::string& value) {
    Widget w;
    w.id = id_scope + ".fld:" + f.label;
    w.kind = field_widget_kind(f.kind);
    w.title = f.label;
    w.state = state;
    w.window = window;
    if (w.kind == WidgetKind::ListField) {
        w.values = f.possible_values;
        w.value = value;
    } else if (w.kind == WidgetKind::ComboBoxField) {
        w.values = f.possible_values;
        if (!value.empty()) w.marked = {value};
    } else {
        w.value = value;
    }
    (void)e;
    return w;
}

void append_entity_page_widgets(const WorldState& world, const EntityTypeSpec& e,
                                std::vector<Widget>& out) {
    const std::string& win = e.name;
    bool has_records = !world.db.at(e.table_name()).empty();
    auto button = [&](const std::string& title, WidgetRole role, bool enabled) {
        Widget w;
        w.id = e.name + ".btn:" + title;
        w.kind = WidgetKind::Button;
        w.title = title;
        w.state = enabled ? WidgetState::Enabled : WidgetState::Disabled;
        w.role = role;
        w.window = win;
        out.push_back(w);
    };
    if (e.has_new) button("New " + e.singular, WidgetRole::CrudNew, true);
    if (e.has_view) button("View", WidgetRole::CrudView, has_records);
    if (e.has_edit) button("Edit", WidgetRole::CrudEdit, has_records);
    if (e.has_delete) button("Delete", WidgetRole::CrudDelete, has_records);

    Widget grid;
    grid.id = e.name + ".grid:records";
    grid.kind = WidgetKind::DataGrid;
    grid.title = "Records";
    grid.state = WidgetState::Enabled;
    grid.columns = e.grid_columns;
    grid.value = std::to_string(world.db.at(e.table_name()).size());
    grid.window = win;
    out.push_back(grid);
}

void append_form_widgets(const WorldState& world, const EntityTypeSpec& e,
                         const WorldState::FormSession& s, std::vector<Widget>& out) {
    const std::string win = e.singular;
    auto button = [&](const std::string& title, WidgetRole role, WidgetState state) {
        Widget w;
        w.id = e.singular + ".btn:" + title;
        w.kind = WidgetKind::Button;
        w.title = title;
        w.state = state;
        w.role = role;
        w.window = win;
        out.push_back(w);
    };
    button("Save", WidgetRole::Submit, WidgetState::Enabled);
    button("Close", WidgetRole::FormClose, WidgetState::Enabled);
    if (e.tabs > 1) {
        for (int t = 0; t < e.tabs; ++t) {
            Widget w;
            w.id = e.singular + ".tab:Tab " + std::to_string(t + 1);
            w.kind = WidgetKind::Button;
            w.title = "Tab " + std::to_string(t + 1);
            w.state = t == s.active_tab ? WidgetState::Disabled : WidgetState::Enabled;
            w.role = WidgetRole::TabButton;
            w.window = win;
            out.push_back(w);
        }
    }
    // only the active tab's fields are visible
    for (const auto& f : e.fields) {
        if (f.tab != s.active_tab) continue;
        WidgetState st;
        if (f.readonly)
            st = WidgetState::Blocked;
        else
            st = field_widget_kind(f.kind) == WidgetKind::TextField ? WidgetState::Editable
                                                                    : WidgetState::Selectable;
        out.push_back(make_field_widget(e, f, win, e.singular, st, session_value(s, f.label)));
    }
}

void append_view_widgets(const WorldState& world, const EntityTypeSpec& e,
                         std::vector<Widget>& out) {
    const std::string win = "View " + e.singular;
    Widget close;
    close.id = win + ".btn:Close";
    close.kind = WidgetKind::Button;
    close.title = "Close";
    close.state = WidgetState::Enabled;
    close.role = WidgetRole::ViewClose;
    close.window = win;
    out.push_back(close);

    const auto& records = world.db.at(e.table_name());
    const DbRecord* record = records.empty() ? nullptr : &records.front();
    for (const auto& f : e.fields) {
        std::string value = f.initial_value;
        if (record && !f.column.empty()) {
            for (const auto& [c, v] : *record)
                if (c == f.column) value = v;
        }
        out.push_back(make_field_widget(e, f, win, win, WidgetState::Blocked, value));
    }
}

void append_info_widgets(const std::string& decoy, std::vector<Widget>& out) {
    Widget close;
    close.id = decoy + ".btn:Close";
    close.kind = WidgetKind::Button;
    close.title = "Close";
    close.state = WidgetState::Enabled;
    close.role = WidgetRole::InfoClose;
    close.window = decoy;
    out.push_back(close);
}

int verb_rank(Verb v) {
    switch (v) {
    case Verb::Click: return 0;
    case Verb::Select: return 1;
    case Verb::Fill: return 2;
    case Verb::Pick: return 3;
    }
    return 4;
}

std::string record_text(const DbRecord& r) {
    std::string out;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) out += "|";
        out += r[i].first + "=" + r[i].second;
    }
    return out;
}

} // namespace

WorldState build_app(const AppSpec& spec) {
    spec.validate();
    WorldState world;
    world.spec = spec;
    world.rng = Rng(spec.seed);
    world.stack = {{WorldState::WinType::Home, ""}};
    {
        auto globals = std::make_shared<std::vector<Widget>>();
        for (const auto& g : global_widgets(spec)) {
            Widget w;
            w.id = "menu:" + g.title;
            w.kind = g.kind;
            w.title = g.title;
            w.state = WidgetState::Enabled;
            w.role = WidgetRole::MenuAction;
            w.window = kHomeTitle;
            globals->push_back(std::move(w));
        }
        world.global_widgets = std::move(globals);
    }
    for (const auto& e : spec.entity_types) {
        auto& table = world.db[e.table_name()];
        for (int k = 0; k < e.initial_records; ++k) {
            DbRecord record;
            for (const auto& f : e.fields) {
                if (f.column.empty()) continue;
                std::string value;
                switch (f.kind) {
                case ValueKind::Text:
                    value = "Data " + std::to_string(1000 + world.rng.uniform(9000));
                    break;
                case ValueKind::Email:
                    value = "user" + std::to_string(1 + world.rng.uniform(999)) + "@mail.test";
                    break;
                case ValueKind::Date: {
                    char buf[16];
                    std::snprintf(buf, sizeof buf, "%02d-%02d-%04d",
                                  static_cast<int>(1 + world.rng.uniform(28)),
                                  static_cast<int>(1 + world.rng.uniform(12)),
                                  static_cast<int>(2015 + world.rng.uniform(9)));
                    value = buf;
                    break;
                }
                case ValueKind::NumericId:
                    value = std::to_string(1 + world.rng.uniform(99999));
                    break;
                case ValueKind::List:
                case ValueKind::Combo:
                    value = f.possible_values[world.rng.uniform(f.possible_values.size())];
                    break;
                }
                record.emplace_back(f.column, value);
            }
            table.push_back(std::move(record));
        }
    }
    return world;
}

GuiState render_gui(const WorldState& world) {
    GuiState gui;
    // foreground first
    for (auto it = world.stack.rbegin(); it != world.stack.rend(); ++it) {
        Widget w;
        w.title = window_title(world.spec, *it);
        w.id = "win:" + w.title;
        w.kind = WidgetKind::Window;
        w.state = gui.windows.empty() ? WidgetState::Foreground : WidgetState::Background;
        w.window = w.title;
        gui.windows.push_back(w);
    }
    // global top-bar actions live on the home window and are always visible
    if (world.global_widgets) {
        gui.widgets.reserve(world.global_widgets->size() + 32);
        gui.widgets.insert(gui.widgets.end(), world.global_widgets->begin(),
                           world.global_widgets->end());
    } else {
        for (const auto& g : global_widgets(world.spec)) {
            Widget w;
            w.id = "menu:" + g.title;
            w.kind = g.kind;
            w.title = g.title;
            w.state = WidgetState::Enabled;
            w.role = WidgetRole::MenuAction;
            w.window = kHomeTitle;
            gui.widgets.push_back(std::move(w));
        }
    }
    for (const auto& open : world.stack) {
        switch (open.type) {
        case WorldState::WinType::Home: break;
        case WorldState::WinType::EntityPage:
            append_entity_page_widgets(world, *entity_by_name(world.spec, open.key), gui.widgets);
            break;
        case WorldState::WinType::Form:
            append_form_widgets(world, *entity_by_name(world.spec, open.key), *world.form,
                                gui.widgets);
            break;
        case WorldState::WinType::ViewWindow:
            append_view_widgets(world, *entity_by_name(world.spec, open.key), gui.widgets);
            break;
        case WorldState::WinType::InfoWindow:
            append_info_widgets(open.key, gui.widgets);
            break;
        }
    }
    const std::string fg = gui.windows.front().title;
    bool has_input = false, has_submit = false;
    for (const auto& w : gui.widgets) {
        if (w.window != fg) continue;
        if (w.state == WidgetState::Editable || w.state == WidgetState::Selectable)
            has_input = true;
        if (w.role == WidgetRole::Submit) has_submit = true;
    }
    gui.is_input_form = has_input && has_submit;
    return gui;
}

std::optional<Widget> find_widget(const GuiState& gui, const std::string& widget_id) {
    for (const auto& w : gui.windows)
        if (w.id == widget_id) return w;
    for (const auto& w : gui.widgets)
        if (w.id == widget_id) return w;
    return std::nullopt;
}

std::vector<Action> enabled_actions(const WorldState& world) {
    return enabled_actions(world, render_gui(world));
}

std::vector<Action> enabled_actions(const WorldState& world, const GuiState& gui) {
    (void)world;
    std::vector<Action> actions;
    const std::string fg = gui.windows.front().title;
    for (const auto& w : gui.widgets) {
        bool global = w.role == WidgetRole::MenuAction;
        if (!global && w.window != fg) continue;
        switch (w.kind) {
        case WidgetKind::GraphicalMenu:
            actions.push_back({w.id, Verb::Select, ""});
            break;
        case WidgetKind::Button:
            if (w.state == WidgetState::Enabled) actions.push_back({w.id, Verb::Click, ""});
            break;
        case WidgetKind::TextField:
            if (w.state == WidgetState::Editable) actions.push_back({w.id, Verb::Fill, ""});
            break;
        case WidgetKind::ListField:
        case WidgetKind::ComboBoxField:
            if (w.state == WidgetState::Selectable)
                for (const auto& v : w.values) actions.push_back({w.id, Verb::Pick, v});
            break;
        case WidgetKind::DataGrid:
        case WidgetKind::Window:
            break;
        }
    }
    std::sort(actions.begin(), actions.end(), [](const Action& a, const Action& b) {
        if (a.widget_id != b.widget_id) return a.widget_id < b.widget_id;
        if (a.verb != b.verb) return verb_rank(a.verb) < verb_rank(b.verb);
        return a.value < b.value;
    });
    return actions;
}

namespace {

void widget_ptrs_by_id(const GuiState& gui, std::vector<const Widget*>& out) {
    out.clear();
    out.reserve(gui.windows.size() + gui.widgets.size());
    for (const auto& w : gui.windows) out.push_back(&w);
    for (const auto& w : gui.widgets) out.push_back(&w);
    std::sort(out.begin(), out.end(),
              [](const Widget* a, const Widget* b) { return a->id < b->id; });
}

std::vector<OutputEvent> gui_diff(const GuiState& before, const GuiState& after) {
    std::vector<const Widget*> prev, next;
    widget_ptrs_by_id(before, prev);
    widget_ptrs_by_id(after, next);

    std::vector<GuiChange> changes;
    std::size_t i = 0, j = 0;
    while (i < prev.size() || j < next.size()) {
        if (i == prev.size()) {
            changes.push_back({GuiChange::Kind::Appeared, *next[j++]});
        } else if (j == next.size()) {
            changes.push_back({GuiChange::Kind::Disappeared, *prev[i++]});
        } else if (prev[i]->id < next[j]->id) {
            changes.push_back({GuiChange::Kind::Disappeared, *prev[i++]});
        } else if (next[j]->id < prev[i]->id) {
            changes.push_back({GuiChange::Kind::Appeared, *next[j++]});
        } else {
            if (!prev[i]->same_content(*next[j]))
                changes.push_back({GuiChange::Kind::Changed, *next[j]});
            ++i;
            ++j;
        }
    }
    std::sort(changes.begin(), changes.end(), [](const GuiChange& a, const GuiChange& b) {
        if (a.widget.window != b.widget.window) return a.widget.window < b.widget.window;
        return a.widget.id < b.widget.id;
    });
    std::vector<OutputEvent> events;
    events.reserve(changes.size());
    for (auto& c : changes) events.emplace_back(std::move(c));
    return events;
}

// Save validity: every required field non-empty and consistent with its
// value kind.
bool form_valid(const EntityTypeSpec& e, const WorldState::FormSession& s) {
    for (const auto& f : e.fields) {
        if (!f.required) continue;
        std::string v = session_value(s, f.label);
        if (v.empty() || !value_valid_for_kind(f.kind, v)) return false;
    }
    return true;
}

DbRecord record_from_session(const EntityTypeSpec& e, const WorldState::FormSession& s) {
    DbRecord record;
    for (const auto& f : e.fields) {
        if (f.column.empty()) continue;
        record.emplace_back(f.column, session_value(s, f.label));
    }
    return record;
}

} // namespace

namespace {

// Same predicate enabled_actions() enumerates from, checked directly
// against the rendered snapshot (execute sits on the hot path).
bool action_enabled_in(const GuiState& gui, const Action& action) {
    auto w = find_widget(gui, action.widget_id);
    if (!w) return false;
    const std::string& fg = gui.windows.front().title;
    if (w->role != WidgetRole::MenuAction && w->window != fg) return false;
    switch (w->kind) {
    case WidgetKind::GraphicalMenu:
        return action.verb == Verb::Select;
    case WidgetKind::Button:
        return action.verb == Verb::Click && w->state == WidgetState::Enabled;
    case WidgetKind::TextField:
        return action.verb == Verb::Fill && w->state == WidgetState::Editable;
    case WidgetKind::ListField:
    case WidgetKind::ComboBoxField:
        return action.verb == Verb::Pick && w->state == WidgetState::Selectable &&
               std::find(w->values.begin(), w->values.end(), action.value) != w->values.end();
    default:
        return false;
    }
}

} // namespace

std::vector<OutputEvent> execute(WorldState& world, const Action& action) {
    GuiState before = render_gui(world);
    GuiState after;
    return execute(world, action, before, after);
}

std::vector<OutputEvent> execute(WorldState& world, const Action& action, const GuiState& before,
                                 GuiState& after_out) {
    if (!action_enabled_in(before, action))
        throw PreconditionError("action not enabled: " + action_signature(action));
    if ((action.verb == Verb::Fill || action.verb == Verb::Pick) && action.value.empty())
        throw PreconditionError("fill/pick requires a value: " + action_signature(action));
    if ((action.verb == Verb::Click || action.verb == Verb::Select) && !action.value.empty())
        throw PreconditionError("click/select must not carry a value: " +
                                action_signature(action));

    Widget target = *find_widget(before, action.widget_id);
    std::vector<DbChangeEvent> db_events;

    switch (target.role) {
    case WidgetRole::MenuAction: {
        if (entity_by_name(world.spec, target.title)) {
            // entity menu: navigate away, closing everything above home
            world.stack = {{WorldState::WinType::Home, ""},
                           {WorldState::WinType::EntityPage, target.title}};
            world.form.reset();
        } else {
            // decoy: modal informational window over the current stack
            bool already = world.stack.back().type == WorldState::WinType::InfoWindow &&
                           world.stack.back().key == target.title;
            if (!already)
                world.stack.push_back({WorldState::WinType::InfoWindow, target.title});
        }
        break;
    }
    case WidgetRole::CrudNew:
    case WidgetRole::CrudEdit: {
        const std::string entity = target.window;
        const EntityTypeSpec& e = *entity_by_name(world.spec, entity);
        WorldState::FormSession s;
        s.entity = entity;
        s.editing = target.role == WidgetRole::CrudEdit;
        s.record_index = 0;
        s.active_tab = 0;
        if (s.editing) {
            const DbRecord& r = world.db.at(e.table_name()).front();
            for (const auto& f : e.fields) {
                std::string v = f.initial_value;
                if (!f.column.empty())
                    for (const auto& [c, rv] : r)
                        if (c == f.column) v = rv;
                s.values.emplace_back(f.label, v);
            }
        } else {
            for (const auto& f : e.fields) s.values.emplace_back(f.label, f.initial_value);
        }
        world.form = std::move(s);
        world.stack.push_back({WorldState::WinType::Form, entity});
        break;
    }
    case WidgetRole::CrudView:
        world.stack.push_back({WorldState::WinType::ViewWindow, target.window});
        break;
    case WidgetRole::CrudDelete: {
        const EntityTypeSpec& e = *entity_by_name(world.spec, target.window);
        auto& table = world.db.at(e.table_name());
        DbChangeEvent ev;
        ev.kind = DbChangeEvent::Kind::Delete;
        ev.table = e.table_name();
        ev.record = table.front();
        table.erase(table.begin());
        db_events.push_back(ev);
        break;
    }
    case WidgetRole::Submit: {
        const EntityTypeSpec& e = *entity_by_name(world.spec, world.form->entity);
        if (form_valid(e, *world.form)) {
            auto& table = world.db.at(e.table_name());
            DbChangeEvent ev;
            ev.table = e.table_name();
            ev.record = record_from_session(e, *world.form);
            if (world.form->editing) {
                ev.kind = DbChangeEvent::Kind::Update;
                ev.prior_record = table[world.form->record_index];
                table[world.form->record_index] = ev.record;
            } else {
                ev.kind = DbChangeEvent::Kind::Insert;
                table.push_back(ev.record);
            }
            db_events.push_back(ev);
        }
        // either way the form closes and the entity page returns
        world.stack.pop_back();
        world.form.reset();
        break;
    }
    case WidgetRole::FormClose:
        world.stack.pop_back();
        world.form.reset();
        break;
    case WidgetRole::ViewClose:
    case WidgetRole::InfoClose:
        world.stack.pop_back();
        break;
    case WidgetRole::TabButton: {
        int tab = std::stoi(target.title.substr(4)) - 1;
        world.form->active_tab = tab;
        break;
    }
    case WidgetRole::None: {
        // input widgets
        if (action.verb == Verb::Fill || action.verb == Verb::Pick)
            set_session_value(*world.form, target.title, action.value);
        break;
    }
    }

    for (const auto& ev : db_events) world.change_log.push_back(ev);

    after_out = render_gui(world);
    std::vector<OutputEvent> events = gui_diff(before, after_out);
    for (auto& ev : db_events) events.emplace_back(std::move(ev));
    return events;
}

std::vector<DbChangeEvent> drain_change_log(WorldState& world) {
    std::vector<DbChangeEvent> out = std::move(world.change_log);
    world.change_log.clear();
    return out;
}

std::string describe_action(const WorldState& world, const Action& action) {
    GuiState gui = render_gui(world);
    auto w = find_widget(gui, action.widget_id);
    std::string title = w ? w->title : action.widget_id;
    switch (action.verb) {
    case Verb::Select: return "Select menu \"" + title + "\"";
    case Verb::Click: return "Click button \"" + title + "\"";
    case Verb::Fill: return "Fill field \"" + title + "\" as \"" + action.value + "\"";
    case Verb::Pick: return "Pick \"" + action.value + "\" in field \"" + title + "\"";
    }
    return "?";
}

std::string canonical_text(const WorldState& world) {
    std::ostringstream os;
    os << "world v1\n";
    os << "spec entities=" << world.spec.entity_types.size()
       << " global=" << world.spec.global_menu_actions << " seed=" << world.spec.seed << "\n";
    for (const auto& [table, records] : world.db) {
        os << "table " << table << " n=" << records.size() << "\n";
        for (const auto& r : records) os << "  " << record_text(r) << "\n";
    }
    os << "changelog n=" << world.change_log.size() << "\n";
    for (const auto& ev : world.change_log) {
        os << "  " << to_string(ev.kind) << " " << ev.table << " " << record_text(ev.record);
        if (ev.kind == DbChangeEvent::Kind::Update) os << " prior " << record_text(ev.prior_record);
        os << "\n";
    }
    os << "stack";
    for (const auto& w : world.stack) os << " " << window_title(world.spec, w);
    os << "\n";
    if (world.form) {
        os << "form entity=" << world.form->entity << " editing=" << world.form->editing
           << " index=" << world.form->record_index << " tab=" << world.form->active_tab
           << " values=" << record_text(world.form->values) << "\n";
    }
    os << "rng " << world.rng.state_text() << "\n";
    return os.str();
}

} // namespace gexplore::sim
