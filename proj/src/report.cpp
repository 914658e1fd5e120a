#include "gexplore/report.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace gexplore::report {

namespace {

constexpr const char* kEmpty = "⟨empty⟩"; // ⟨empty⟩
constexpr const char* kLAngle = "⟨";
constexpr const char* kRAngle = "⟩";
constexpr const char* kArrow = "→"; // →

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

std::string quoted_list(const std::vector<std::string>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += quoted(values[i]);
    }
    return out;
}

std::string value_or_empty(const std::string& v) { return v.empty() ? kEmpty : quoted(v); }

std::string marked_or_empty(const std::vector<std::string>& marked) {
    return marked.empty() ? kEmpty : quoted_list(marked);
}

std::string record_fields(const sim::DbRecord& r) {
    std::string out;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) out += ", ";
        out += r[i].first + "=" + r[i].second;
    }
    return out;
}

// Input-field states render the way the sample reports show them: the
// active state (editable/selectable) prints as "enabled".
std::string field_state(sim::WidgetState s) {
    switch (s) {
    case sim::WidgetState::Editable:
    case sim::WidgetState::Selectable:
        return "enabled";
    case sim::WidgetState::Blocked:
        return "blocked";
    default:
        return sim::to_string(s);
    }
}

std::string format_widget(const sim::Widget& w) {
    using sim::WidgetKind;
    switch (w.kind) {
    case WidgetKind::GraphicalMenu:
        return "GUI: Menu " + quoted(w.title) + " " + sim::to_string(w.state);
    case WidgetKind::Button:
        return "GUI: Button " + quoted(w.title) + " " + sim::to_string(w.state);
    case WidgetKind::TextField:
        return "GUI: Text field " + quoted(w.title) + " as " + value_or_empty(w.value) + " " +
               field_state(w.state);
    case WidgetKind::ListField:
        return "GUI: List field " + quoted(w.title) + " (" + quoted_list(w.values) + ") as " +
               value_or_empty(w.value) + " " + field_state(w.state);
    case WidgetKind::ComboBoxField:
        return "GUI: Combo-box field " + quoted(w.title) + " (" + quoted_list(w.values) +
               ") marked at " + marked_or_empty(w.marked) + " " + field_state(w.state);
    case WidgetKind::DataGrid:
        return "GUI: Grid with columns " + quoted_list(w.columns) + " as " + w.value + " items";
    case WidgetKind::Window:
        return "GUI: Window " + quoted(w.title) + " in " + sim::to_string(w.state);
    }
    throw Error("unknown widget kind in output event");
}

std::string format_db(const sim::DbChangeEvent& ev) {
    using K = sim::DbChangeEvent::Kind;
    switch (ev.kind) {
    case K::Insert:
        return "DB: new record in Table " + ev.table + " " + kLAngle + record_fields(ev.record) +
               kRAngle;
    case K::Delete:
        return "DB: deleted record in Table " + ev.table + " was " + kLAngle +
               record_fields(ev.record) + kRAngle;
    case K::Update:
        return "DB: update in Table " + ev.table + " " + kLAngle +
               record_fields(ev.prior_record) + kRAngle + " " + kArrow + " " + kLAngle +
               record_fields(ev.record) + kRAngle;
    }
    throw Error("unknown db event kind");
}

} // namespace

OutputEntry format_output_entry(const sim::OutputEvent& event) {
    if (const auto* db = std::get_if<sim::DbChangeEvent>(&event))
        return {OutputEntry::Channel::DB, format_db(*db)};
    const auto& change = std::get<sim::GuiChange>(event);
    if (change.kind == sim::GuiChange::Kind::Disappeared)
        throw Error("disappearances have no report template");
    return {OutputEntry::Channel::GUI, format_widget(change.widget)};
}

namespace {

// ---- template parsing ----------------------------------------------------

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;

    bool literal(const std::string& lit) {
        if (s.compare(pos, lit.size(), lit) != 0) return false;
        pos += lit.size();
        return true;
    }
    bool quoted(std::string& out) {
        if (pos >= s.size() || s[pos] != '"') return false;
        auto end = s.find('"', pos + 1);
        if (end == std::string::npos) return false;
        out = s.substr(pos + 1, end - pos - 1);
        pos = end + 1;
        return true;
    }
    // up to (not including) the delimiter; fails when absent
    bool until(const std::string& delim, std::string& out) {
        auto end = s.find(delim, pos);
        if (end == std::string::npos) return false;
        out = s.substr(pos, end - pos);
        pos = end;
        return true;
    }
    std::string rest() const { return s.substr(pos); }
    bool done() const { return pos == s.size(); }
};

bool parse_quoted_list(const std::string& text, std::vector<std::string>& out) {
    Cursor c{text};
    out.clear();
    if (text.empty()) return true;
    while (true) {
        std::string item;
        if (!c.quoted(item)) return false;
        out.push_back(item);
        if (c.done()) return true;
        if (!c.literal(", ")) return false;
    }
}

// value slot: either the empty token or a quoted string
bool parse_value_slot(const std::string& text, std::string& out) {
    if (text == kEmpty) {
        out.clear();
        return true;
    }
    if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
        out = text.substr(1, text.size() - 2);
        return true;
    }
    return false;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += v[i];
    }
    return out;
}

std::optional<ParsedEntry> parse_gui(const std::string& body) {
    ParsedEntry entry;
    Cursor c{body};
    std::string t;
    if (c.literal("Menu ")) {
        entry.kind = "menu";
        if (!c.quoted(t)) return std::nullopt;
        entry.fields["title"] = t;
        if (!c.literal(" ")) return std::nullopt;
        entry.fields["state"] = c.rest();
        return entry;
    }
    if (c.literal("Button ")) {
        entry.kind = "button";
        if (!c.quoted(t)) return std::nullopt;
        entry.fields["title"] = t;
        if (!c.literal(" ")) return std::nullopt;
        entry.fields["state"] = c.rest();
        return entry;
    }
    if (c.literal("Text field ")) {
        entry.kind = "text_field";
        if (!c.quoted(t)) return std::nullopt;
        entry.fields["title"] = t;
        if (!c.literal(" as ")) return std::nullopt;
        std::string tail = c.rest();
        auto sp = tail.rfind(' ');
        if (sp == std::string::npos) return std::nullopt;
        std::string value;
        if (!parse_value_slot(tail.substr(0, sp), value)) return std::nullopt;
        entry.fields["value"] = value;
        entry.fields["state"] = tail.substr(sp + 1);
        return entry;
    }
    if (c.literal("List field ")) {
        entry.kind = "list_field";
        if (!c.quoted(t)) return std::nullopt;
        entry.fields["title"] = t;
        if (!c.literal(" (")) return std::nullopt;
        std::string values;
        if (!c.until(") as ", values)) return std::nullopt;
        std::vector<std::string> list;
        if (!parse_quoted_list(values, list)) return std::nullopt;
        entry.fields["values"] = join(list, "|");
        c.literal(") as ");
        std::string tail = c.rest();
        auto sp = tail.rfind(' ');
        if (sp == std::string::npos) return std::nullopt;
        std::string value;
        if (!parse_value_slot(tail.substr(0, sp), value)) return std::nullopt;
        entry.fields["value"] = value;
        entry.fields["state"] = tail.substr(sp + 1);
        return entry;
    }
    if (c.literal("Combo-box field ")) {
        entry.kind = "combo_field";
        if (!c.quoted(t)) return std::nullopt;
        entry.fields["title"] = t;
        if (!c.literal(" (")) return std::nullopt;
        std::string values;
        if (!c.until(") marked at ", values)) return std::nullopt;
        std::vector<std::string> list;
        if (!parse_quoted_list(values, list)) return std::nullopt;
        entry.fields["values"] = join(list, "|");
        c.literal(") marked at ");
        std::string tail = c.rest();
        auto sp = tail.rfind(' ');
        if (sp == std::string::npos) return std::nullopt;
        std::string marked_text = tail.substr(0, sp);
        if (marked_text == kEmpty) {
            entry.fields["marked"] = "";
        } else {
            std::vector<std::string> marked;
            if (!parse_quoted_list(marked_text, marked)) return std::nullopt;
            entry.fields["marked"] = join(marked, "|");
        }
        entry.fields["state"] = tail.substr(sp + 1);
        return entry;
    }
    if (c.literal("Grid with columns ")) {
        entry.kind = "grid";
        std::string tail = c.rest();
        auto as = tail.rfind(" as ");
        if (as == std::string::npos) return std::nullopt;
        std::vector<std::string> list;
        if (!parse_quoted_list(tail.substr(0, as), list)) return std::nullopt;
        entry.fields["columns"] = join(list, "|");
        std::string count = tail.substr(as + 4);
        if (count.size() < 7 || count.substr(count.size() - 6) != " items") return std::nullopt;
        entry.fields["items"] = count.substr(0, count.size() - 6);
        return entry;
    }
    if (c.literal("Window ")) {
        entry.kind = "window";
        if (!c.quoted(t)) return std::nullopt;
        entry.fields["title"] = t;
        if (!c.literal(" in ")) return std::nullopt;
        entry.fields["state"] = c.rest();
        return entry;
    }
    return std::nullopt;
}

std::optional<ParsedEntry> parse_db(const std::string& body) {
    ParsedEntry entry;
    auto bracketed = [&](const std::string& text, std::string& out) {
        std::string l = kLAngle, r = kRAngle;
        if (text.size() < l.size() + r.size()) return false;
        if (text.compare(0, l.size(), l) != 0) return false;
        if (text.compare(text.size() - r.size(), r.size(), r) != 0) return false;
        out = text.substr(l.size(), text.size() - l.size() - r.size());
        return true;
    };
    Cursor c{body};
    std::string table;
    if (c.literal("new record in Table ")) {
        entry.kind = "db_insert";
        if (!c.until(" ", table)) return std::nullopt;
        entry.fields["table"] = table;
        c.literal(" ");
        std::string rec;
        if (!bracketed(c.rest(), rec)) return std::nullopt;
        entry.fields["record"] = rec;
        return entry;
    }
    if (c.literal("deleted record in Table ")) {
        entry.kind = "db_delete";
        if (!c.until(" was ", table)) return std::nullopt;
        entry.fields["table"] = table;
        c.literal(" was ");
        std::string rec;
        if (!bracketed(c.rest(), rec)) return std::nullopt;
        entry.fields["record"] = rec;
        return entry;
    }
    if (c.literal("update in Table ")) {
        entry.kind = "db_update";
        if (!c.until(" ", table)) return std::nullopt;
        entry.fields["table"] = table;
        c.literal(" ");
        std::string tail = c.rest();
        std::string sep = std::string(" ") + kArrow + " ";
        auto mid = tail.find(sep);
        if (mid == std::string::npos) return std::nullopt;
        std::string before, after;
        if (!bracketed(tail.substr(0, mid), before)) return std::nullopt;
        if (!bracketed(tail.substr(mid + sep.size()), after)) return std::nullopt;
        entry.fields["prior"] = before;
        entry.fields["record"] = after;
        return entry;
    }
    return std::nullopt;
}

} // namespace

std::optional<ParsedEntry> parse_output_entry(const std::string& text) {
    if (text.rfind("GUI: ", 0) == 0) return parse_gui(text.substr(5));
    if (text.rfind("DB: ", 0) == 0) return parse_db(text.substr(4));
    return std::nullopt;
}

// ---- grouping and the operation index -------------------------------------

namespace {

bool is_input_verb(sim::Verb v) { return v == sim::Verb::Fill || v == sim::Verb::Pick; }

std::string action_description(const engine::StepRecord& step, const sim::AppSpec& spec) {
    // titles are embedded in the widget ids as "scope:title"
    auto colon = step.action.widget_id.find(':');
    std::string title =
        colon == std::string::npos ? step.action.widget_id : step.action.widget_id.substr(colon + 1);
    (void)spec;
    switch (step.action.verb) {
    case sim::Verb::Select: return "Select menu \"" + title + "\"";
    case sim::Verb::Click: return "Click button \"" + title + "\"";
    case sim::Verb::Fill: return "Fill field \"" + title + "\" as \"" + step.action.value + "\"";
    case sim::Verb::Pick: return "Pick \"" + step.action.value + "\" in field \"" + title + "\"";
    }
    return "?";
}

std::string widget_title(const std::string& widget_id) {
    auto colon = widget_id.find(':');
    return colon == std::string::npos ? widget_id : widget_id.substr(colon + 1);
}

bool is_menu_step(const engine::StepRecord& s) {
    return s.cls == classify::ActionClass::Menu;
}

std::vector<OutputEntry> entries_for(const engine::StepRecord& step) {
    std::vector<OutputEntry> out;
    for (const auto& ev : step.events) {
        if (const auto* change = std::get_if<sim::GuiChange>(&ev))
            if (change->kind == sim::GuiChange::Kind::Disappeared) continue;
        out.push_back(format_output_entry(ev));
    }
    return out;
}

} // namespace

std::vector<ReportRow> group_input_actions(const engine::TestCase& test,
                                           const sim::AppSpec& spec) {
    std::vector<ReportRow> rows;
    const auto& steps = test.steps;
    std::string current_menu;
    std::size_t i = 0;
    int row_no = 0;
    while (i < steps.size()) {
        ReportRow row;
        std::size_t begin = i;
        if (is_input_verb(steps[i].action.verb)) {
            // maximal run of fills/picks, merged with the click that
            // terminates it when there is one
            while (i < steps.size() && is_input_verb(steps[i].action.verb)) ++i;
            bool terminated = i < steps.size() && steps[i].action.verb == sim::Verb::Click;
            if (terminated) ++i;
            row.operation = terminated ? widget_title(steps[i - 1].action.widget_id) : "Input";
        } else {
            ++i;
            const auto& s = steps[begin];
            if (is_menu_step(s)) current_menu = widget_title(s.action.widget_id);
            row.operation = widget_title(s.action.widget_id);
            if (is_menu_step(s)) row.operation = "Menu";
        }
        for (std::size_t k = begin; k < i; ++k) {
            row.actions.push_back(action_description(steps[k], spec));
            for (auto& e : entries_for(steps[k])) row.outputs.push_back(std::move(e));
        }
        row.first_step = static_cast<int>(begin) + 1;
        row.last_step = static_cast<int>(i);
        row.menu = current_menu;
        row.id = test.id + "." + std::to_string(++row_no);
        if (!row.menu.empty()) row.operation = row.menu + "." + row.operation;
        rows.push_back(std::move(row));
    }
    return rows;
}

GeneratedReport generate_report(const std::vector<engine::TestCase>& tests,
                                const sim::AppSpec& spec) {
    GeneratedReport out;
    for (const auto& test : tests) {
        TestReport report;
        report.test_id = test.id;
        report.rows = group_input_actions(test, spec);
        for (const auto& s : test.steps) {
            if (is_menu_step(s)) {
                report.start_menu = widget_title(s.action.widget_id);
                break;
            }
        }
        out.index.tests_per_menu[report.start_menu.empty() ? "(none)" : report.start_menu] += 1;
        for (const auto& row : report.rows)
            if (!row.operation.empty() && !row.menu.empty())
                out.index.occurrences[row.operation].push_back(row.id);
        out.tests.push_back(std::move(report));
    }
    return out;
}

std::string csv_escape_cell(const std::string& cell) {
    // newlines escape to the two characters "\n" so records stay on one
    // line; standard CSV quoting on top
    std::string escaped;
    for (char ch : cell) {
        if (ch == '\\')
            escaped += "\\\\";
        else if (ch == '\n')
            escaped += "\\n";
        else
            escaped += ch;
    }
    bool needs_quotes = escaped.find_first_of(",\"") != std::string::npos;
    if (!needs_quotes) return escaped;
    std::string quoted = "\"";
    for (char ch : escaped) {
        if (ch == '"') quoted += '"'; // doubled per CSV convention
        quoted += ch;
    }
    quoted += "\"";
    return quoted;
}

std::string menu_file_name(const std::string& menu) {
    if (menu.empty()) return "no_menu.csv";
    std::string name;
    for (char ch : menu) {
        if (std::isalnum(static_cast<unsigned char>(ch)))
            name += ch;
        else
            name += '_';
    }
    return name + ".csv";
}

namespace {

std::string html_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

std::string cell_lines(const std::vector<std::string>& lines) {
    std::string joined;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i) joined += "\n";
        joined += lines[i];
    }
    return joined;
}

} // namespace

void render(const GeneratedReport& report, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create report directory " + out_dir.string());

    // per-menu tabular files; a whole test goes to the menu it started with
    std::map<std::string, std::ostringstream> files;
    for (const auto& test : report.tests) {
        auto& os = files[menu_file_name(test.start_menu)];
        if (os.str().empty()) os << "ID,Actions,Outputs\n";
        for (const auto& row : test.rows) {
            std::vector<std::string> outputs;
            for (const auto& e : row.outputs) outputs.push_back(e.text);
            os << row.id << ',' << csv_escape_cell(cell_lines(row.actions)) << ','
               << csv_escape_cell(cell_lines(outputs)) << '\n';
        }
    }
    for (const auto& [name, os] : files) {
        std::ofstream out(out_dir / name, std::ios::binary);
        if (!out) throw IoError("cannot write report file " + (out_dir / name).string());
        out << os.str();
    }

    // browsable index: unique operation list linking into the row tables
    std::ofstream html(out_dir / "index.html", std::ios::binary);
    if (!html) throw IoError("cannot write report index " + (out_dir / "index.html").string());
    html << "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\">"
         << "<title>Test report</title></head>\n<body>\n";
    html << "<h1>Unique operation list</h1>\n";
    std::map<std::string, std::vector<std::string>> ops_by_menu;
    for (const auto& [op, rows] : report.index.occurrences) {
        auto dot = op.find('.');
        ops_by_menu[op.substr(0, dot)].push_back(op);
    }
    for (const auto& [menu, count] : report.index.tests_per_menu) {
        html << "<h2>" << html_escape(menu) << "</h2>\n";
        html << "<p>" << count << " test case" << (count == 1 ? "" : "s") << "</p>\n<ul>\n";
        auto it = ops_by_menu.find(menu);
        if (it != ops_by_menu.end()) {
            for (const auto& op : it->second) {
                const auto& rows = report.index.occurrences.at(op);
                html << "<li>" << html_escape(op) << " &mdash; " << rows.size() << " occurrence"
                     << (rows.size() == 1 ? "" : "s") << ": ";
                for (std::size_t i = 0; i < rows.size(); ++i) {
                    if (i) html << " ";
                    html << "<a href=\"#" << html_escape(rows[i]) << "\">" << html_escape(rows[i])
                         << "</a>";
                }
                html << "</li>\n";
            }
        }
        html << "</ul>\n";
    }
    html << "<h1>Report rows</h1>\n";
    for (const auto& test : report.tests) {
        html << "<h2>Test case " << html_escape(test.test_id) << "</h2>\n";
        html << "<table border=\"1\">\n<tr><th>ID</th><th>Actions</th><th>Outputs</th></tr>\n";
        for (const auto& row : test.rows) {
            html << "<tr id=\"" << html_escape(row.id) << "\"><td>" << html_escape(row.id)
                 << "</td><td>";
            for (std::size_t i = 0; i < row.actions.size(); ++i) {
                if (i) html << "<br>";
                html << html_escape(row.actions[i]);
            }
            html << "</td><td>";
            for (std::size_t i = 0; i < row.outputs.size(); ++i) {
                if (i) html << "<br>";
                html << html_escape(row.outputs[i].text);
            }
            html << "</td></tr>\n";
        }
        html << "</table>\n";
    }
    html << "</body></html>\n";
}

} // namespace gexplore::report
