#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "gexplore/presets.hpp"
#include "gexplore/report.hpp"
#include "helpers.hpp"

using namespace gexplore;
using namespace gexplore::report;

namespace {

sim::Widget widget(sim::WidgetKind kind, const std::string& title, sim::WidgetState state) {
    sim::Widget w;
    w.id = "x:" + title;
    w.kind = kind;
    w.title = title;
    w.state = state;
    w.window = "W";
    return w;
}

OutputEntry gui_entry(const sim::Widget& w) {
    return format_output_entry(sim::GuiChange{sim::GuiChange::Kind::Appeared, w});
}

} // namespace

TEST_CASE("output templates match the report format") {
    SUBCASE("window") {
        auto w = widget(sim::WidgetKind::Window, "Invoices", sim::WidgetState::Foreground);
        CHECK(gui_entry(w).text == "GUI: Window \"Invoices\" in foreground");
        CHECK(gui_entry(w).channel == OutputEntry::Channel::GUI);
    }
    SUBCASE("menu and button") {
        auto m = widget(sim::WidgetKind::GraphicalMenu, "Offers", sim::WidgetState::Enabled);
        CHECK(gui_entry(m).text == "GUI: Menu \"Offers\" enabled");
        auto b = widget(sim::WidgetKind::Button, "New Invoice", sim::WidgetState::Enabled);
        CHECK(gui_entry(b).text == "GUI: Button \"New Invoice\" enabled");
    }
    SUBCASE("text field, empty and filled") {
        auto t = widget(sim::WidgetKind::TextField, "Invoice Number", sim::WidgetState::Editable);
        CHECK(gui_entry(t).text == "GUI: Text field \"Invoice Number\" as ⟨empty⟩ enabled");
        t.value = "2015.2";
        t.state = sim::WidgetState::Blocked;
        CHECK(gui_entry(t).text == "GUI: Text field \"Invoice Number\" as \"2015.2\" blocked");
    }
    SUBCASE("list field") {
        auto l = widget(sim::WidgetKind::ListField, "State", sim::WidgetState::Selectable);
        l.values = {"not Sent", "Sent", "Replied"};
        l.value = "Sent";
        CHECK(gui_entry(l).text ==
              "GUI: List field \"State\" (\"not Sent\", \"Sent\", \"Replied\") as \"Sent\" enabled");
    }
    SUBCASE("combo box") {
        auto c = widget(sim::WidgetKind::ComboBoxField, "Tags", sim::WidgetState::Selectable);
        c.values = {"a", "b"};
        c.marked = {"b"};
        CHECK(gui_entry(c).text ==
              "GUI: Combo-box field \"Tags\" (\"a\", \"b\") marked at \"b\" enabled");
    }
    SUBCASE("grid") {
        auto g = widget(sim::WidgetKind::DataGrid, "Records", sim::WidgetState::Enabled);
        g.columns = {"ID", "Name", "Data", "Action"};
        g.value = "3";
        CHECK(gui_entry(g).text ==
              "GUI: Grid with columns \"ID\", \"Name\", \"Data\", \"Action\" as 3 items");
    }
    SUBCASE("database insert") {
        sim::DbChangeEvent ev;
        ev.kind = sim::DbChangeEvent::Kind::Insert;
        ev.table = "INVOICES";
        ev.record = {{"NUMBER", "2015.2"}, {"LABEL", "Payment"},     {"NAME", "Paul"},
                     {"SURNAME", "Red"},   {"EMAIL", "paul@red.it"}, {"COUNTRY", "Italy"}};
        OutputEntry entry = format_output_entry(sim::OutputEvent{ev});
        CHECK(entry.channel == OutputEntry::Channel::DB);
        CHECK(entry.text ==
              "DB: new record in Table INVOICES ⟨NUMBER=2015.2, LABEL=Payment, NAME=Paul, "
              "SURNAME=Red, EMAIL=paul@red.it, COUNTRY=Italy⟩");
    }
    SUBCASE("database delete and update") {
        sim::DbChangeEvent del;
        del.kind = sim::DbChangeEvent::Kind::Delete;
        del.table = "NOTES";
        del.record = {{"TITLE", "old"}};
        CHECK(format_output_entry(sim::OutputEvent{del}).text ==
              "DB: deleted record in Table NOTES was ⟨TITLE=old⟩");

        sim::DbChangeEvent upd;
        upd.kind = sim::DbChangeEvent::Kind::Update;
        upd.table = "NOTES";
        upd.prior_record = {{"TITLE", "old"}};
        upd.record = {{"TITLE", "new"}};
        CHECK(format_output_entry(sim::OutputEvent{upd}).text ==
              "DB: update in Table NOTES ⟨TITLE=old⟩ → ⟨TITLE=new⟩");
    }
    SUBCASE("disappearances have no template") {
        auto w = widget(sim::WidgetKind::Button, "Save", sim::WidgetState::Enabled);
        CHECK_THROWS_AS(format_output_entry(
                            sim::OutputEvent{sim::GuiChange{sim::GuiChange::Kind::Disappeared, w}}),
                        Error);
    }
}

TEST_CASE("parsing recovers the template kind and its fields") {
    auto p1 = parse_output_entry("GUI: Window \"Invoices\" in foreground");
    REQUIRE(p1);
    CHECK(p1->kind == "window");
    CHECK(p1->fields.at("title") == "Invoices");
    CHECK(p1->fields.at("state") == "foreground");

    auto p2 = parse_output_entry(
        "DB: new record in Table INVOICES ⟨NUMBER=2015.2, LABEL=Payment⟩");
    REQUIRE(p2);
    CHECK(p2->kind == "db_insert");
    CHECK(p2->fields.at("table") == "INVOICES");
    CHECK(p2->fields.at("record") == "NUMBER=2015.2, LABEL=Payment");

    CHECK_FALSE(parse_output_entry("not a template"));
    CHECK_FALSE(parse_output_entry("GUI: Window untitled"));
}

TEST_CASE("every formatted entry parses back to its source (property)") {
    Rng rng(31337);
    const std::string charset = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 @.-_";
    auto word = [&](std::size_t min_len) {
        std::string s;
        std::size_t len = min_len + rng.uniform(10);
        for (std::size_t i = 0; i < len; ++i) s += charset[rng.uniform(charset.size())];
        // the templates delimit on quotes and parentheses, not spaces, but
        // a leading/trailing space would be lost on field comparison; trim
        while (!s.empty() && s.front() == ' ') s.front() = 'x';
        while (!s.empty() && s.back() == ' ') s.back() = 'x';
        return s;
    };

    int checked = 0;
    for (int i = 0; i < 10000; ++i) {
        int kind = static_cast<int>(rng.uniform(10));
        if (kind < 7) {
            sim::Widget w;
            w.id = "x:y";
            w.window = "W";
            w.title = word(1);
            switch (kind) {
            case 0:
                w.kind = sim::WidgetKind::GraphicalMenu;
                w.state = rng.bernoulli(0.5) ? sim::WidgetState::Enabled
                                             : sim::WidgetState::Disabled;
                break;
            case 1:
                w.kind = sim::WidgetKind::Button;
                w.state = rng.bernoulli(0.5) ? sim::WidgetState::Enabled
                                             : sim::WidgetState::Disabled;
                break;
            case 2:
                w.kind = sim::WidgetKind::TextField;
                w.state = rng.bernoulli(0.5) ? sim::WidgetState::Editable
                                             : sim::WidgetState::Blocked;
                if (rng.bernoulli(0.5)) w.value = word(1);
                break;
            case 3:
                w.kind = sim::WidgetKind::ListField;
                w.state = rng.bernoulli(0.5) ? sim::WidgetState::Selectable
                                             : sim::WidgetState::Blocked;
                for (std::size_t v = 0; v < 1 + rng.uniform(4); ++v) w.values.push_back(word(1));
                if (rng.bernoulli(0.7)) w.value = word(1);
                break;
            case 4:
                w.kind = sim::WidgetKind::ComboBoxField;
                w.state = rng.bernoulli(0.5) ? sim::WidgetState::Selectable
                                             : sim::WidgetState::Blocked;
                for (std::size_t v = 0; v < 1 + rng.uniform(4); ++v) w.values.push_back(word(1));
                for (std::size_t v = 0; v < rng.uniform(3); ++v) w.marked.push_back(word(1));
                break;
            case 5:
                w.kind = sim::WidgetKind::DataGrid;
                w.state = sim::WidgetState::Enabled;
                for (std::size_t v = 0; v < 1 + rng.uniform(5); ++v) w.columns.push_back(word(1));
                w.value = std::to_string(rng.uniform(100));
                break;
            default:
                w.kind = sim::WidgetKind::Window;
                w.state = rng.bernoulli(0.5) ? sim::WidgetState::Foreground
                                             : sim::WidgetState::Background;
                break;
            }
            OutputEntry entry = gui_entry(w);
            auto parsed = parse_output_entry(entry.text);
            REQUIRE(parsed);
            CHECK(parsed->fields.at("title") == w.title);
            if (kind == 5) {
                std::string cols;
                for (std::size_t c = 0; c < w.columns.size(); ++c)
                    cols += (c ? "|" : "") + w.columns[c];
                CHECK(parsed->kind == "grid");
                CHECK(parsed->fields.at("columns") == cols);
                CHECK(parsed->fields.at("items") == w.value);
            }
            if (kind == 2) CHECK(parsed->fields.at("value") == w.value);
            ++checked;
        } else {
            sim::DbChangeEvent ev;
            ev.table = word(1);
            // table names parse up to the first space
            for (auto& c : ev.table)
                if (c == ' ') c = '_';
            for (std::size_t f = 0; f < 1 + rng.uniform(4); ++f) {
                std::string field = word(1);
                for (auto& c : field)
                    if (c == ' ' || c == ',' || c == '=') c = '_';
                std::string value = word(1);
                for (auto& c : value)
                    if (c == ',') c = '.';
                ev.record.emplace_back(field, value);
            }
            if (kind == 7) ev.kind = sim::DbChangeEvent::Kind::Insert;
            if (kind == 8) ev.kind = sim::DbChangeEvent::Kind::Delete;
            if (kind == 9) {
                ev.kind = sim::DbChangeEvent::Kind::Update;
                ev.prior_record = ev.record;
            }
            OutputEntry entry = format_output_entry(sim::OutputEvent{ev});
            auto parsed = parse_output_entry(entry.text);
            REQUIRE(parsed);
            CHECK(parsed->fields.at("table") == ev.table);
            ++checked;
        }
    }
    CHECK(checked == 10000);
}

TEST_CASE("grid parsing with a title containing ' as '") {
    sim::Widget g = widget(sim::WidgetKind::DataGrid, "Records", sim::WidgetState::Enabled);
    g.columns = {"Save as draft", "Name"};
    g.value = "7";
    auto parsed = parse_output_entry(gui_entry(g).text);
    REQUIRE(parsed);
    CHECK(parsed->fields.at("columns") == "Save as draft|Name");
    CHECK(parsed->fields.at("items") == "7");
}

TEST_CASE("consecutive input actions group into one logical row") {
    sim::AppSpec spec = presets::invoice_demo_app();

    SUBCASE("the six fills and the save become one row") {
        engine::TestCase tc = testutil::scripted_test(spec, testutil::fig4_script());
        auto rows = group_input_actions(tc, spec);
        REQUIRE(rows.size() == 3);
        CHECK(rows[0].id == "T3.1");
        CHECK(rows[1].id == "T3.2");
        CHECK(rows[2].id == "T3.3");
        CHECK(rows[2].actions.size() == 7);
        CHECK(rows[2].actions.front() == "Fill field \"Invoice Number\" as \"2015.2\"");
        CHECK(rows[2].actions.back() == "Click button \"Save\"");
        int db_outputs = 0;
        for (const auto& e : rows[2].outputs)
            if (e.channel == OutputEntry::Channel::DB) ++db_outputs;
        CHECK(db_outputs == 1);
        CHECK(rows[2].operation == "Invoices.Save");
    }
    SUBCASE("menu, crud, menu maps to three rows") {
        engine::TestCase tc = testutil::scripted_test(
            spec, {{"menu:Invoices", sim::Verb::Select, ""},
                   {"Invoices.btn:View", sim::Verb::Click, ""},
                   {"menu:Invoices", sim::Verb::Select, ""}});
        auto rows = group_input_actions(tc, spec);
        CHECK(rows.size() == 3);
    }
    SUBCASE("trailing fills without a terminator merge into one open row") {
        engine::TestCase tc = testutil::scripted_test(
            spec, {{"menu:Invoices", sim::Verb::Select, ""},
                   {"Invoices.btn:New Invoice", sim::Verb::Click, ""},
                   {"Invoice.fld:Invoice Number", sim::Verb::Fill, "1"},
                   {"Invoice.fld:Invoice Name", sim::Verb::Fill, "x"}});
        auto rows = group_input_actions(tc, spec);
        REQUIRE(rows.size() == 3);
        CHECK(rows[2].actions.size() == 2);
        CHECK(rows[2].operation == "Invoices.Input");
    }
}

TEST_CASE("grouping partitions the step sequence exactly (property)") {
    Rng rng(4242);
    sim::AppSpec spec = presets::desk_app();
    for (int trial = 0; trial < 200; ++trial) {
        // random synthetic step sequences: grouping only looks at verbs
        engine::TestCase tc;
        tc.id = "T" + std::to_string(trial);
        int len = 1 + static_cast<int>(rng.uniform(20));
        for (int i = 0; i < len; ++i) {
            engine::StepRecord s;
            s.episode = 1;
            s.index = i + 1;
            switch (rng.uniform(4)) {
            case 0: s.action = {"menu:Notes", sim::Verb::Select, ""}; break;
            case 1: s.action = {"Notes.btn:Edit", sim::Verb::Click, ""}; break;
            case 2: s.action = {"Note.fld:Title", sim::Verb::Fill, "v"}; break;
            default: s.action = {"Note.fld:State", sim::Verb::Pick, "Open"}; break;
            }
            s.cls = s.action.verb == sim::Verb::Select ? classify::ActionClass::Menu
                                                       : classify::ActionClass::Other;
            s.signature = sim::action_signature(s.action);
            tc.steps.push_back(s);
        }
        auto rows = group_input_actions(tc, spec);

        // concatenated rows reproduce the steps exactly
        std::size_t covered = 0;
        int expected_first = 1;
        for (const auto& row : rows) {
            CHECK(row.first_step == expected_first);
            CHECK(row.last_step >= row.first_step);
            expected_first = row.last_step + 1;
            covered += row.actions.size();
        }
        CHECK(covered == tc.steps.size());

        // every maximal fill/pick run followed by a click sits in one row
        for (std::size_t i = 0; i < tc.steps.size(); ++i) {
            bool input = tc.steps[i].action.verb == sim::Verb::Fill ||
                         tc.steps[i].action.verb == sim::Verb::Pick;
            if (!input) continue;
            std::size_t j = i;
            while (j < tc.steps.size() && (tc.steps[j].action.verb == sim::Verb::Fill ||
                                           tc.steps[j].action.verb == sim::Verb::Pick))
                ++j;
            bool terminated = j < tc.steps.size() && tc.steps[j].action.verb == sim::Verb::Click;
            std::size_t run_end = terminated ? j + 1 : j;
            // the whole run lies inside a single row
            for (const auto& row : rows) {
                if (row.first_step == static_cast<int>(i) + 1)
                    CHECK(row.last_step == static_cast<int>(run_end));
            }
            i = run_end ? run_end - 1 : 0;
        }
    }
}

TEST_CASE("the unique operation index counts occurrences and links rows") {
    sim::AppSpec spec = presets::invoice_demo_app();
    std::vector<engine::TestCase> tests;
    tests.push_back(testutil::scripted_test(spec, testutil::fig4_script(), "T3"));
    tests.push_back(testutil::scripted_test(spec, testutil::fig4_script(), "T6"));
    GeneratedReport rep = generate_report(tests, spec);

    CHECK(rep.index.tests_per_menu.at("Invoices") == 2);
    const auto& saves = rep.index.occurrences.at("Invoices.Save");
    REQUIRE(saves.size() == 2);
    CHECK(saves[0] == "T3.3");
    CHECK(saves[1] == "T6.3");

    // index consistency: every referenced row id exists
    std::set<std::string> row_ids;
    for (const auto& t : rep.tests)
        for (const auto& r : t.rows) row_ids.insert(r.id);
    for (const auto& [op, rows] : rep.index.occurrences)
        for (const auto& id : rows) CHECK(row_ids.count(id) == 1);
}

TEST_CASE("an empty test list renders an empty report") {
    GeneratedReport rep = generate_report({}, presets::desk_app());
    CHECK(rep.tests.empty());
    CHECK(rep.index.tests_per_menu.empty());
    CHECK(rep.index.occurrences.empty());
}

TEST_CASE("rendering writes one file per menu plus the browsable index") {
    sim::AppSpec spec = presets::erp_like_app();
    std::vector<engine::TestCase> tests;
    int k = 0;
    for (const auto& e : spec.entity_types)
        tests.push_back(testutil::scripted_test(
            spec, {{"menu:" + e.name, sim::Verb::Select, ""}}, "T" + std::to_string(++k)));

    auto dir = std::filesystem::temp_directory_path() / "gexplore_render_test";
    std::filesystem::remove_all(dir);
    GeneratedReport rep = generate_report(tests, spec);
    render(rep, dir);

    int csv_files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.path().extension() == ".csv") ++csv_files;
    CHECK(csv_files == 6);
    CHECK(std::filesystem::exists(dir / "index.html"));

    // anchors resolve: each indexed row id appears as an id attribute
    std::ifstream in(dir / "index.html");
    std::string html((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    for (const auto& [op, rows] : rep.index.occurrences)
        for (const auto& id : rows) CHECK(html.find("id=\"" + id + "\"") != std::string::npos);

    // re-rendering is byte-identical
    auto dir2 = std::filesystem::temp_directory_path() / "gexplore_render_test2";
    std::filesystem::remove_all(dir2);
    render(rep, dir2);
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        std::ifstream a(entry.path(), std::ios::binary);
        std::ifstream b(dir2 / entry.path().filename(), std::ios::binary);
        std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
        std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
        CHECK(sa == sb);
    }
    std::filesystem::remove_all(dir);
    std::filesystem::remove_all(dir2);
}

TEST_CASE("csv cells stay on one line") {
    CHECK(csv_escape_cell("plain") == "plain");
    CHECK(csv_escape_cell("a\nb") == "a\\nb");
    CHECK(csv_escape_cell("back\\slash") == "back\\\\slash");
    CHECK(csv_escape_cell("with,comma") == "\"with,comma\"");
    CHECK(csv_escape_cell("say \"hi\"") == "\"say \"\"hi\"\"\"");
}
