#include <doctest.h>

#include <algorithm>
#include <set>

#include "gexplore/presets.hpp"
#include "gexplore/simulator.hpp"

using namespace gexplore;
using namespace gexplore::sim;

namespace {

Action find_action(const std::vector<Action>& actions, Verb verb, const std::string& id_part,
                   const std::string& value = "") {
    for (const auto& a : actions) {
        if (a.verb != verb) continue;
        if (a.widget_id.find(id_part) == std::string::npos) continue;
        if (!value.empty() && a.value != value) continue;
        return a;
    }
    FAIL("no enabled action matching ", id_part);
    return {};
}

// drives the world through menu + CRUD clicks by widget title
std::vector<OutputEvent> click(WorldState& world, Verb verb, const std::string& id_part,
                               const std::string& value = "") {
    Action a = find_action(enabled_actions(world), verb, id_part);
    a.value = value;
    return execute(world, a);
}

bool has_window_event(const std::vector<OutputEvent>& events, const std::string& title,
                      WidgetState state) {
    for (const auto& ev : events) {
        const auto* c = std::get_if<GuiChange>(&ev);
        if (!c) continue;
        if (c->widget.kind == WidgetKind::Window && c->widget.title == title &&
            c->widget.state == state)
            return true;
    }
    return false;
}

} // namespace

TEST_CASE("erp-like preset: home page exposes all 95 global actions") {
    AppSpec spec = presets::erp_like_app();
    WorldState world = build_app(spec);
    auto actions = enabled_actions(world);
    CHECK(actions.size() == 95);
    int entity_menus = 0;
    for (const auto& a : actions) {
        CHECK((a.verb == Verb::Select || a.verb == Verb::Click));
        for (const auto& e : spec.entity_types)
            if (a.widget_id == "menu:" + e.name) ++entity_menus;
    }
    CHECK(entity_menus == 6);
}

TEST_CASE("minimal spec: one entity, no records") {
    AppSpec spec;
    spec.global_menu_actions = 1;
    EntityTypeSpec e;
    e.name = "Items";
    e.singular = "Item";
    e.fields = {{"Name", ValueKind::Text, true, false, 0, "NAME", "", {}}};
    spec.entity_types = {e};
    WorldState world = build_app(spec);
    CHECK(world.db.at("ITEMS").empty());
    CHECK(world.change_log.empty());
    CHECK(render_gui(world).foreground().title == "Home");
}

TEST_CASE("determinism: same spec and seed give identical worlds") {
    AppSpec spec = presets::desk_app();
    WorldState a = build_app(spec);
    WorldState b = build_app(spec);
    CHECK(canonical_text(a) == canonical_text(b));

    // and identical event streams over a scripted walk
    auto run = [&spec] {
        WorldState w = build_app(spec);
        std::string trace;
        Rng rng(123);
        for (int i = 0; i < 120; ++i) {
            auto actions = enabled_actions(w);
            Action a = actions[rng.uniform(actions.size())];
            if (a.verb == Verb::Fill) a.value = "text " + std::to_string(rng.uniform(5));
            for (const auto& ev : execute(w, a)) {
                if (const auto* c = std::get_if<GuiChange>(&ev))
                    trace += c->widget.id + ";";
                else
                    trace += std::get<DbChangeEvent>(ev).table + ";";
            }
            trace += "#";
        }
        return trace + canonical_text(w);
    };
    CHECK(run() == run());
}

TEST_CASE("spec validation names the violated invariant") {
    AppSpec spec = presets::desk_app();
    SUBCASE("duplicate entity names") {
        spec.entity_types.push_back(spec.entity_types[0]);
        CHECK_THROWS_AS(build_app(spec), ValidationError);
    }
    SUBCASE("global actions below entity count") {
        spec.global_menu_actions = 2;
        CHECK_THROWS_WITH_AS(build_app(spec),
                             doctest::Contains("global_menu_actions"), ValidationError);
    }
    SUBCASE("field outside the tab range") {
        spec.entity_types[0].fields[0].tab = 9;
        CHECK_THROWS_AS(build_app(spec), ValidationError);
    }
    SUBCASE("required readonly field") {
        spec.entity_types[0].fields[0].readonly = true;
        CHECK_THROWS_AS(build_app(spec), ValidationError);
    }
    SUBCASE("empty tab") {
        spec.entity_types[1].tabs = 3; // contacts only fill tabs 0 and 1
        CHECK_THROWS_WITH_AS(build_app(spec), doctest::Contains("every tab"), ValidationError);
    }
}

TEST_CASE("enabled actions on an input form") {
    WorldState world = build_app(presets::invoice_demo_app());
    click(world, Verb::Select, "menu:Invoices");
    click(world, Verb::Click, "btn:Edit");
    auto actions = enabled_actions(world);

    int fills = 0, picks = 0;
    bool save = false, close = false;
    for (const auto& a : actions) {
        if (a.verb == Verb::Fill) ++fills;
        if (a.verb == Verb::Pick) ++picks;
        if (a.verb == Verb::Click && a.widget_id == "Invoice.btn:Save") save = true;
        if (a.verb == Verb::Click && a.widget_id == "Invoice.btn:Close") close = true;
    }
    CHECK(fills == 6);  // the six text fields
    CHECK(picks == 3);  // the State list values
    CHECK(save);
    CHECK(close);
    // global menus stay available
    int menus = 0;
    for (const auto& a : actions)
        if (a.widget_id.rfind("menu:", 0) == 0) ++menus;
    CHECK(menus == 6);
}

TEST_CASE("view window offers only clicks") {
    WorldState world = build_app(presets::invoice_demo_app());
    click(world, Verb::Select, "menu:Invoices");
    click(world, Verb::Click, "btn:View");
    for (const auto& a : enabled_actions(world)) {
        CHECK(a.verb != Verb::Fill);
        CHECK(a.verb != Verb::Pick);
    }
}

TEST_CASE("selecting the Invoices menu raises the entity page") {
    WorldState world = build_app(presets::invoice_demo_app());
    auto events = click(world, Verb::Select, "menu:Invoices");
    CHECK(has_window_event(events, "Invoices", WidgetState::Foreground));
    bool new_button = false, grid = false;
    for (const auto& ev : events) {
        const auto* c = std::get_if<GuiChange>(&ev);
        if (!c) continue;
        if (c->widget.title == "New Invoice" && c->widget.state == WidgetState::Enabled)
            new_button = true;
        if (c->widget.kind == WidgetKind::DataGrid)
            grid = c->widget.columns == std::vector<std::string>{"ID", "Name", "Data", "Action"};
    }
    CHECK(new_button);
    CHECK(grid);
}

TEST_CASE("filling all required fields and saving inserts one record") {
    WorldState world = build_app(presets::invoice_demo_app());
    click(world, Verb::Select, "menu:Invoices");
    click(world, Verb::Click, "btn:New Invoice");
    click(world, Verb::Fill, "fld:Invoice Number", "2015.2");
    click(world, Verb::Fill, "fld:Invoice Name", "Payment");
    click(world, Verb::Fill, "fld:Client Data - Name", "Paul");
    click(world, Verb::Fill, "fld:Client Data - Surname", "Red");
    click(world, Verb::Fill, "fld:Client Data - Email", "paul@red.it");
    click(world, Verb::Fill, "fld:Client Data - Country", "Italy");
    auto events = click(world, Verb::Click, "btn:Save");

    auto log = drain_change_log(world);
    REQUIRE(log.size() == 1);
    CHECK(log[0].kind == DbChangeEvent::Kind::Insert);
    CHECK(log[0].table == "INVOICES");
    DbRecord expect = {{"NUMBER", "2015.2"}, {"LABEL", "Payment"},      {"NAME", "Paul"},
                       {"SURNAME", "Red"},   {"EMAIL", "paul@red.it"}, {"COUNTRY", "Italy"}};
    CHECK(log[0].record == expect);
    CHECK(world.db.at("INVOICES").size() == 4); // three initial records plus the new one
    (void)events;
}

TEST_CASE("closing a partially filled form changes nothing in the database") {
    WorldState world = build_app(presets::invoice_demo_app());
    click(world, Verb::Select, "menu:Invoices");
    click(world, Verb::Click, "btn:New Invoice");
    click(world, Verb::Fill, "fld:Invoice Number", "77");
    auto events = click(world, Verb::Click, "btn:Close");
    CHECK(drain_change_log(world).empty());
    CHECK(render_gui(world).foreground().title == "Invoices");
    CHECK(has_window_event(events, "Invoices", WidgetState::Foreground));
}

TEST_CASE("save with a missing required field fails and returns to the page") {
    WorldState world = build_app(presets::invoice_demo_app());
    click(world, Verb::Select, "menu:Invoices");
    click(world, Verb::Click, "btn:New Invoice");
    click(world, Verb::Fill, "fld:Invoice Number", "77");
    click(world, Verb::Click, "btn:Save");
    CHECK(drain_change_log(world).empty());
    CHECK(render_gui(world).foreground().title == "Invoices");
}

TEST_CASE("actions that are not enabled are rejected") {
    WorldState world = build_app(presets::desk_app());
    SUBCASE("clicking a button of a background window") {
        click(world, Verb::Select, "menu:Notes");
        click(world, Verb::Click, "btn:New Note"); // form now covers the page
        CHECK_THROWS_AS(execute(world, {"Notes.btn:Edit", Verb::Click, ""}), PreconditionError);
    }
    SUBCASE("view button with an empty table is disabled") {
        click(world, Verb::Select, "menu:Tasks"); // tasks start with no records
        CHECK_THROWS_AS(execute(world, {"Tasks.btn:View", Verb::Click, ""}), PreconditionError);
    }
    SUBCASE("fill without a value") {
        click(world, Verb::Select, "menu:Notes");
        click(world, Verb::Click, "btn:New Note");
        CHECK_THROWS_AS(execute(world, {"Note.fld:Title", Verb::Fill, ""}), PreconditionError);
    }
    SUBCASE("click with a value") {
        CHECK_THROWS_AS(execute(world, {"menu:Notes", Verb::Select, "x"}), PreconditionError);
    }
    SUBCASE("unknown widget") {
        CHECK_THROWS_AS(execute(world, {"menu:Nowhere", Verb::Select, ""}), PreconditionError);
    }
}

TEST_CASE("change log drains once and updates carry the prior record") {
    WorldState world = build_app(presets::desk_app());
    click(world, Verb::Select, "menu:Notes");
    click(world, Verb::Click, "btn:Edit");
    DbRecord before = world.db.at("NOTES").front();
    click(world, Verb::Fill, "fld:Title", "Renamed note");
    click(world, Verb::Click, "btn:Save");

    auto log = drain_change_log(world);
    REQUIRE(log.size() == 1);
    CHECK(log[0].kind == DbChangeEvent::Kind::Update);
    CHECK(log[0].prior_record == before);
    bool renamed = false;
    for (const auto& [c, v] : log[0].record)
        if (c == "TITLE" && v == "Renamed note") renamed = true;
    CHECK(renamed);
    CHECK(drain_change_log(world).empty()); // second drain is empty
    CHECK(world.db.at("NOTES").size() == 2); // update keeps the record count
}

namespace {

// Exhaustive enumeration oracle: counts the inserts reachable within a
// given number of actions.
int inserts_within(const WorldState& start, int depth) {
    if (depth == 0) return 0;
    int found = 0;
    for (auto action : enabled_actions(start)) {
        if (action.verb == Verb::Fill) action.value = "text";
        WorldState next = start;
        for (const auto& ev : execute(next, action)) {
            if (const auto* db = std::get_if<DbChangeEvent>(&ev))
                if (db->kind == DbChangeEvent::Kind::Insert) ++found;
        }
        found += inserts_within(next, depth - 1);
    }
    return found;
}

} // namespace

TEST_CASE("no insert is reachable in fewer than k+3 actions (brute force)") {
    AppSpec spec;
    spec.global_menu_actions = 1;
    EntityTypeSpec e;
    e.name = "Pairs";
    e.singular = "Pair";
    e.has_view = e.has_edit = e.has_delete = false;
    e.fields = {{"First", ValueKind::Text, true, false, 0, "FIRST", "", {}},
                {"Second", ValueKind::Text, true, false, 0, "SECOND", "", {}}};
    spec.entity_types = {e};
    WorldState world = build_app(spec);

    // k = 2 required fields: menu + new + 2 fills + save = 5 actions
    CHECK(inserts_within(world, 4) == 0);
    CHECK(inserts_within(world, 5) > 0);
}

TEST_CASE("global menu actions stay enabled in every reachable state") {
    AppSpec spec = presets::desk_app();
    WorldState world = build_app(spec);
    Rng rng(7);
    std::set<std::string> global_ids;
    for (const auto& a : enabled_actions(world))
        if (a.widget_id.rfind("menu:", 0) == 0) global_ids.insert(a.widget_id);
    CHECK(global_ids.size() == 12);

    for (int i = 0; i < 250; ++i) {
        auto actions = enabled_actions(world);
        std::set<std::string> present;
        for (const auto& a : actions)
            if (a.widget_id.rfind("menu:", 0) == 0) present.insert(a.widget_id);
        CHECK(present == global_ids);
        Action a = actions[rng.uniform(actions.size())];
        if (a.verb == Verb::Fill) a.value = "w";
        execute(world, a);
    }
}

TEST_CASE("inserts minus deletes track the record count per table") {
    WorldState world = build_app(presets::desk_app());
    std::map<std::string, long> initial;
    for (const auto& [table, records] : world.db)
        initial[table] = static_cast<long>(records.size());

    Rng rng(99);
    std::map<std::string, long> delta;
    for (int i = 0; i < 400; ++i) {
        auto actions = enabled_actions(world);
        Action a = actions[rng.uniform(actions.size())];
        if (a.verb == Verb::Fill) a.value = "val " + std::to_string(rng.uniform(3));
        execute(world, a);
    }
    for (const auto& ev : drain_change_log(world)) {
        if (ev.kind == DbChangeEvent::Kind::Insert) delta[ev.table] += 1;
        if (ev.kind == DbChangeEvent::Kind::Delete) delta[ev.table] -= 1;
    }
    for (const auto& [table, records] : world.db)
        CHECK(static_cast<long>(records.size()) == initial[table] + delta[table]);
}

TEST_CASE("app spec round-trips through its configuration file") {
    AppSpec spec = presets::desk_app();
    auto path = std::filesystem::temp_directory_path() / "gexplore_spec_roundtrip.json";
    save_app_spec(spec, path);
    AppSpec loaded = load_app_spec(path);
    WorldState a = build_app(spec);
    WorldState b = build_app(loaded);
    CHECK(canonical_text(a) == canonical_text(b));
    std::filesystem::remove(path);
}
