#pragma once

// Small drivers shared by the report/plan tests: execute scripted actions
// against a world and record the steps the way the engine would.

#include <string>
#include <vector>

#include "gexplore/engine.hpp"

namespace gexplore::testutil {

inline engine::StepRecord record_step(sim::WorldState& world, const sim::Action& action,
                                      int episode, int index) {
    sim::GuiState before = sim::render_gui(world);
    sim::WidgetRole role = sim::WidgetRole::None;
    if (auto w = sim::find_widget(before, action.widget_id)) role = w->role;
    sim::GuiState after;
    auto events = sim::execute(world, action, before, after);
    bool db = false;
    for (const auto& ev : events)
        if (std::holds_alternative<sim::DbChangeEvent>(ev)) db = true;

    engine::StepRecord rec;
    rec.episode = episode;
    rec.index = index;
    rec.action = action;
    rec.signature = sim::action_signature(action);
    rec.cls = classify::classify_action(action, role, db);
    rec.from = engine::abstract_state(before);
    rec.to = engine::abstract_state(after);
    rec.events = std::move(events);
    return rec;
}

// Runs a scripted action sequence from a fresh world and returns it as a
// test case (id defaults to the sample report's "T3").
inline engine::TestCase scripted_test(const sim::AppSpec& spec,
                                      const std::vector<sim::Action>& actions,
                                      const std::string& id = "T3") {
    sim::WorldState world = sim::build_app(spec);
    engine::TestCase tc;
    tc.id = id;
    int index = 1;
    for (const auto& a : actions) tc.steps.push_back(record_step(world, a, 1, index++));
    return tc;
}

inline std::vector<sim::Action> fig4_script() {
    using sim::Verb;
    return {
        {"menu:Invoices", Verb::Select, ""},
        {"Invoices.btn:New Invoice", Verb::Click, ""},
        {"Invoice.fld:Invoice Number", Verb::Fill, "2015.2"},
        {"Invoice.fld:Invoice Name", Verb::Fill, "Payment"},
        {"Invoice.fld:Client Data - Name", Verb::Fill, "Paul"},
        {"Invoice.fld:Client Data - Surname", Verb::Fill, "Red"},
        {"Invoice.fld:Client Data - Email", Verb::Fill, "paul@red.it"},
        {"Invoice.fld:Client Data - Country", Verb::Fill, "Italy"},
        {"Invoice.btn:Save", Verb::Click, ""},
    };
}

} // namespace gexplore::testutil
