#include <doctest.h>

#include "gexplore/classify.hpp"
#include "gexplore/rng.hpp"

using namespace gexplore;
using namespace gexplore::classify;

TEST_CASE("action classification follows the widget role") {
    sim::Action select{"menu:Invoices", sim::Verb::Select, ""};
    sim::Action click{"Invoices.btn:New Invoice", sim::Verb::Click, ""};
    sim::Action fill{"Invoice.fld:Name", sim::Verb::Fill, "Paul"};
    sim::Action pick{"Invoice.fld:State", sim::Verb::Pick, "Sent"};

    CHECK(classify_action(select, sim::WidgetRole::MenuAction, false) == ActionClass::Menu);
    CHECK(classify_action(click, sim::WidgetRole::CrudNew, false) == ActionClass::CRUD);
    CHECK(classify_action(click, sim::WidgetRole::CrudView, false) == ActionClass::CRUD);
    CHECK(classify_action(click, sim::WidgetRole::CrudEdit, false) == ActionClass::CRUD);
    CHECK(classify_action(click, sim::WidgetRole::CrudDelete, true) == ActionClass::CRUD);
    CHECK(classify_action(fill, sim::WidgetRole::None, false) == ActionClass::Input);
    CHECK(classify_action(pick, sim::WidgetRole::None, false) == ActionClass::Input);
    CHECK(classify_action(click, sim::WidgetRole::Submit, true) == ActionClass::SaveOK);
    CHECK(classify_action(click, sim::WidgetRole::Submit, false) == ActionClass::SaveKO);
    CHECK(classify_action(click, sim::WidgetRole::FormClose, false) == ActionClass::SaveKO);
    CHECK(classify_action(click, sim::WidgetRole::ViewClose, false) == ActionClass::Other);
    CHECK(classify_action(click, sim::WidgetRole::InfoClose, false) == ActionClass::Other);
    CHECK(classify_action(click, sim::WidgetRole::TabButton, false) == ActionClass::Other);
}

TEST_CASE("a two-step episode yields one node each and one edge") {
    auto automaton = build_automaton({{ActionClass::Menu, ActionClass::CRUD}});
    CHECK(automaton.node(ActionClass::Menu) == 1);
    CHECK(automaton.node(ActionClass::CRUD) == 1);
    CHECK(automaton.edge(ActionClass::Menu, ActionClass::CRUD) == 1);
    CHECK(automaton.edge(ActionClass::CRUD, ActionClass::Menu) == 0);
}

TEST_CASE("an empty log yields an all-zero automaton") {
    auto automaton = build_automaton({});
    for (ActionClass c : kTableClasses) CHECK(automaton.node(c) == 0);
    CHECK(automaton.edge_weights.empty());
}

TEST_CASE("a menu-heavy synthetic log reproduces the requested weights") {
    // 227 episodes of [Menu, CRUD] plus 383 lone Menu episodes: the Menu
    // node weighs 610 and the Menu->CRUD edge 227
    std::vector<std::vector<ActionClass>> episodes;
    for (int i = 0; i < 227; ++i) episodes.push_back({ActionClass::Menu, ActionClass::CRUD});
    for (int i = 0; i < 383; ++i) episodes.push_back({ActionClass::Menu});
    auto automaton = build_automaton(episodes);
    CHECK(automaton.node(ActionClass::Menu) == 610);
    CHECK(automaton.edge(ActionClass::Menu, ActionClass::CRUD) == 227);
}

TEST_CASE("Other-class steps are projected out before pairing") {
    auto automaton = build_automaton(
        {{ActionClass::Menu, ActionClass::Other, ActionClass::CRUD, ActionClass::Other}});
    CHECK(automaton.node(ActionClass::Menu) == 1);
    CHECK(automaton.node(ActionClass::CRUD) == 1);
    CHECK(automaton.edge(ActionClass::Menu, ActionClass::CRUD) == 1);
    CHECK(automaton.terminal_counts.at(ActionClass::CRUD) == 1);
}

TEST_CASE("node weights equal outgoing edges plus terminal episodes") {
    // property over randomly generated episode sets
    Rng rng(77);
    const ActionClass all[] = {ActionClass::Menu,   ActionClass::CRUD,  ActionClass::Input,
                               ActionClass::SaveKO, ActionClass::SaveOK, ActionClass::Other};
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::vector<ActionClass>> episodes;
        int n_episodes = 1 + static_cast<int>(rng.uniform(20));
        for (int e = 0; e < n_episodes; ++e) {
            std::vector<ActionClass> ep;
            int len = static_cast<int>(rng.uniform(12));
            for (int i = 0; i < len; ++i) ep.push_back(all[rng.uniform(6)]);
            episodes.push_back(ep);
        }
        auto automaton = build_automaton(episodes);
        for (ActionClass c : kTableClasses) {
            long outgoing = 0;
            for (ActionClass d : kTableClasses) outgoing += automaton.edge(c, d);
            long terminal = automaton.terminal_counts.count(c)
                                ? automaton.terminal_counts.at(c)
                                : 0;
            CHECK(automaton.node(c) == outgoing + terminal);
        }
    }
}

TEST_CASE("dot output lists every class node with its weight") {
    auto automaton = build_automaton({{ActionClass::Menu, ActionClass::CRUD}});
    std::string dot = automaton_to_dot(automaton, "demo");
    CHECK(dot.find("digraph \"demo\"") != std::string::npos);
    CHECK(dot.find("Menu") != std::string::npos);
    CHECK(dot.find("Menu -> CRUD [label=\"1\"]") != std::string::npos);
}
