#include <doctest.h>

#include <map>

#include "gexplore/presets.hpp"
#include "gexplore/qmodel.hpp"
#include "gexplore/simulator.hpp"
#include "gexplore/stats.hpp"

using namespace gexplore;
using namespace gexplore::engine;

namespace {

sim::Widget make_widget(const std::string& id, const std::string& value = "") {
    sim::Widget w;
    w.id = id;
    w.kind = sim::WidgetKind::TextField;
    w.title = id;
    w.state = sim::WidgetState::Editable;
    w.value = value;
    w.window = "W";
    return w;
}

sim::GuiState make_gui(const std::vector<sim::Widget>& widgets) {
    sim::GuiState gui;
    sim::Widget win;
    win.id = "win:W";
    win.kind = sim::WidgetKind::Window;
    win.title = "W";
    win.state = sim::WidgetState::Foreground;
    win.window = "W";
    gui.windows = {win};
    gui.widgets = widgets;
    return gui;
}

sim::WorldState invoice_form_world(const std::string& name_value) {
    sim::WorldState world = sim::build_app(presets::invoice_demo_app());
    sim::execute(world, {"menu:Invoices", sim::Verb::Select, ""});
    sim::execute(world, {"Invoices.btn:New Invoice", sim::Verb::Click, ""});
    if (!name_value.empty())
        sim::execute(world, {"Invoice.fld:Client Data - Name", sim::Verb::Fill, name_value});
    return world;
}

// chi-squared upper critical values at p = 0.01
double chi2_crit(int df) {
    static const std::map<int, double> table = {
        {1, 6.635}, {2, 9.210}, {3, 11.345}, {4, 13.277}, {5, 15.086}, {9, 21.666}};
    return table.at(df);
}

} // namespace

TEST_CASE("abstract state is a pure function of the snapshot") {
    sim::WorldState world = sim::build_app(presets::desk_app());
    sim::GuiState gui = sim::render_gui(world);
    CHECK(abstract_state(gui) == abstract_state(gui));
    CHECK(abstract_state(gui) == abstract_state(sim::render_gui(world)));
}

TEST_CASE("concrete field text collapses to the value class") {
    sim::WorldState paul = invoice_form_world("Paul");
    sim::WorldState anna = invoice_form_world("Anna");
    sim::WorldState empty = invoice_form_world("");
    AbstractStateId p = abstract_state(sim::render_gui(paul));
    AbstractStateId a = abstract_state(sim::render_gui(anna));
    AbstractStateId e = abstract_state(sim::render_gui(empty));
    CHECK(p == a);  // both non-empty
    CHECK(p != e);  // empty differs from filled
}

TEST_CASE("reward follows the widget diff fraction") {
    QModel model;
    SUBCASE("identical snapshots give zero") {
        auto gui = make_gui({make_widget("a"), make_widget("b")});
        CHECK(reward(gui, gui, model) == 0.0);
    }
    SUBCASE("disjoint widget sets and an unseen successor give one") {
        auto prev = make_gui({make_widget("a")});
        auto next = make_gui({make_widget("b")});
        // the shared window widget is part of the union; replace it too
        next.windows[0].title = "V";
        next.windows[0].id = "win:V";
        next.windows[0].window = "V";
        CHECK(reward(prev, next, model) == 1.0);
    }
    SUBCASE("four kept widgets plus two added give 2/6") {
        // the window counts as a widget, so three fields + one window kept
        auto prev = make_gui({make_widget("a"), make_widget("b"), make_widget("c")});
        auto next =
            make_gui({make_widget("a"), make_widget("b"), make_widget("c"), make_widget("d"),
                      make_widget("e")});
        CHECK(reward(prev, next, model) == doctest::Approx(2.0 / 6.0));
        CHECK(gui_diff_fraction(prev, next) == doctest::Approx(2.0 / 6.0));
    }
    SUBCASE("already seen successors are halved") {
        auto prev = make_gui({make_widget("a"), make_widget("b"), make_widget("c")});
        auto next =
            make_gui({make_widget("a"), make_widget("b"), make_widget("c"), make_widget("d"),
                      make_widget("e")});
        model.states.insert(abstract_state(next));
        CHECK(reward(prev, next, model) == doctest::Approx(1.0 / 6.0));
    }
    SUBCASE("the diff fraction is symmetric") {
        auto a = make_gui({make_widget("a"), make_widget("b")});
        auto b = make_gui({make_widget("b"), make_widget("c"), make_widget("d")});
        CHECK(gui_diff_fraction(a, b) == gui_diff_fraction(b, a));
    }
}

TEST_CASE("q-learning update rule") {
    LearningParams params;
    AbstractStateId s{1}, next{2};
    SUBCASE("alpha 1 and gamma 0 collapse to assignment") {
        QModel model;
        model.states.insert(s);
        params.alpha = 1.0;
        params.gamma = 0.0;
        q_update(model, s, "click:a", 0.4, next, params);
        CHECK(model.q_value(s, "click:a") == doctest::Approx(0.4));
        CHECK(model.transitions.at({s, "click:a"}).visit_count == 1);
    }
    SUBCASE("bootstrapped update") {
        QModel model;
        model.states.insert(s);
        params.alpha = 0.5;
        params.gamma = 0.9;
        // seed Q(s,a)=0.4 and a successor action with Q=1
        params.alpha = 1.0;
        params.gamma = 0.0;
        q_update(model, s, "click:a", 0.4, next, params);
        q_update(model, next, "click:b", 1.0, AbstractStateId{3}, params);
        params.alpha = 0.5;
        params.gamma = 0.9;
        q_update(model, s, "click:a", 0.0, next, params);
        // Q = 0.4 + 0.5 * (0 + 0.9 * 1 - 0.4) = 0.65
        CHECK(model.q_value(s, "click:a") == doctest::Approx(0.65));
    }
    SUBCASE("zero reward over zero-valued successors is a fixed point") {
        QModel model;
        model.states.insert(s);
        q_update(model, s, "click:a", 0.0, next, params);
        double q = model.q_value(s, "click:a");
        q_update(model, s, "click:a", 0.0, next, params);
        CHECK(model.q_value(s, "click:a") == q);
        CHECK(q == 0.0);
    }
}

TEST_CASE("three-state chain: the optimal first action converges to gamma") {
    // s0 -a-> s1 -b-> s2 with reward 1 on the final transition
    QModel model;
    AbstractStateId s0{10}, s1{11}, s2{12};
    model.states.insert(s0);
    LearningParams params{1.0, 0.9};
    int updates = 0;
    for (int sweep = 0; sweep < 100 && updates < 200; ++sweep) {
        q_update(model, s0, "a", 0.0, s1, params);
        q_update(model, s1, "b", 1.0, s2, params);
        updates += 2;
        if (std::abs(model.q_value(s0, "a") - params.gamma) < 1e-6) break;
    }
    CHECK(updates <= 200);
    CHECK(model.q_value(s0, "a") == doctest::Approx(params.gamma).epsilon(1e-6));
}

TEST_CASE("epsilon-greedy selection") {
    QModel model;
    AbstractStateId s{1};
    model.states.insert(s);
    std::vector<sim::Action> candidates;
    for (char c : {'a', 'b', 'c', 'd'})
        candidates.push_back({std::string("w:") + c, sim::Verb::Click, ""});

    SUBCASE("empty candidate list is an error") {
        Rng rng(1);
        CHECK_THROWS_AS(epsilon_greedy_select(model, s, {}, 0.5, rng), Error);
    }
    SUBCASE("pure exploitation returns the argmax") {
        q_update(model, s, "click:w:a", 0.1, AbstractStateId{2}, {1.0, 0.0});
        q_update(model, s, "click:w:b", 0.9, AbstractStateId{3}, {1.0, 0.0});
        Rng rng(1);
        for (int i = 0; i < 100; ++i)
            CHECK(epsilon_greedy_select(model, s, candidates, 0.0, rng).widget_id == "w:b");
    }
    SUBCASE("argmax is invariant under a constant shift") {
        QModel shifted;
        shifted.states.insert(s);
        for (const auto& a : candidates) {
            double base = a.widget_id == "w:c" ? 0.7 : 0.2;
            model.transitions[{s, sim::action_signature(a)}] = {AbstractStateId{9}, base, 1};
            shifted.transitions[{s, sim::action_signature(a)}] = {AbstractStateId{9}, base + 5.0,
                                                                  1};
        }
        shifted.states.insert(s);
        Rng r1(2), r2(2);
        CHECK(epsilon_greedy_select(model, s, candidates, 0.0, r1).widget_id ==
              epsilon_greedy_select(shifted, s, candidates, 0.0, r2).widget_id);
    }
    SUBCASE("ties break on the lowest action signature") {
        Rng rng(1);
        CHECK(epsilon_greedy_select(model, s, candidates, 0.0, rng).widget_id == "w:a");
    }
    SUBCASE("pure exploration is uniform") {
        Rng rng(5);
        std::vector<long> counts(candidates.size(), 0);
        for (int i = 0; i < 10000; ++i) {
            auto a = epsilon_greedy_select(model, s, candidates, 1.0, rng);
            counts[static_cast<std::size_t>(a.widget_id.back() - 'a')] += 1;
        }
        CHECK(stats::chi_squared_uniform(counts) < chi2_crit(3));
    }
    SUBCASE("unknown states are explored uniformly") {
        AbstractStateId unknown{999};
        Rng rng(6);
        std::vector<long> counts(candidates.size(), 0);
        for (int i = 0; i < 10000; ++i) {
            auto a = epsilon_greedy_select(model, unknown, candidates, 0.0, rng);
            counts[static_cast<std::size_t>(a.widget_id.back() - 'a')] += 1;
        }
        CHECK(stats::chi_squared_uniform(counts) < chi2_crit(3));
    }
}
