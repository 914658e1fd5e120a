#include "gexplore/engine.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gexplore::engine {

const char* to_string(Strategy s) {
    switch (s) {
    case Strategy::RLS: return "RLS";
    case Strategy::SSRLS_Partitioning: return "SSRLS-partitioning";
    case Strategy::SSRLS_FillForms: return "SSRLS-fillForms";
    case Strategy::SSRLS: return "SSRLS";
    }
    return "?";
}

std::optional<Strategy> strategy_from_string(const std::string& s) {
    std::string k = s;
    std::transform(k.begin(), k.end(), k.begin(), [](unsigned char c) { return std::tolower(c); });
    if (k == "rls") return Strategy::RLS;
    if (k == "ssrls-partitioning" || k == "ssrls_partitioning") return Strategy::SSRLS_Partitioning;
    if (k == "ssrls-fillforms" || k == "ssrls_fillforms") return Strategy::SSRLS_FillForms;
    if (k == "ssrls") return Strategy::SSRLS;
    return std::nullopt;
}

bool uses_partitioning(Strategy s) {
    return s == Strategy::SSRLS_Partitioning || s == Strategy::SSRLS;
}

bool uses_fill_forms(Strategy s) {
    return s == Strategy::SSRLS_FillForms || s == Strategy::SSRLS;
}

void ExplorerConfig::validate() const {
    auto in01 = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!in01(epsilon)) throw ValidationError("epsilon must be in [0,1]");
    if (!in01(p_complex)) throw ValidationError("p_complex must be in [0,1]");
    if (!in01(pi)) throw ValidationError("pi must be in [0,1]");
    if (episodes < 0) throw ValidationError("episodes must be >= 0");
    if (actions_per_episode < 0) throw ValidationError("actions_per_episode must be >= 0");
    if (alpha <= 0.0 || alpha > 1.0) throw ValidationError("alpha must be in (0,1]");
    if (gamma < 0.0 || gamma >= 1.0) throw ValidationError("gamma must be in [0,1)");
}

namespace {

bool is_menu_widget_id(const std::string& widget_id) {
    return widget_id.rfind("menu:", 0) == 0;
}

bool action_enabled(const sim::WorldState& world, const sim::Action& action) {
    for (const auto& a : sim::enabled_actions(world)) {
        if (a.widget_id != action.widget_id || a.verb != action.verb) continue;
        if (action.verb == sim::Verb::Fill || a.value == action.value) return true;
    }
    return false;
}

sim::WidgetRole role_of(const sim::GuiState& gui, const std::string& widget_id) {
    auto w = sim::find_widget(gui, widget_id);
    return w ? w->role : sim::WidgetRole::None;
}

bool has_db_event(const std::vector<sim::OutputEvent>& events) {
    for (const auto& ev : events)
        if (std::holds_alternative<sim::DbChangeEvent>(ev)) return true;
    return false;
}

// Shared episode machinery: executes actions, maintains the model, the
// witness paths, the step records and the current rendered snapshot.
struct EpisodeContext {
    sim::WorldState& world;
    QModel& model;
    const catalog::Catalog& cat;
    const ExplorerConfig& cfg;
    Rng& rng;
    int episode;
    std::vector<StepRecord>& steps;
    std::vector<WitnessStep> path_from_reset;
    sim::GuiState cur_gui;
    AbstractStateId cur_id;

    void sync() {
        cur_gui = sim::render_gui(world);
        cur_id = abstract_state(cur_gui);
    }

    StepRecord exec_one(const sim::Action& action, int index, bool learn) {
        AbstractStateId from = cur_id;
        sim::WidgetRole target_role = role_of(cur_gui, action.widget_id);
        std::size_t before_count = cur_gui.windows.size() + cur_gui.widgets.size();
        sim::GuiState after;
        auto events = sim::execute(world, action, cur_gui, after);
        AbstractStateId to = abstract_state(after);

        // reward = novelty factor x widget diff fraction; the event list
        // already enumerates exactly the differing widgets
        std::size_t gui_changes = 0, appeared = 0;
        for (const auto& ev : events) {
            if (const auto* change = std::get_if<sim::GuiChange>(&ev)) {
                ++gui_changes;
                if (change->kind == sim::GuiChange::Kind::Appeared) ++appeared;
            }
        }
        std::size_t union_size = before_count + appeared;
        double fraction =
            union_size == 0 ? 0.0
                            : static_cast<double>(gui_changes) / static_cast<double>(union_size);
        bool novel = !model.knows(to);
        double r = (novel ? 1.0 : 0.5) * fraction;

        if (learn) q_update(model, from, sim::action_signature(action), r, to, cfg.learning());
        path_from_reset.push_back({action, to});
        if (learn && novel) model.witness_paths[to] = path_from_reset;

        StepRecord rec;
        rec.episode = episode;
        rec.index = index;
        rec.action = action;
        rec.signature = sim::action_signature(action);
        rec.cls = classify::classify_action(action, target_role, has_db_event(events));
        rec.reward = r;
        rec.from = from;
        rec.to = to;
        rec.events = std::move(events);
        steps.push_back(rec);
        cur_gui = std::move(after);
        cur_id = to;
        return rec;
    }

    // Candidates with fill values materialized from the catalog, with
    // menu actions removed when the partitioning constraint is active.
    std::vector<sim::Action> candidates(bool menus_disabled) {
        std::vector<sim::Action> out;
        for (auto a : sim::enabled_actions(world, cur_gui)) {
            if (menus_disabled && is_menu_widget_id(a.widget_id)) continue;
            if (a.verb == sim::Verb::Fill) {
                auto w = sim::find_widget(cur_gui, a.widget_id);
                a.value = catalog::lookup(cat, *w, rng);
            }
            out.push_back(std::move(a));
        }
        return out;
    }
};

sim::Action pick_entity_menu(EpisodeContext& ctx) {
    std::vector<sim::Action> menus;
    for (const auto& a : sim::enabled_actions(ctx.world, ctx.cur_gui)) {
        if (!is_menu_widget_id(a.widget_id)) continue;
        auto w = sim::find_widget(ctx.cur_gui, a.widget_id);
        // restrict the forced first action to menus that open functional
        // areas; decoys would strand a partitioned episode
        bool is_entity = false;
        for (const auto& e : ctx.world.spec.entity_types)
            if (e.name == w->title) is_entity = true;
        if (is_entity) menus.push_back(a);
    }
    return epsilon_greedy_select(ctx.model, ctx.cur_id, menus, ctx.cfg.epsilon, ctx.rng);
}

TestCase run_episode_impl(const WorldFactory& factory, QModel& model,
                          const catalog::Catalog& cat, const ExplorerConfig& cfg, Rng& rng,
                          int episode_number, int* divergences, bool partitioning,
                          bool fillforms) {
    TestCase tc;
    tc.id = "T" + std::to_string(episode_number);
    tc.strategy = cfg.strategy;
    tc.seed = cfg.seed;

    RandomStartResult start = go_to_random_state(model, factory, rng);
    if (start.diverged && divergences) ++*divergences;

    sim::WorldState world = std::move(start.world);
    EpisodeContext ctx{world, model, cat, cfg, rng, episode_number, tc.steps, {}, {}, {}};

    // prefix steps enter the test case with negative indices
    int p = static_cast<int>(start.prefix.size());
    for (std::size_t i = 0; i < start.prefix.size(); ++i) {
        StepRecord rec = start.prefix[i];
        rec.episode = episode_number;
        rec.index = -(p - static_cast<int>(i));
        tc.steps.push_back(rec);
        ctx.path_from_reset.push_back({rec.action, rec.to});
    }
    ctx.sync();

    if (model.states.empty()) {
        model.initial = ctx.cur_id;
        model.states.insert(model.initial);
        model.witness_paths[model.initial] = {};
    }

    if (partitioning) {
        bool menu_done = std::any_of(tc.steps.begin(), tc.steps.end(), [](const StepRecord& s) {
            return s.cls == classify::ActionClass::Menu;
        });
        if (!menu_done) {
            sim::Action menu = pick_entity_menu(ctx);
            ctx.exec_one(menu, 0, true);
        }
    }

    int used = 0;
    int index = 1;
    while (used < cfg.actions_per_episode) {
        if (fillforms && ctx.cur_gui.is_input_form && rng.bernoulli(cfg.pi)) {
            // fill and submit the input form; every primitive action
            // counts against the budget, and the block always completes
            int before = index;
            fill_and_submit_observed(world, cat, rng,
                                     [&](const sim::Action& a) { ctx.exec_one(a, index++, true); });
            used += index - before;
            continue;
        }
        auto cands = ctx.candidates(partitioning);
        if (cands.empty())
            throw Error("episode " + tc.id +
                        ": no executable non-menu actions in the current state");
        sim::Action a = epsilon_greedy_select(model, ctx.cur_id, cands, cfg.epsilon, rng);
        ctx.exec_one(a, index++, true);
        ++used;
    }
    return tc;
}

} // namespace

// Internal variant of fill_and_submit that routes every primitive action
// through the caller (the engine needs to learn on each one).
void fill_and_submit_observed(sim::WorldState& world, const catalog::Catalog& cat, Rng& rng,
                              const std::function<void(const sim::Action&)>& run_action) {
    sim::GuiState gui = sim::render_gui(world);
    if (!gui.is_input_form)
        throw PreconditionError("fill_and_submit: foreground window is not an input form");
    const sim::EntityTypeSpec* entity = nullptr;
    for (const auto& e : world.spec.entity_types)
        if (world.form && e.name == world.form->entity) entity = &e;
    if (!entity) throw PreconditionError("fill_and_submit: no open form session");

    auto field_value = [&](const std::string& label) {
        for (const auto& [l, v] : world.form->values)
            if (l == label) return v;
        return std::string();
    };

    for (int tab = 0; tab < entity->tabs; ++tab) {
        // work out whether this tab needs anything before clicking into it
        std::vector<const sim::FieldSpec*> work;
        for (const auto& f : entity->fields) {
            if (f.tab != tab || f.readonly) continue;
            bool choice = f.kind == sim::ValueKind::List || f.kind == sim::ValueKind::Combo;
            if (choice && !field_value(f.label).empty()) continue; // keep the selection
            work.push_back(&f);
        }
        if (work.empty()) continue;
        if (world.form->active_tab != tab) {
            sim::Action tab_click{entity->singular + ".tab:Tab " + std::to_string(tab + 1),
                                  sim::Verb::Click, ""};
            run_action(tab_click);
        }
        for (const auto* f : work) {
            sim::Action a;
            a.widget_id = entity->singular + ".fld:" + f->label;
            bool choice = f->kind == sim::ValueKind::List || f->kind == sim::ValueKind::Combo;
            if (choice) {
                a.verb = sim::Verb::Pick;
                sim::Widget w;
                w.title = f->label;
                std::string v = catalog::lookup(cat, w, rng);
                bool known = std::find(f->possible_values.begin(), f->possible_values.end(), v) !=
                             f->possible_values.end();
                a.value = known ? v : f->possible_values.front();
            } else {
                a.verb = sim::Verb::Fill;
                sim::Widget w;
                w.title = f->label;
                a.value = catalog::lookup(cat, w, rng);
            }
            run_action(a);
        }
    }
    sim::Action save{entity->singular + ".btn:Save", sim::Verb::Click, ""};
    run_action(save);
}

std::vector<std::pair<sim::Action, std::vector<sim::OutputEvent>>> fill_and_submit(
    sim::WorldState& world, const catalog::Catalog& cat, Rng& rng) {
    std::vector<std::pair<sim::Action, std::vector<sim::OutputEvent>>> out;
    fill_and_submit_observed(world, cat, rng, [&](const sim::Action& a) {
        auto events = sim::execute(world, a);
        out.emplace_back(a, std::move(events));
    });
    return out;
}

bool maybe_complex_action(const sim::WorldState& world, const ExplorerConfig& cfg, Rng& rng) {
    if (!sim::render_gui(world).is_input_form) return false;
    return rng.bernoulli(cfg.p_complex);
}

RandomStartResult go_to_random_state(const QModel& model, const WorldFactory& factory, Rng& rng) {
    RandomStartResult result{factory(), {}, false};
    if (model.states.empty()) return result;

    // Random start, stratified by the menu partition the state belongs to
    // (the last menu action of its witness path). Sampling states uniformly
    // would concentrate episodes in whichever partition grew the most
    // states first; stratification keeps the generated suite spread over
    // the graphical menus.
    std::map<std::string, std::vector<AbstractStateId>> strata;
    for (const auto& [state, path] : model.witness_paths) {
        if (!model.states.count(state)) continue;
        std::string key;
        for (const auto& step : path)
            if (is_menu_widget_id(step.action.widget_id)) key = step.action.widget_id;
        strata[key].push_back(state);
    }
    if (strata.empty()) return result;
    auto sit = strata.begin();
    std::advance(sit, static_cast<long>(rng.uniform(strata.size())));
    AbstractStateId target = sit->second[rng.uniform(sit->second.size())];
    auto wit = model.witness_paths.find(target);
    if (wit == model.witness_paths.end()) {
        // unreachable by construction; treat as a divergence
        result.diverged = true;
        return result;
    }
    for (const auto& step : wit->second) {
        if (!action_enabled(result.world, step.action)) {
            result = {factory(), {}, true};
            return result;
        }
        sim::GuiState before = sim::render_gui(result.world);
        sim::WidgetRole target_role = role_of(before, step.action.widget_id);
        sim::GuiState after;
        auto events = sim::execute(result.world, step.action, before, after);
        AbstractStateId to = abstract_state(after);
        StepRecord rec;
        rec.action = step.action;
        rec.signature = sim::action_signature(step.action);
        rec.cls = classify::classify_action(step.action, target_role, has_db_event(events));
        rec.reward = reward(before, after, model);
        rec.from = abstract_state(before);
        rec.to = to;
        rec.events = std::move(events);
        result.prefix.push_back(std::move(rec));
        if (to != step.expect) {
            result = {factory(), {}, true};
            return result;
        }
    }
    return result;
}

TestCase run_episode_rls(const WorldFactory& factory, QModel& model,
                         const catalog::Catalog& cat, const ExplorerConfig& cfg, Rng& rng,
                         int episode_number, int* divergences) {
    return run_episode_impl(factory, model, cat, cfg, rng, episode_number, divergences, false,
                            false);
}

TestCase run_episode_ssrls(const WorldFactory& factory, QModel& model,
                           const catalog::Catalog& cat, const ExplorerConfig& cfg, Rng& rng,
                           int episode_number, int* divergences) {
    if (cfg.strategy == Strategy::RLS)
        throw PreconditionError("run_episode_ssrls requires a non-RLS strategy");
    return run_episode_impl(factory, model, cat, cfg, rng, episode_number, divergences,
                            uses_partitioning(cfg.strategy), uses_fill_forms(cfg.strategy));
}

RunResult run_strategy(const sim::AppSpec& app_spec, const catalog::Catalog& cat,
                       const ExplorerConfig& cfg, const std::string& app_ref,
                       const std::string& catalog_ref) {
    cfg.validate();
    app_spec.validate();
    RunResult result;
    result.log.strategy = cfg.strategy;
    result.log.seed = cfg.seed;
    result.log.config = cfg;
    result.log.app_ref = app_ref;
    result.log.catalog_ref = catalog_ref;

    Rng rng(cfg.seed);
    WorldFactory factory = [&app_spec] { return sim::build_app(app_spec); };
    int divergences = 0;
    for (int ep = 1; ep <= cfg.episodes; ++ep) {
        TestCase tc = cfg.strategy == Strategy::RLS
                          ? run_episode_rls(factory, result.model, cat, cfg, rng, ep, &divergences)
                          : run_episode_ssrls(factory, result.model, cat, cfg, rng, ep,
                                              &divergences);
        for (const auto& s : tc.steps) result.log.steps.push_back(s);
        result.tests.push_back(std::move(tc));
    }
    result.log.divergences = divergences;
    return result;
}

namespace {

std::string format_reward(double r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", r);
    return buf;
}

} // namespace

std::string runlog_to_text(const RunLog& log) {
    std::ostringstream os;
    os << "# gexplore runlog v1\n";
    os << "# strategy=" << to_string(log.strategy) << "\n";
    os << "# seed=" << log.seed << "\n";
    os << "# episodes=" << log.config.episodes << "\n";
    os << "# actions_per_episode=" << log.config.actions_per_episode << "\n";
    os << "# epsilon=" << format_reward(log.config.epsilon) << "\n";
    os << "# p_complex=" << format_reward(log.config.p_complex) << "\n";
    os << "# pi=" << format_reward(log.config.pi) << "\n";
    os << "# alpha=" << format_reward(log.config.alpha) << "\n";
    os << "# gamma=" << format_reward(log.config.gamma) << "\n";
    os << "# app=" << log.app_ref << "\n";
    os << "# catalog=" << log.catalog_ref << "\n";
    os << "# divergences=" << log.divergences << "\n";
    for (const auto& s : log.steps) {
        os << s.episode << '\t' << s.index << '\t' << s.signature << '\t'
           << classify::to_string(s.cls) << '\t' << format_reward(s.reward) << '\n';
    }
    return os.str();
}

void save_runlog(const RunLog& log, const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write runlog: " + path.string());
    out << runlog_to_text(log);
}

RunLogHeader parse_runlog_header(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open runlog: " + path.string());
    RunLogHeader h;
    std::string line;
    bool seen_magic = false;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) != 0) break;
        std::string body = line.substr(2);
        if (body == "gexplore runlog v1") {
            seen_magic = true;
            continue;
        }
        auto eq = body.find('=');
        if (eq == std::string::npos) continue;
        std::string key = body.substr(0, eq);
        std::string value = body.substr(eq + 1);
        if (key == "strategy") {
            auto s = strategy_from_string(value);
            if (!s) throw ParseError("runlog " + path.string() + ": unknown strategy " + value);
            h.strategy = *s;
            h.config.strategy = *s;
        } else if (key == "seed") {
            h.seed = std::stoull(value);
            h.config.seed = h.seed;
        } else if (key == "episodes") {
            h.config.episodes = std::stoi(value);
        } else if (key == "actions_per_episode") {
            h.config.actions_per_episode = std::stoi(value);
        } else if (key == "epsilon") {
            h.config.epsilon = std::stod(value);
        } else if (key == "p_complex") {
            h.config.p_complex = std::stod(value);
        } else if (key == "pi") {
            h.config.pi = std::stod(value);
        } else if (key == "alpha") {
            h.config.alpha = std::stod(value);
        } else if (key == "gamma") {
            h.config.gamma = std::stod(value);
        } else if (key == "app") {
            h.app_ref = value;
        } else if (key == "catalog") {
            h.catalog_ref = value;
        } else if (key == "divergences") {
            h.divergences = std::stoi(value);
        }
    }
    if (!seen_magic) throw ParseError("runlog " + path.string() + ": missing header");
    return h;
}

std::vector<TestCase> replay_runlog(const std::filesystem::path& path,
                                    const sim::AppSpec& app_spec, const catalog::Catalog& cat) {
    RunLogHeader h = parse_runlog_header(path);
    RunResult rerun = run_strategy(app_spec, cat, h.config, h.app_ref, h.catalog_ref);

    // the log must match the deterministic replay line for line
    std::ifstream in(path);
    std::string line;
    std::size_t i = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.rfind("# ", 0) == 0 || line.empty()) continue;
        if (i >= rerun.log.steps.size())
            throw Error("runlog " + path.string() + ": more steps than the deterministic replay");
        const StepRecord& s = rerun.log.steps[i++];
        std::string expect = std::to_string(s.episode) + '\t' + std::to_string(s.index) + '\t' +
                             s.signature + '\t' + classify::to_string(s.cls) + '\t' +
                             format_reward(s.reward);
        if (line != expect)
            throw Error("runlog " + path.string() + ": step " + std::to_string(i) +
                        " does not match the deterministic replay");
    }
    if (i != rerun.log.steps.size())
        throw Error("runlog " + path.string() + ": fewer steps than the deterministic replay");
    return rerun.tests;
}

bool satisfies_partitioning(const std::vector<StepRecord>& steps) {
    int menu_count = 0;
    bool non_menu_seen = false;
    for (const auto& s : steps) {
        if (s.cls == classify::ActionClass::Menu) {
            ++menu_count;
            if (non_menu_seen) return false;
        } else {
            non_menu_seen = true;
        }
    }
    return menu_count <= 1;
}

bool witness_satisfies_partitioning(const QModel& model, const sim::AppSpec&) {
    for (const auto& [state, path] : model.witness_paths) {
        int menus = 0;
        bool non_menu_seen = false;
        for (const auto& step : path) {
            if (is_menu_widget_id(step.action.widget_id)) {
                ++menus;
                if (non_menu_seen) return false;
            } else {
                non_menu_seen = true;
            }
        }
        if (menus > 1) return false;
    }
    return true;
}

} // namespace gexplore::engine
