#include "gexplore/qmodel.hpp"

#include <algorithm>
#include <set>

#include "gexplore/types.hpp"

namespace gexplore::engine {

namespace {

// Canonical description of one widget for the abstraction: concrete text
// is collapsed to empty / non-empty.
std::string widget_abstract(const sim::Widget& w) {
    std::string s = sim::to_string(w.kind);
    s += '\x1f';
    s += w.title;
    s += '\x1f';
    s += sim::to_string(w.state);
    s += '\x1f';
    bool empty = w.value.empty() && w.marked.empty();
    s += empty ? "empty" : "non-empty";
    return s;
}

} // namespace

AbstractStateId abstract_state(const sim::GuiState& gui) {
    std::vector<std::string> parts;
    parts.reserve(gui.windows.size() + gui.widgets.size());
    for (const auto& w : gui.windows) parts.push_back(widget_abstract(w));
    for (const auto& w : gui.widgets) parts.push_back(widget_abstract(w));
    std::sort(parts.begin(), parts.end());
    std::string canon = gui.foreground().title;
    canon += '\x1e';
    for (const auto& p : parts) {
        canon += p;
        canon += '\x1e';
    }
    return {fnv1a(canon)};
}

namespace {

void widget_ptrs_by_id(const sim::GuiState& gui, std::vector<const sim::Widget*>& out) {
    out.reserve(gui.windows.size() + gui.widgets.size());
    for (const auto& w : gui.windows) out.push_back(&w);
    for (const auto& w : gui.widgets) out.push_back(&w);
    std::sort(out.begin(), out.end(),
              [](const sim::Widget* a, const sim::Widget* b) { return a->id < b->id; });
}

} // namespace

double gui_diff_fraction(const sim::GuiState& prev, const sim::GuiState& next) {
    std::vector<const sim::Widget*> a, b;
    widget_ptrs_by_id(prev, a);
    widget_ptrs_by_id(next, b);
    std::size_t differing = 0, union_size = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        ++union_size;
        if (i == a.size()) {
            ++differing;
            ++j;
        } else if (j == b.size()) {
            ++differing;
            ++i;
        } else if (a[i]->id < b[j]->id) {
            ++differing;
            ++i;
        } else if (b[j]->id < a[i]->id) {
            ++differing;
            ++j;
        } else {
            if (!a[i]->same_content(*b[j])) ++differing;
            ++i;
            ++j;
        }
    }
    if (union_size == 0) return 0.0;
    return static_cast<double>(differing) / static_cast<double>(union_size);
}

double QModel::q_value(AbstractStateId s, const std::string& signature) const {
    auto it = transitions.find({s, signature});
    return it == transitions.end() ? 0.0 : it->second.q;
}

double QModel::max_q(AbstractStateId s) const {
    double best = 0.0;
    // transitions are keyed by (state, signature); scan the state's range
    auto it = transitions.lower_bound({s, ""});
    for (; it != transitions.end() && it->first.first == s; ++it)
        best = std::max(best, it->second.q);
    return best;
}

double reward(const sim::GuiState& prev, const sim::GuiState& next, const QModel& model) {
    double novelty = model.knows(abstract_state(next)) ? 0.5 : 1.0;
    return novelty * gui_diff_fraction(prev, next);
}

void q_update(QModel& model, AbstractStateId s, const std::string& action_signature, double r,
              AbstractStateId s_next, const LearningParams& params) {
    model.states.insert(s);
    model.states.insert(s_next);
    auto& tr = model.transitions[{s, action_signature}];
    tr.to = s_next;
    tr.visit_count += 1;
    double target = r + params.gamma * model.max_q(s_next);
    tr.q = tr.q + params.alpha * (target - tr.q);
}

sim::Action epsilon_greedy_select(const QModel& model, AbstractStateId state,
                                  const std::vector<sim::Action>& candidates, double epsilon,
                                  Rng& rng) {
    if (candidates.empty()) throw Error("epsilon-greedy selection over an empty candidate list");
    if (!model.knows(state) || rng.bernoulli(epsilon))
        return candidates[rng.uniform(candidates.size())];
    // exploit: highest Q, ties broken by lowest signature
    const sim::Action* best = nullptr;
    std::string best_sig;
    double best_q = 0.0;
    for (const auto& a : candidates) {
        std::string sig = sim::action_signature(a);
        double q = model.q_value(state, sig);
        if (!best || q > best_q || (q == best_q && sig < best_sig)) {
            best = &a;
            best_sig = sig;
            best_q = q;
        }
    }
    return *best;
}

} // namespace gexplore::engine
