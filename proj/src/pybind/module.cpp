#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "gexplore/experiment.hpp"
#include "gexplore/presets.hpp"
#include "gexplore/report.hpp"
#include "gexplore/stats.hpp"

namespace py = pybind11;
using namespace gexplore;

namespace {

sim::AppSpec app_from_ref(const std::string& ref) {
    if (presets::is_app_preset(ref)) return presets::app_by_name(ref);
    return sim::load_app_spec(ref);
}

catalog::Catalog catalog_from_ref(const std::string& ref) {
    if (presets::is_app_preset(ref)) return presets::catalog_by_name(ref);
    return catalog::load_catalog(ref).catalog;
}

py::dict coverage_to_dict(const plan::CoverageResult& cov) {
    py::dict areas;
    for (const auto& [name, a] : cov.areas) {
        py::dict d;
        d["objectives"] = a.objectives;
        d["satisfied"] = a.satisfied;
        d["reached_checks"] = a.reached_checks;
        d["verifiable"] = a.verifiable;
        d["verified"] = a.verified;
        areas[name.c_str()] = d;
    }
    py::dict out;
    out["areas"] = areas;
    out["objectives"] = cov.total.objectives;
    out["satisfied"] = cov.total.satisfied;
    out["reached_checks"] = cov.total.reached_checks;
    out["verified"] = cov.total.verified;
    out["percent_satisfied"] = cov.percent_satisfied();
    out["percent_verified"] = cov.percent_verified();
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "GUI exploration test generator for menu-driven business applications";

    py::register_exception<gexplore::Error>(m, "GexploreError");

    py::enum_<engine::Strategy>(m, "Strategy")
        .value("RLS", engine::Strategy::RLS)
        .value("SSRLS_PARTITIONING", engine::Strategy::SSRLS_Partitioning)
        .value("SSRLS_FILLFORMS", engine::Strategy::SSRLS_FillForms)
        .value("SSRLS", engine::Strategy::SSRLS);

    py::class_<engine::ExplorerConfig>(m, "ExplorerConfig")
        .def(py::init<>())
        .def_readwrite("epsilon", &engine::ExplorerConfig::epsilon)
        .def_readwrite("p_complex", &engine::ExplorerConfig::p_complex)
        .def_readwrite("pi", &engine::ExplorerConfig::pi)
        .def_readwrite("episodes", &engine::ExplorerConfig::episodes)
        .def_readwrite("actions_per_episode", &engine::ExplorerConfig::actions_per_episode)
        .def_readwrite("alpha", &engine::ExplorerConfig::alpha)
        .def_readwrite("gamma", &engine::ExplorerConfig::gamma)
        .def_readwrite("strategy", &engine::ExplorerConfig::strategy)
        .def_readwrite("seed", &engine::ExplorerConfig::seed);

    // the simulated application, driven action by action
    py::class_<sim::WorldState>(m, "World")
        .def(py::init([](const std::string& app_ref) { return sim::build_app(app_from_ref(app_ref)); }),
             py::arg("app") = "desk")
        .def("enabled_actions",
             [](const sim::WorldState& w) {
                 std::vector<std::string> out;
                 for (const auto& a : sim::enabled_actions(w))
                     out.push_back(sim::action_signature(a));
                 return out;
             })
        .def("execute",
             [](sim::WorldState& w, const std::string& signature) {
                 auto events = sim::execute(w, sim::parse_action_signature(signature));
                 std::vector<std::string> entries;
                 for (const auto& ev : events) {
                     if (const auto* c = std::get_if<sim::GuiChange>(&ev))
                         if (c->kind == sim::GuiChange::Kind::Disappeared) continue;
                     entries.push_back(report::format_output_entry(ev).text);
                 }
                 return entries;
             },
             py::arg("signature"))
        .def("drain_change_log",
             [](sim::WorldState& w) {
                 std::vector<std::string> out;
                 for (const auto& ev : sim::drain_change_log(w))
                     out.push_back(report::format_output_entry(sim::OutputEvent(ev)).text);
                 return out;
             })
        .def("canonical_text", [](const sim::WorldState& w) { return sim::canonical_text(w); })
        .def("is_input_form", [](const sim::WorldState& w) { return sim::render_gui(w).is_input_form; });

    m.def(
        "run_strategy",
        [](const std::string& app, const engine::ExplorerConfig& cfg) {
            engine::RunResult run =
                engine::run_strategy(app_from_ref(app), catalog_from_ref(app), cfg, app, app);
            py::dict out;
            out["episodes"] = run.tests.size();
            out["divergences"] = run.log.divergences;
            out["runlog"] = engine::runlog_to_text(run.log);
            std::map<std::string, long> counts;
            for (const auto& s : run.log.steps)
                if (s.index >= 0) counts[classify::to_string(s.cls)] += 1;
            out["class_counts"] = counts;
            return out;
        },
        py::arg("app"), py::arg("config"),
        "Run one exploration strategy and return its runlog and class counts");

    m.def(
        "generate_report",
        [](const std::string& app, const engine::ExplorerConfig& cfg,
           const std::filesystem::path& out_dir) {
            sim::AppSpec spec = app_from_ref(app);
            engine::RunResult run =
                engine::run_strategy(spec, catalog_from_ref(app), cfg, app, app);
            report::GeneratedReport rep = report::generate_report(run.tests, spec);
            report::render(rep, out_dir);
            std::vector<std::tuple<std::string, std::vector<std::string>, std::vector<std::string>>>
                rows;
            for (const auto& t : rep.tests)
                for (const auto& r : t.rows) {
                    std::vector<std::string> outputs;
                    for (const auto& e : r.outputs) outputs.push_back(e.text);
                    rows.emplace_back(r.id, r.actions, outputs);
                }
            return rows;
        },
        py::arg("app"), py::arg("config"), py::arg("out_dir"),
        "Run a strategy, render its browsable report and return the rows");

    m.def(
        "verify_plan",
        [](const std::string& app, const engine::ExplorerConfig& cfg) {
            sim::AppSpec spec = app_from_ref(app);
            engine::RunResult run =
                engine::run_strategy(spec, catalog_from_ref(app), cfg, app, app);
            auto objectives = presets::plan_by_name(app);
            plan::CoverageResult cov = plan::verify_oracles(objectives, run.tests, spec);
            plan::TriageSummary t = plan::triage(objectives, cov);
            py::dict out = coverage_to_dict(cov);
            out["triage"] =
                py::make_tuple(t.manual_design, t.manual_replay, t.browsed);
            return out;
        },
        py::arg("app"), py::arg("config"),
        "Run a strategy and check the preset test plan against it");

    m.def(
        "run_experiment",
        [](const std::string& app, int repetitions, std::uint64_t seed,
           const engine::ExplorerConfig& base, const std::filesystem::path& out_dir) {
            experiment::ExperimentConfig cfg;
            cfg.app_preset = app;
            cfg.repetitions = repetitions;
            cfg.seed = seed;
            cfg.base = base;
            cfg.out_dir = out_dir;
            experiment::ExperimentResult result = experiment::run_experiment(cfg);
            py::dict out;
            py::dict freq;
            for (const auto& [strategy, st] : result.stats) {
                py::dict per_class;
                for (const auto& [cls, ms] : st.mean_stddev)
                    per_class[classify::to_string(cls)] = py::make_tuple(ms.first, ms.second);
                freq[engine::to_string(strategy)] = per_class;
            }
            out["frequencies"] = freq;
            py::dict wx;
            for (const auto& [strategy, per_class] : result.wilcoxon_vs_rls) {
                py::dict d;
                for (const auto& [cls, p] : per_class) d[classify::to_string(cls)] = p;
                wx[engine::to_string(strategy)] = d;
            }
            out["wilcoxon_vs_rls"] = wx;
            return out;
        },
        py::arg("app") = "desk", py::arg("repetitions") = 5, py::arg("seed") = 1,
        py::arg("config") = engine::ExplorerConfig{}, py::arg("out_dir") = "out",
        "Run the full multi-strategy experiment and write all artifacts");

    m.def("wilcoxon_paired_one_tail", &stats::wilcoxon_paired_one_tail, py::arg("x"),
          py::arg("y"), "Exact one-tailed paired signed-rank test (alternative: y > x)");
    m.def("summarize", &stats::summarize, py::arg("values"),
          "Mean and sample standard deviation");
    m.def("parse_output_entry", [](const std::string& text) -> py::object {
        auto parsed = report::parse_output_entry(text);
        if (!parsed) return py::none();
        py::dict d;
        d["kind"] = parsed->kind;
        for (const auto& [k, v] : parsed->fields) d[k.c_str()] = v;
        return d;
    });
    m.def("app_presets", [] { return std::vector<std::string>{"desk", "erp-like", "invoice-demo"}; });
}
