#include "gexplore/plan.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace gexplore::plan {

const char* to_string(DataClass c) {
    switch (c) {
    case DataClass::GuiTracked: return "gui_tracked";
    case DataClass::DbTracked: return "db_tracked";
    case DataClass::GridContent: return "grid_content";
    case DataClass::GraphicalAttribute: return "graphical_attribute";
    case DataClass::DbUntracked: return "db_untracked";
    case DataClass::External: return "external";
    }
    return "?";
}

std::optional<DataClass> data_class_from_string(const std::string& s) {
    if (s == "gui_tracked") return DataClass::GuiTracked;
    if (s == "db_tracked") return DataClass::DbTracked;
    if (s == "grid_content") return DataClass::GridContent;
    if (s == "graphical_attribute") return DataClass::GraphicalAttribute;
    if (s == "db_untracked") return DataClass::DbUntracked;
    if (s == "external") return DataClass::External;
    return std::nullopt;
}

bool glob_match(const std::string& pattern, const std::string& text) {
    // iterative '*' glob
    std::size_t p = 0, t = 0, star = std::string::npos, mark = 0;
    while (t < text.size()) {
        if (p < pattern.size() && (pattern[p] == text[t])) {
            ++p;
            ++t;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = t;
        } else if (star != std::string::npos) {
            p = star + 1;
            t = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

namespace {

std::string widget_title(const std::string& widget_id) {
    auto colon = widget_id.find(':');
    return colon == std::string::npos ? widget_id : widget_id.substr(colon + 1);
}

bool step_matches(const PatternStep& ps, const engine::StepRecord& step) {
    if (ps.verb != "*" && ps.verb != sim::to_string(step.action.verb)) return false;
    if (!glob_match(ps.title_glob, widget_title(step.action.widget_id))) return false;
    if (!glob_match(ps.value_glob.empty() ? "*" : ps.value_glob, step.action.value)) return false;
    return true;
}

struct Partition {
    std::string menu; // "" before the first menu action
    std::size_t begin = 0;
    std::size_t end = 0; // exclusive
};

std::vector<Partition> menu_partitions(const engine::TestCase& test) {
    std::vector<Partition> parts;
    Partition cur{"", 0, 0};
    for (std::size_t i = 0; i < test.steps.size(); ++i) {
        const auto& s = test.steps[i];
        if (s.cls == classify::ActionClass::Menu) {
            cur.end = i;
            if (cur.end > cur.begin || !cur.menu.empty()) parts.push_back(cur);
            cur = Partition{widget_title(s.action.widget_id), i, 0};
        }
    }
    cur.end = test.steps.size();
    if (cur.end > cur.begin || !cur.menu.empty()) parts.push_back(cur);
    return parts;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_on(const std::string& s, const std::string& sep) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        auto next = s.find(sep, pos);
        if (next == std::string::npos) {
            parts.push_back(s.substr(pos));
            return parts;
        }
        parts.push_back(s.substr(pos, next - pos));
        pos = next + sep.size();
    }
}

} // namespace

namespace {

std::optional<Witness> satisfied_with_partitions(
    const TestObjective& obj, const std::vector<engine::TestCase>& tests,
    const std::vector<std::vector<Partition>>& partitions) {
    for (std::size_t t = 0; t < tests.size(); ++t) {
        const auto& test = tests[t];
        if (test.steps.empty()) continue;
        if (obj.required_interaction.empty())
            return Witness{test.id, 1, 0}; // vacuous match, empty step range
        for (const auto& part : partitions[t]) {
            if (part.menu != obj.functional_area) continue;
            // subsequence match inside this partition
            std::size_t pi = 0;
            int first = -1, last = -1;
            for (std::size_t i = part.begin;
                 i < part.end && pi < obj.required_interaction.size(); ++i) {
                if (step_matches(obj.required_interaction[pi], test.steps[i])) {
                    if (first < 0) first = static_cast<int>(i) + 1;
                    last = static_cast<int>(i) + 1;
                    ++pi;
                }
            }
            if (pi == obj.required_interaction.size()) return Witness{test.id, first, last};
        }
    }
    return std::nullopt;
}

std::vector<std::vector<Partition>> all_partitions(const std::vector<engine::TestCase>& tests) {
    std::vector<std::vector<Partition>> out;
    out.reserve(tests.size());
    for (const auto& test : tests) out.push_back(menu_partitions(test));
    return out;
}

} // namespace

std::optional<Witness> objective_satisfied(const TestObjective& obj,
                                           const std::vector<engine::TestCase>& tests,
                                           const sim::AppSpec& spec) {
    (void)spec;
    return satisfied_with_partitions(obj, tests, all_partitions(tests));
}

bool predicate_matches(const CheckPredicate& predicate, const report::OutputEntry& entry) {
    auto parsed = report::parse_output_entry(entry.text);
    if (!parsed || parsed->kind != predicate.kind) return false;
    for (const auto& [field, glob] : predicate.field_patterns) {
        auto it = parsed->fields.find(field);
        std::string value = it == parsed->fields.end() ? "" : it->second;
        if (!glob_match(glob, value)) return false;
    }
    return true;
}

CoverageResult verify_oracles(const std::vector<TestObjective>& objectives,
                              const std::vector<engine::TestCase>& tests,
                              const sim::AppSpec& spec) {
    (void)spec;
    CoverageResult result;
    auto partitions = all_partitions(tests);
    for (const auto& obj : objectives) {
        AreaCoverage& area = result.areas[obj.functional_area];
        area.objectives += 1;
        result.total.objectives += 1;
        auto witness = satisfied_with_partitions(obj, tests, partitions);
        if (!witness) continue;
        area.satisfied += 1;
        result.total.satisfied += 1;

        // output entries of the witness step range
        std::vector<report::OutputEntry> entries;
        for (const auto& test : tests) {
            if (test.id != witness->test_id) continue;
            for (int i = witness->first_step; i <= witness->last_step; ++i) {
                const auto& step = test.steps[static_cast<std::size_t>(i - 1)];
                for (const auto& ev : step.events) {
                    if (const auto* change = std::get_if<sim::GuiChange>(&ev))
                        if (change->kind == sim::GuiChange::Kind::Disappeared) continue;
                    entries.push_back(report::format_output_entry(ev));
                }
            }
        }
        for (const auto& check : obj.checks) {
            area.reached_checks += 1;
            result.total.reached_checks += 1;
            if (!is_verifiable(check.data_class)) continue;
            area.verifiable += 1;
            result.total.verifiable += 1;
            bool matched = std::any_of(entries.begin(), entries.end(),
                                       [&](const report::OutputEntry& e) {
                                           return predicate_matches(check.predicate, e);
                                       });
            if (matched) {
                area.verified += 1;
                result.total.verified += 1;
            }
        }
    }
    return result;
}

int CoverageResult::percent_satisfied() const {
    if (total.objectives == 0) return 0;
    return static_cast<int>(std::lround(100.0 * total.satisfied / total.objectives));
}

int CoverageResult::percent_verified() const {
    if (total.reached_checks == 0) return 0;
    return static_cast<int>(std::lround(100.0 * total.verified / total.reached_checks));
}

TriageSummary triage(const std::vector<TestObjective>& objectives,
                     const CoverageResult& coverage) {
    (void)objectives;
    TriageSummary t;
    t.manual_design = coverage.total.objectives - coverage.total.satisfied;
    t.manual_replay = coverage.total.reached_checks - coverage.total.verified;
    t.browsed = coverage.total.verified;
    return t;
}

// ---- plan file format ------------------------------------------------------

namespace {

PatternStep parse_pattern_step(const std::string& text, const std::string& where) {
    std::string t = trim(text);
    auto first = t.find(':');
    if (first == std::string::npos)
        throw ParseError(where + ": pattern step needs verb:title, got '" + t + "'");
    PatternStep ps;
    ps.verb = t.substr(0, first);
    if (ps.verb != "*" && !sim::verb_from_string(ps.verb))
        throw ParseError(where + ": unknown verb '" + ps.verb + "'");
    std::string rest = t.substr(first + 1);
    auto second = rest.find(':');
    if (second == std::string::npos) {
        ps.title_glob = rest;
    } else {
        ps.title_glob = rest.substr(0, second);
        ps.value_glob = rest.substr(second + 1);
    }
    return ps;
}

OracleCheck parse_check(const std::string& text, const std::string& where) {
    auto parts = split_on(trim(text), "|");
    if (parts.size() < 2)
        throw ParseError(where + ": check needs at least id|data_class, got '" + text + "'");
    OracleCheck check;
    check.id = trim(parts[0]);
    auto cls = data_class_from_string(trim(parts[1]));
    if (!cls) throw ParseError(where + ": unknown data class '" + parts[1] + "'");
    check.data_class = *cls;
    if (parts.size() >= 3) check.predicate.kind = trim(parts[2]);
    for (std::size_t i = 3; i < parts.size(); ++i) {
        auto eq = parts[i].find('=');
        if (eq == std::string::npos)
            throw ParseError(where + ": check field needs name=glob, got '" + parts[i] + "'");
        check.predicate.field_patterns.emplace_back(trim(parts[i].substr(0, eq)),
                                                    parts[i].substr(eq + 1));
    }
    if (is_verifiable(check.data_class) && check.predicate.kind.empty())
        throw ParseError(where + ": verifiable check '" + check.id + "' needs a template kind");
    return check;
}

} // namespace

std::vector<TestObjective> load_plan(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open plan file: " + path.string());
    std::vector<TestObjective> objectives;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::string where = "plan " + path.string() + ":" + std::to_string(line_no);
        auto cols = split_on(line, "\t");
        if (cols.size() < 3 || cols.size() > 4)
            throw ParseError(where + ": expected area, id, pattern[, checks]");
        TestObjective obj;
        obj.functional_area = trim(cols[0]);
        obj.id = trim(cols[1]);
        if (obj.functional_area.empty()) throw ParseError(where + ": empty functional area");
        if (obj.id.empty()) throw ParseError(where + ": empty objective id");
        std::string pattern = trim(cols[2]);
        if (!pattern.empty())
            for (const auto& step : split_on(pattern, ";"))
                obj.required_interaction.push_back(parse_pattern_step(step, where));
        if (cols.size() == 4) {
            std::string checks = trim(cols[3]);
            if (!checks.empty())
                for (const auto& c : split_on(checks, ";;"))
                    obj.checks.push_back(parse_check(c, where));
        }
        objectives.push_back(std::move(obj));
    }
    return objectives;
}

void save_plan(const std::vector<TestObjective>& objectives,
               const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write plan file: " + path.string());
    out << "# test plan: area<TAB>id<TAB>pattern<TAB>checks\n";
    for (const auto& obj : objectives) {
        out << obj.functional_area << '\t' << obj.id << '\t';
        for (std::size_t i = 0; i < obj.required_interaction.size(); ++i) {
            const auto& ps = obj.required_interaction[i];
            if (i) out << " ; ";
            out << ps.verb << ':' << ps.title_glob;
            if (ps.value_glob != "*") out << ':' << ps.value_glob;
        }
        out << '\t';
        for (std::size_t i = 0; i < obj.checks.size(); ++i) {
            const auto& c = obj.checks[i];
            if (i) out << " ;; ";
            out << c.id << '|' << to_string(c.data_class);
            if (!c.predicate.kind.empty()) out << '|' << c.predicate.kind;
            for (const auto& [f, g] : c.predicate.field_patterns) out << '|' << f << '=' << g;
        }
        out << '\n';
    }
}

} // namespace gexplore::plan
