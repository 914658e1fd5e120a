#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gexplore/engine.hpp"
#include "gexplore/report.hpp"

namespace gexplore::plan {

// Which kind of execution data an oracle inspects. Only data tracked by
// the test reports (GUI widget changes and database change events) can be
// verified from the reports alone.
enum class DataClass {
    GuiTracked,
    DbTracked,
    GridContent,
    GraphicalAttribute,
    DbUntracked,
    External,
};

const char* to_string(DataClass c);
std::optional<DataClass> data_class_from_string(const std::string& s);

inline bool is_verifiable(DataClass c) {
    return c == DataClass::GuiTracked || c == DataClass::DbTracked;
}

// Structural match over parsed output entries: a template kind plus
// per-field patterns ('*' wildcards allowed).
struct CheckPredicate {
    std::string kind;
    std::vector<std::pair<std::string, std::string>> field_patterns;
};

struct OracleCheck {
    std::string id;
    DataClass data_class = DataClass::GuiTracked;
    CheckPredicate predicate; // meaningful only for verifiable classes
};

// One step of a required interaction: verb plus title/value globs.
struct PatternStep {
    std::string verb; // click, select, fill, pick or "*"
    std::string title_glob;
    std::string value_glob = "*";
};

struct TestObjective {
    std::string id;
    std::string functional_area; // entity-type name; also the menu title
    std::vector<PatternStep> required_interaction;
    std::vector<OracleCheck> checks;
};

// Tab-separated plan file: area, objective id, interaction pattern,
// checks. Patterns are pattern steps joined by " ; "; checks are
// "id|class|kind|field=glob|..." joined by " ;; ".
std::vector<TestObjective> load_plan(const std::filesystem::path& path);
void save_plan(const std::vector<TestObjective>& objectives, const std::filesystem::path& path);

struct Witness {
    std::string test_id;
    int first_step = 0; // 1-based positions within the test case
    int last_step = 0;
};

// First test (in generation order) whose action-signature sequence
// contains the required interaction as a subsequence lying inside a
// single menu partition of the area's menu. An empty pattern matches any
// non-empty test.
std::optional<Witness> objective_satisfied(const TestObjective& obj,
                                           const std::vector<engine::TestCase>& tests,
                                           const sim::AppSpec& spec);

bool glob_match(const std::string& pattern, const std::string& text);
bool predicate_matches(const CheckPredicate& predicate, const report::OutputEntry& entry);

struct AreaCoverage {
    int objectives = 0;
    int satisfied = 0;
    int reached_checks = 0; // checks of satisfied objectives, any data class
    int verifiable = 0;     // reached checks with a tracked data class
    int verified = 0;       // verifiable checks whose predicate matched
};

struct CoverageResult {
    std::map<std::string, AreaCoverage> areas;
    AreaCoverage total;

    int percent_satisfied() const;
    int percent_verified() const; // of reached checks, rounded to integer
};

CoverageResult verify_oracles(const std::vector<TestObjective>& objectives,
                              const std::vector<engine::TestCase>& tests,
                              const sim::AppSpec& spec);

// The three work buckets left after a generation run: objectives that
// still need manually designed tests, oracles that need a manual replay
// of a generated test, and oracles closed by browsing the reports.
struct TriageSummary {
    int manual_design = 0;
    int manual_replay = 0;
    int browsed = 0;
};

TriageSummary triage(const std::vector<TestObjective>& objectives, const CoverageResult& coverage);

} // namespace gexplore::plan
