#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gexplore/engine.hpp"
#include "gexplore/types.hpp"

namespace gexplore::report {

struct OutputEntry {
    enum class Channel { GUI, DB };
    Channel channel = Channel::GUI;
    std::string text;

    bool operator==(const OutputEntry& o) const {
        return channel == o.channel && text == o.text;
    }
};

// Renders one output event into its tabular-report entry. The template
// vocabulary is closed: seven GUI widget kinds and three database event
// kinds. Disappearances have no template and are rejected.
OutputEntry format_output_entry(const sim::OutputEvent& event);

// Inverse of the formatter: recovers the template kind and all of its
// fields. Returns nullopt for text matching no template.
struct ParsedEntry {
    std::string kind; // menu, button, text_field, list_field, combo_field,
                      // grid, window, db_insert, db_delete, db_update
    std::map<std::string, std::string> fields;
};
std::optional<ParsedEntry> parse_output_entry(const std::string& text);

struct ReportRow {
    std::string id; // "T3.2"
    std::vector<std::string> actions;
    std::vector<OutputEntry> outputs;
    std::string menu;      // graphical menu the row belongs to; "" = none yet
    std::string operation; // menu-qualified operation name, e.g. "Invoices.Save"
    int first_step = 0;    // 1-based step positions within the test case
    int last_step = 0;
};

struct TestReport {
    std::string test_id;
    std::string start_menu; // menu of the first menu action; "" when none
    std::vector<ReportRow> rows;
};

// Merges each maximal run of consecutive fill/pick actions together with
// the click that terminates it into a single logical-operation row; all
// other actions map to one row each. Outputs of merged steps concatenate
// in execution order.
std::vector<ReportRow> group_input_actions(const engine::TestCase& test,
                                           const sim::AppSpec& spec);

struct UniqueOperationIndex {
    std::map<std::string, int> tests_per_menu;
    // operation -> row ids where it occurred, in generation order
    std::map<std::string, std::vector<std::string>> occurrences;
};

struct GeneratedReport {
    std::vector<TestReport> tests;
    UniqueOperationIndex index;
};

GeneratedReport generate_report(const std::vector<engine::TestCase>& tests,
                                const sim::AppSpec& spec);

// Writes one CSV file per graphical menu (columns ID, Actions, Outputs;
// newlines inside cells escaped as the two characters "\n") plus a
// browsable index.html whose operation entries link to row anchors named
// after the row ids.
void render(const GeneratedReport& report, const std::filesystem::path& out_dir);

std::string csv_escape_cell(const std::string& cell);
std::string menu_file_name(const std::string& menu);

} // namespace gexplore::report
