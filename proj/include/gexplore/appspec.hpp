#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gexplore/types.hpp"

namespace gexplore::sim {

enum class ValueKind { Text, List, Combo, Date, Email, NumericId };

const char* to_string(ValueKind k);
ValueKind value_kind_from_string(const std::string& s);

struct FieldSpec {
    std::string label;
    ValueKind kind = ValueKind::Text;
    bool required = false;
    bool readonly = false;                // shown blocked on input forms
    int tab = 0;                          // 0-based tab index
    std::string column;                   // db column; "" = not persisted
    std::string initial_value;            // pre-filled value (or selection)
    std::vector<std::string> possible_values; // list/combo only
};

struct EntityTypeSpec {
    std::string name;     // plural, used for the menu and the entity page
    std::string singular; // used for CRUD buttons and form windows
    std::vector<FieldSpec> fields;
    int tabs = 1;
    bool has_new = true;
    bool has_view = true;
    bool has_edit = true;
    bool has_delete = true;
    int initial_records = 0;
    std::vector<std::string> grid_columns = {"ID", "Name", "Data", "Action"};

    std::string table_name() const; // upper-cased name
    int required_field_count() const;
};

struct AppSpec {
    std::vector<EntityTypeSpec> entity_types;
    int global_menu_actions = 0; // >= entity_types.size(); the rest are decoys
    std::uint64_t seed = 0;

    // Throws ValidationError naming the violated invariant.
    void validate() const;
};

// Structured configuration file (JSON). Schema documented in the README.
AppSpec load_app_spec(const std::filesystem::path& path);
void save_app_spec(const AppSpec& spec, const std::filesystem::path& path);

// Validity rule used by Save: all required fields non-empty and consistent
// with their value kind (email contains '@', numeric id parses as an
// integer, date matches DD-MM-YYYY).
bool value_valid_for_kind(ValueKind kind, const std::string& value);

} // namespace gexplore::sim
