#include "gexplore/appspec.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

#include <json.hpp>

namespace gexplore::sim {

using nlohmann::json;

const char* to_string(ValueKind k) {
    switch (k) {
    case ValueKind::Text: return "text";
    case ValueKind::List: return "list";
    case ValueKind::Combo: return "combo";
    case ValueKind::Date: return "date";
    case ValueKind::Email: return "email";
    case ValueKind::NumericId: return "numeric-id";
    }
    return "?";
}

ValueKind value_kind_from_string(const std::string& s) {
    if (s == "text") return ValueKind::Text;
    if (s == "list") return ValueKind::List;
    if (s == "combo") return ValueKind::Combo;
    if (s == "date") return ValueKind::Date;
    if (s == "email") return ValueKind::Email;
    if (s == "numeric-id") return ValueKind::NumericId;
    throw ParseError("unknown value kind: " + s);
}

std::string EntityTypeSpec::table_name() const {
    std::string t = name;
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::toupper(c); });
    return t;
}

int EntityTypeSpec::required_field_count() const {
    int n = 0;
    for (const auto& f : fields)
        if (f.required) ++n;
    return n;
}

namespace {

bool clean_name(const std::string& s) {
    if (s.empty()) return false;
    // ':' separates id components, '"' and control chars break the report
    // templates
    return s.find(':') == std::string::npos && s.find('"') == std::string::npos &&
           s.find('\n') == std::string::npos && s.find('\t') == std::string::npos;
}

} // namespace

void AppSpec::validate() const {
    if (entity_types.empty()) throw ValidationError("app spec: at least one entity type required");
    if (global_menu_actions < static_cast<int>(entity_types.size()))
        throw ValidationError(
            "app spec: global_menu_actions must be >= the number of entity types");
    std::set<std::string> names;
    std::set<std::string> window_titles = {"Home"};
    for (const auto& e : entity_types) {
        if (!clean_name(e.name) || e.name.find('.') != std::string::npos)
            throw ValidationError("entity name empty or contains a reserved character: '" +
                                  e.name + "'");
        if (!clean_name(e.singular) || e.singular.find('.') != std::string::npos)
            throw ValidationError("entity '" + e.name + "': invalid singular name");
        if (!names.insert(e.name).second)
            throw ValidationError("duplicate entity type name: " + e.name);
        if (!window_titles.insert(e.name).second || !window_titles.insert(e.singular).second)
            throw ValidationError("entity '" + e.name +
                                  "': window titles collide with another entity");
        if (e.tabs < 1) throw ValidationError("entity '" + e.name + "': tabs must be >= 1");
        if (e.fields.empty())
            throw ValidationError("entity '" + e.name + "': at least one field required");
        if (e.initial_records < 0)
            throw ValidationError("entity '" + e.name + "': negative initial_records");
        std::set<std::string> labels;
        std::set<int> used_tabs;
        for (const auto& f : e.fields) {
            if (!clean_name(f.label))
                throw ValidationError("entity '" + e.name + "': invalid field label '" + f.label +
                                      "'");
            if (!labels.insert(f.label).second)
                throw ValidationError("entity '" + e.name + "': duplicate field label '" +
                                      f.label + "'");
            if (f.tab < 0 || f.tab >= e.tabs)
                throw ValidationError("entity '" + e.name + "': field '" + f.label +
                                      "' assigned to tab " + std::to_string(f.tab) +
                                      " outside 0.." + std::to_string(e.tabs - 1));
            if (f.required && f.readonly)
                throw ValidationError("entity '" + e.name + "': field '" + f.label +
                                      "' cannot be both required and readonly");
            used_tabs.insert(f.tab);
            bool choice = f.kind == ValueKind::List || f.kind == ValueKind::Combo;
            if (choice && f.possible_values.empty())
                throw ValidationError("entity '" + e.name + "': list/combo field '" + f.label +
                                      "' needs possible values");
            if (!choice && !f.possible_values.empty())
                throw ValidationError("entity '" + e.name + "': field '" + f.label +
                                      "' carries possible values but is not a list/combo");
        }
        if (static_cast<int>(used_tabs.size()) != e.tabs)
            throw ValidationError("entity '" + e.name + "': every tab needs at least one field");
        if (e.grid_columns.empty())
            throw ValidationError("entity '" + e.name + "': grid needs column labels");
    }
}

bool value_valid_for_kind(ValueKind kind, const std::string& value) {
    switch (kind) {
    case ValueKind::Text:
    case ValueKind::List:
    case ValueKind::Combo:
        return !value.empty();
    case ValueKind::Email:
        return value.find('@') != std::string::npos;
    case ValueKind::NumericId: {
        if (value.empty()) return false;
        std::size_t i = value[0] == '-' ? 1 : 0;
        if (i == value.size()) return false;
        return std::all_of(value.begin() + i, value.end(),
                           [](unsigned char c) { return std::isdigit(c); });
    }
    case ValueKind::Date: {
        // DD-MM-YYYY
        if (value.size() != 10 || value[2] != '-' || value[5] != '-') return false;
        for (std::size_t i : {0u, 1u, 3u, 4u, 6u, 7u, 8u, 9u})
            if (!std::isdigit(static_cast<unsigned char>(value[i]))) return false;
        return true;
    }
    }
    return false;
}

namespace {

FieldSpec field_from_json(const json& j) {
    FieldSpec f;
    f.label = j.at("label").get<std::string>();
    f.kind = value_kind_from_string(j.value("kind", "text"));
    f.required = j.value("required", false);
    f.readonly = j.value("readonly", false);
    f.tab = j.value("tab", 0);
    f.column = j.value("column", "");
    f.initial_value = j.value("initial", "");
    if (j.contains("values")) f.possible_values = j.at("values").get<std::vector<std::string>>();
    return f;
}

json field_to_json(const FieldSpec& f) {
    json j;
    j["label"] = f.label;
    j["kind"] = to_string(f.kind);
    if (f.required) j["required"] = true;
    if (f.readonly) j["readonly"] = true;
    if (f.tab) j["tab"] = f.tab;
    if (!f.column.empty()) j["column"] = f.column;
    if (!f.initial_value.empty()) j["initial"] = f.initial_value;
    if (!f.possible_values.empty()) j["values"] = f.possible_values;
    return j;
}

} // namespace

AppSpec load_app_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open app spec file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("app spec " + path.string() + ": " + e.what());
    }
    AppSpec spec;
    try {
        spec.global_menu_actions = j.at("global_menu_actions").get<int>();
        spec.seed = j.value("seed", 0ULL);
        for (const auto& je : j.at("entities")) {
            EntityTypeSpec e;
            e.name = je.at("name").get<std::string>();
            e.singular = je.value("singular", e.name);
            e.tabs = je.value("tabs", 1);
            e.has_new = je.value("new", true);
            e.has_view = je.value("view", true);
            e.has_edit = je.value("edit", true);
            e.has_delete = je.value("delete", true);
            e.initial_records = je.value("initial_records", 0);
            if (je.contains("grid_columns"))
                e.grid_columns = je.at("grid_columns").get<std::vector<std::string>>();
            for (const auto& jf : je.at("fields")) e.fields.push_back(field_from_json(jf));
            spec.entity_types.push_back(std::move(e));
        }
    } catch (const json::exception& e) {
        throw ParseError("app spec " + path.string() + ": " + e.what());
    }
    spec.validate();
    return spec;
}

void save_app_spec(const AppSpec& spec, const std::filesystem::path& path) {
    json j;
    j["global_menu_actions"] = spec.global_menu_actions;
    j["seed"] = spec.seed;
    j["entities"] = json::array();
    for (const auto& e : spec.entity_types) {
        json je;
        je["name"] = e.name;
        je["singular"] = e.singular;
        je["tabs"] = e.tabs;
        je["new"] = e.has_new;
        je["view"] = e.has_view;
        je["edit"] = e.has_edit;
        je["delete"] = e.has_delete;
        je["initial_records"] = e.initial_records;
        je["grid_columns"] = e.grid_columns;
        je["fields"] = json::array();
        for (const auto& f : e.fields) je["fields"].push_back(field_to_json(f));
        j["entities"].push_back(je);
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write app spec file: " + path.string());
    out << j.dump(2) << "\n";
}

} // namespace gexplore::sim
