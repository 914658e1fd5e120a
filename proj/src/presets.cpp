#include "gexplore/presets.hpp"

#include <array>

namespace gexplore::presets {

using sim::AppSpec;
using sim::EntityTypeSpec;
using sim::FieldSpec;
using sim::ValueKind;

namespace {

FieldSpec field(std::string label, ValueKind kind, bool required, int tab, std::string column,
                std::vector<std::string> values = {}, std::string initial = "") {
    FieldSpec f;
    f.label = std::move(label);
    f.kind = kind;
    f.required = required;
    f.tab = tab;
    f.column = std::move(column);
    f.possible_values = std::move(values);
    f.initial_value = std::move(initial);
    return f;
}

// Optional free-text padding fields, spread over the tabs. The readonly
// ones render blocked on the forms (computed/display-only data).
void pad_fields(EntityTypeSpec& e, int editable, int readonly) {
    for (int k = 1; k <= editable; ++k)
        e.fields.push_back(
            field(e.singular + " Note " + std::to_string(k), ValueKind::Text, false,
                  static_cast<int>(e.fields.size()) % e.tabs, ""));
    for (int k = 1; k <= readonly; ++k) {
        FieldSpec f = field(e.singular + " Info " + std::to_string(k), ValueKind::Text, false,
                            static_cast<int>(e.fields.size()) % e.tabs, "");
        f.readonly = true;
        f.initial_value = "ref " + std::to_string(100 + k);
        e.fields.push_back(std::move(f));
    }
}

} // namespace

AppSpec desk_app() {
    AppSpec app;
    app.global_menu_actions = 12;
    app.seed = 7;

    EntityTypeSpec notes;
    notes.name = "Notes";
    notes.singular = "Note";
    notes.tabs = 1;
    notes.initial_records = 2;
    notes.fields = {
        field("Title", ValueKind::Text, true, 0, "TITLE"),
        field("Body", ValueKind::Text, false, 0, "BODY"),
        field("Tag", ValueKind::Text, false, 0, "TAG"),
    };

    EntityTypeSpec contacts;
    contacts.name = "Contacts";
    contacts.singular = "Contact";
    contacts.tabs = 2;
    contacts.initial_records = 1;
    contacts.fields = {
        field("Name", ValueKind::Text, true, 0, "NAME"),
        field("Email", ValueKind::Email, true, 0, "EMAIL"),
        field("Phone", ValueKind::NumericId, true, 0, "PHONE"),
        field("Country", ValueKind::Text, false, 1, "COUNTRY"),
        field("Nick", ValueKind::Text, false, 1, "NICK"),
    };

    EntityTypeSpec tasks;
    tasks.name = "Tasks";
    tasks.singular = "Task";
    tasks.tabs = 2;
    tasks.initial_records = 0;
    tasks.fields = {
        field("Title", ValueKind::Text, true, 0, "TITLE"),
        field("Due", ValueKind::Date, true, 0, "DUE"),
        field("Owner", ValueKind::Text, true, 0, "OWNER"),
        field("State", ValueKind::List, false, 1, "STATE", {"Open", "Done"}, "Open"),
        field("Points", ValueKind::NumericId, false, 1, "POINTS"),
        field("Note", ValueKind::Text, false, 1, "NOTE"),
    };

    app.entity_types = {notes, contacts, tasks};
    return app;
}

catalog::Catalog desk_catalog() {
    catalog::Catalog cat;
    cat.rng_seed = 99;
    cat.entries = {
        {"title", {"Quarterly report", "Expense sheet"}},
        {"body", {"Plain note body"}},
        {"tag", {"urgent"}},
        {"name", {"Paul Red", "Anna Blue"}},
        {"email", {"paul@red.it", "anna@blue.it"}},
        {"phone", {"5551234"}},
        {"country", {"Italy"}},
        {"nick", {"pr"}},
        {"due", {"20-04-2019"}},
        {"owner", {"mariani"}},
        {"points", {"13"}},
        {"note", {"check twice"}},
    };
    cat.default_values = {"lorem", "ipsum", "dolor"};
    return cat;
}

AppSpec erp_like_app() {
    AppSpec app;
    app.global_menu_actions = 95;
    app.seed = 17;

    EntityTypeSpec projects;
    projects.name = "Projects";
    projects.singular = "Project";
    projects.tabs = 5;
    projects.initial_records = 3;
    projects.fields = {
        field("Project Code", ValueKind::Text, true, 0, "CODE"),
        field("Project Name", ValueKind::Text, true, 1, "NAME"),
        field("Customer", ValueKind::Text, true, 2, "CUSTOMER"),
        // no catalog entry; the fallback strings never form a valid date
        field("Start Date", ValueKind::Date, true, 3, "START"),
        field("Manager Email", ValueKind::Email, true, 4, "MANAGER"),
    };
    pad_fields(projects, 4, 10);

    EntityTypeSpec orders;
    orders.name = "Orders";
    orders.singular = "Order";
    orders.tabs = 5;
    orders.initial_records = 3;
    orders.fields = {
        field("Order Number", ValueKind::NumericId, true, 0, "NUMBER"),
        field("Order Label", ValueKind::Text, true, 1, "LABEL"),
        field("Supplier", ValueKind::Text, true, 2, "SUPPLIER"),
        field("Order Date", ValueKind::Date, true, 3, "ORDERED"),
        field("Contact Email", ValueKind::Email, true, 4, "CONTACT"),
        // the last two required fields have no catalog entry, so the
        // random-string fallback never yields a valid date or id
        field("Delivery Date", ValueKind::Date, true, 0, "DELIVERY"),
        field("Approval Code", ValueKind::NumericId, true, 1, "APPROVAL"),
    };
    pad_fields(orders, 4, 11);

    EntityTypeSpec invoices;
    invoices.name = "Invoices";
    invoices.singular = "Invoice";
    invoices.tabs = 5;
    invoices.has_edit = false; // issued invoices are immutable
    invoices.initial_records = 3;
    invoices.fields = {
        field("Invoice Number", ValueKind::Text, true, 0, "NUMBER"),
        field("Invoice Name", ValueKind::Text, true, 0, "LABEL"),
        field("State", ValueKind::List, false, 1, "", {"not Sent", "Sent", "Replied"}, "Sent"),
        field("Client Name", ValueKind::Text, true, 1, "NAME"),
        field("Client Surname", ValueKind::Text, true, 2, "SURNAME"),
        field("Client Email", ValueKind::Email, true, 3, "EMAIL"),
        field("Client Country", ValueKind::Text, true, 4, "COUNTRY"),
    };
    pad_fields(invoices, 3, 10);

    EntityTypeSpec tickets;
    tickets.name = "Tickets";
    tickets.singular = "Ticket";
    tickets.tabs = 4;
    tickets.initial_records = 2;
    tickets.fields = {
        field("Ticket Id", ValueKind::NumericId, true, 0, "ID"),
        field("Subject", ValueKind::Text, true, 1, "SUBJECT"),
        field("Reporter Email", ValueKind::Email, true, 2, "REPORTER"),
        field("Opened On", ValueKind::Date, true, 3, "OPENED"),
        field("Severity", ValueKind::List, true, 0, "SEVERITY", {"High", "Medium", "Low"},
              "Medium"),
    };
    pad_fields(tickets, 3, 8);

    EntityTypeSpec modules;
    modules.name = "Modules";
    modules.singular = "Module";
    modules.tabs = 3;
    modules.initial_records = 2;
    modules.fields = {
        field("Module Code", ValueKind::NumericId, true, 0, "CODE"),
        field("Module Name", ValueKind::Text, true, 1, "NAME"),
        field("Owner", ValueKind::Text, true, 2, "OWNER"),
        field("Vendor Email", ValueKind::Email, true, 0, "VENDOR"),
        // catalog gaps, as above
        field("Release Date", ValueKind::Date, true, 1, "RELEASE"),
        field("License Id", ValueKind::NumericId, true, 2, "LICENSE"),
    };
    pad_fields(modules, 2, 6);

    EntityTypeSpec offers;
    offers.name = "Offers";
    offers.singular = "Offer";
    offers.tabs = 5;
    offers.initial_records = 3;
    offers.fields = {
        field("Offer Code", ValueKind::Text, true, 0, "CODE"),
        field("Offer Name", ValueKind::Text, true, 1, "NAME"),
        field("Recipient", ValueKind::Text, true, 2, "RECIPIENT"),
        field("Recipient Email", ValueKind::Email, true, 3, "EMAIL"),
        // uncovered date, as in Projects
        field("Valid Until", ValueKind::Date, true, 4, "VALID"),
        field("Discount", ValueKind::NumericId, true, 0, "DISCOUNT"),
    };
    pad_fields(offers, 3, 9);

    app.entity_types = {projects, orders, invoices, tickets, modules, offers};
    return app;
}

catalog::Catalog erp_like_catalog() {
    catalog::Catalog cat;
    cat.rng_seed = 35;
    // Only the Invoices required fields are fully covered; every other
    // area misses at least one constrained field, so its submissions fail
    // validation the way the real test plans anticipate.
    cat.entries = {
        // projects (start date intentionally missing)
        {"project code", {"PRJ-2019-04"}},
        {"project name", {"Rollout North"}},
        {"customer", {"ACME Spa"}},
        {"manager email", {"mariani@disco.unimib.it"}},
        // orders (delivery date and approval code intentionally missing)
        {"order number", {"88012"}},
        {"order label", {"Spring restock"}},
        {"supplier", {"Brianza Forniture"}},
        {"order date", {"02-03-2019"}},
        {"contact email", {"orders@acme.it"}},
        // invoices
        {"invoice number", {"2015.2"}},
        {"invoice name", {"Payment"}},
        {"client name", {"Paul"}},
        {"client surname", {"Red"}},
        {"client email", {"paul@red.it"}},
        {"client country", {"Italy"}},
        // tickets (opened on intentionally missing)
        {"ticket id", {"4711"}},
        {"subject", {"Login fails on kiosk"}},
        {"reporter email", {"helpdesk@acme.it"}},
        // modules (release date and license id intentionally missing)
        {"module code", {"31007"}},
        {"module name", {"Billing core"}},
        {"owner", {"denaro"}},
        {"vendor email", {"vendor@soft.it"}},
        // offers (valid until intentionally missing)
        {"offer code", {"OF-19-77"}},
        {"offer name", {"Annual maintenance"}},
        {"recipient", {"Rossi Srl"}},
        {"recipient email", {"ufficio@rossi.it"}},
        {"discount", {"15"}},
        // generic spares
        {"name", {"Paul Red"}},
        {"email", {"mariani@disco.unimib.it"}},
        {"date", {"20-04-2019"}},
        {"label", {"Payment"}},
        {"code", {"1001"}},
        {"city", {"Milano"}},
        {"company", {"ACME Spa"}},
        {"phone", {"025551234"}},
    };
    cat.default_values = {"lorem", "ipsum", "dolor", "sit", "amet"};
    return cat;
}

AppSpec invoice_demo_app() {
    AppSpec app;
    app.global_menu_actions = 6;
    app.seed = 11;

    EntityTypeSpec invoices;
    invoices.name = "Invoices";
    invoices.singular = "Invoice";
    invoices.tabs = 1;
    invoices.initial_records = 3;
    invoices.fields = {
        field("Invoice Number", ValueKind::Text, true, 0, "NUMBER"),
        field("Invoice Name", ValueKind::Text, true, 0, "LABEL"),
        field("State", ValueKind::List, false, 0, "", {"not Sent", "Sent", "Replied"}, "Sent"),
        field("Client Data - Name", ValueKind::Text, true, 0, "NAME"),
        field("Client Data - Surname", ValueKind::Text, true, 0, "SURNAME"),
        field("Client Data - Email", ValueKind::Email, true, 0, "EMAIL"),
        field("Client Data - Country", ValueKind::Text, true, 0, "COUNTRY"),
    };
    app.entity_types = {invoices};
    return app;
}

catalog::Catalog invoice_demo_catalog() {
    catalog::Catalog cat;
    cat.rng_seed = 4;
    cat.entries = {
        {"invoice number", {"2015.2"}},
        {"invoice name", {"Payment"}},
        {"client data - name", {"Paul"}},
        {"client data - surname", {"Red"}},
        {"client data - email", {"paul@red.it"}},
        {"client data - country", {"Italy"}},
    };
    cat.default_values = {"lorem"};
    return cat;
}

// ---- synthetic test plans --------------------------------------------------

namespace {

using plan::CheckPredicate;
using plan::DataClass;
using plan::OracleCheck;
using plan::PatternStep;
using plan::TestObjective;

struct AreaPlanShape {
    const char* area;
    int objectives;
    int with_checks; // leading objectives that carry the checks
    int checks;
    int tracked; // of which gui/db tracked; the rest split below
    int grid;
    int attribute;
    int db_untracked;
    int external;
};

PatternStep pstep(std::string verb, std::string title, std::string value = "*") {
    return {std::move(verb), std::move(title), std::move(value)};
}

CheckPredicate pred(std::string kind,
                    std::vector<std::pair<std::string, std::string>> fields) {
    return {std::move(kind), std::move(fields)};
}

// Interaction pattern for the j-th checked objective of an area; cycles
// through the CRUD repertoire.
std::vector<PatternStep> objective_pattern(const EntityTypeSpec& e, int j) {
    const std::string& A = e.name;
    const std::string& X = e.singular;
    switch (j % 8) {
    case 0: return {pstep("select", A)};
    case 1: return {pstep("select", A), pstep("click", "New " + X)};
    case 2: return {pstep("select", A), pstep("click", "View")};
    case 3: return {pstep("select", A), pstep("click", "Edit")};
    case 4: return {pstep("select", A), pstep("click", "Delete")};
    case 5:
        return {pstep("select", A), pstep("click", "New " + X), pstep("fill", "*"),
                pstep("click", "Save")};
    case 6:
        return {pstep("select", A), pstep("click", "Edit"), pstep("fill", "*"),
                pstep("click", "Save")};
    default: return {pstep("select", A), pstep("fill", "*")};
    }
}

// Objectives beyond the generator's reach name operations the application
// does not offer.
std::vector<PatternStep> unreachable_pattern(const EntityTypeSpec& e, int j) {
    static const std::array<const char*, 5> ops = {"Export", "Print", "Archive", "Duplicate",
                                                   "Import"};
    return {pstep("select", e.name), pstep("click", ops[static_cast<std::size_t>(j) % ops.size()])};
}

// The two tracked predicates available for the j-th checked objective.
std::array<std::pair<DataClass, CheckPredicate>, 2> tracked_checks(const EntityTypeSpec& e,
                                                                   int j) {
    const std::string& A = e.name;
    const std::string& X = e.singular;
    const std::string T = e.table_name();
    using P = std::pair<DataClass, CheckPredicate>;
    switch (j % 8) {
    case 0:
        return {P{DataClass::GuiTracked, pred("window", {{"title", A}, {"state", "foreground"}})},
                P{DataClass::GuiTracked, pred("grid", {{"columns", "*"}})}};
    case 1:
        return {P{DataClass::GuiTracked, pred("window", {{"title", X}, {"state", "foreground"}})},
                P{DataClass::GuiTracked, pred("button", {{"title", "Save"}, {"state", "enabled"}})}};
    case 2:
        return {P{DataClass::GuiTracked,
                  pred("window", {{"title", "View " + X}, {"state", "foreground"}})},
                P{DataClass::GuiTracked, pred("text_field", {{"state", "blocked"}})}};
    case 3:
        return {P{DataClass::GuiTracked, pred("window", {{"title", X}, {"state", "foreground"}})},
                P{DataClass::GuiTracked, pred("button", {{"title", "Close"}, {"state", "enabled"}})}};
    case 4:
        return {P{DataClass::DbTracked, pred("db_delete", {{"table", T}})},
                P{DataClass::GuiTracked, pred("grid", {{"columns", "*"}})}};
    case 5:
        return {P{DataClass::DbTracked, pred("db_insert", {{"table", T}})},
                P{DataClass::GuiTracked, pred("window", {{"title", A}, {"state", "foreground"}})}};
    case 6:
        return {P{DataClass::DbTracked, pred("db_update", {{"table", T}})},
                P{DataClass::GuiTracked, pred("window", {{"title", A}, {"state", "foreground"}})}};
    default:
        return {P{DataClass::GuiTracked, pred("text_field", {{"state", "enabled"}})},
                P{DataClass::GuiTracked, pred("window", {{"title", X}, {"state", "foreground"}})}};
    }
}

std::vector<TestObjective> build_plan(const AppSpec& app,
                                      const std::vector<AreaPlanShape>& shapes) {
    std::vector<TestObjective> out;
    for (std::size_t ai = 0; ai < shapes.size(); ++ai) {
        const AreaPlanShape& shape = shapes[ai];
        const EntityTypeSpec* entity = nullptr;
        for (const auto& e : app.entity_types)
            if (e.name == shape.area) entity = &e;
        if (!entity) throw Error(std::string("plan preset: unknown area ") + shape.area);

        // untracked data classes handed out after the tracked budget
        std::vector<DataClass> untracked;
        for (int k = 0; k < shape.grid; ++k) untracked.push_back(DataClass::GridContent);
        for (int k = 0; k < shape.attribute; ++k)
            untracked.push_back(DataClass::GraphicalAttribute);
        for (int k = 0; k < shape.db_untracked; ++k) untracked.push_back(DataClass::DbUntracked);
        for (int k = 0; k < shape.external; ++k) untracked.push_back(DataClass::External);

        int doubled = shape.checks - shape.with_checks; // objectives with two checks
        int slot = 0;
        for (int j = 0; j < shape.objectives; ++j) {
            TestObjective obj;
            obj.functional_area = shape.area;
            obj.id = std::to_string(ai + 1) + "." + std::to_string(j + 1);
            if (j < shape.with_checks) {
                obj.required_interaction = objective_pattern(*entity, j);
                int n_checks = j < doubled ? 2 : 1;
                auto tracked = tracked_checks(*entity, j);
                for (int k = 0; k < n_checks; ++k) {
                    OracleCheck check;
                    check.id = obj.id + ".c" + std::to_string(k + 1);
                    if (slot < shape.tracked) {
                        check.data_class = tracked[static_cast<std::size_t>(k)].first;
                        check.predicate = tracked[static_cast<std::size_t>(k)].second;
                    } else {
                        check.data_class = untracked[static_cast<std::size_t>(slot - shape.tracked)];
                    }
                    ++slot;
                    obj.checks.push_back(std::move(check));
                }
            } else {
                obj.required_interaction = unreachable_pattern(*entity, j);
            }
            out.push_back(std::move(obj));
        }
        if (slot != shape.checks)
            throw Error(std::string("plan preset: check budget mismatch for ") + shape.area);
    }
    return out;
}

} // namespace

std::vector<plan::TestObjective> erp_like_plan() {
    static const std::vector<AreaPlanShape> shapes = {
        //  area       obj  w/chk chk  trk grid attr dbu ext
        {"Projects", 73, 51, 81, 65, 6, 1, 2, 7},
        {"Orders", 119, 82, 132, 100, 12, 2, 4, 14},
        {"Invoices", 52, 32, 56, 41, 5, 1, 2, 7},
        {"Tickets", 21, 20, 38, 28, 4, 0, 1, 5},
        {"Modules", 10, 9, 16, 9, 2, 1, 1, 3},
        {"Offers", 75, 57, 85, 67, 6, 1, 2, 9},
    };
    return build_plan(erp_like_app(), shapes);
}

std::vector<plan::TestObjective> desk_plan() {
    static const std::vector<AreaPlanShape> shapes = {
        {"Notes", 5, 4, 6, 5, 1, 0, 0, 0},
        {"Contacts", 5, 4, 6, 5, 0, 0, 1, 0},
        {"Tasks", 4, 3, 4, 3, 0, 0, 0, 1},
    };
    return build_plan(desk_app(), shapes);
}

bool is_app_preset(const std::string& name) {
    return name == "desk" || name == "erp-like" || name == "invoice-demo";
}

sim::AppSpec app_by_name(const std::string& name) {
    if (name == "desk") return desk_app();
    if (name == "erp-like") return erp_like_app();
    if (name == "invoice-demo") return invoice_demo_app();
    throw ValidationError("unknown app preset: " + name + " (expected desk or erp-like)");
}

catalog::Catalog catalog_by_name(const std::string& name) {
    if (name == "desk") return desk_catalog();
    if (name == "erp-like") return erp_like_catalog();
    if (name == "invoice-demo") return invoice_demo_catalog();
    throw ValidationError("unknown catalog preset: " + name);
}

std::vector<plan::TestObjective> plan_by_name(const std::string& name) {
    if (name == "desk") return desk_plan();
    if (name == "erp-like") return erp_like_plan();
    throw ValidationError("unknown plan preset: " + name);
}

} // namespace gexplore::presets
