#pragma once

#include <string>
#include <vector>

#include "gexplore/appspec.hpp"
#include "gexplore/catalog.hpp"
#include "gexplore/plan.hpp"

namespace gexplore::presets {

// Small three-entity application; the default for tests, where brute-force
// oracles have to terminate.
sim::AppSpec desk_app();
catalog::Catalog desk_catalog();
std::vector<plan::TestObjective> desk_plan();

// Six entities, ~20 fields each, 95 permanently enabled top-bar actions.
sim::AppSpec erp_like_app();
// 35 entries: user names, emails and data item identifiers. The labels
// are synthetic.
catalog::Catalog erp_like_catalog();
// Synthetic plan with 350 objectives across the six functional areas
// (73/119/52/21/10/75) and 408 checks, data classes split 310 tracked /
// 35 grid-content / 6 graphical-attribute / 12 untracked-db / 45 external.
std::vector<plan::TestObjective> erp_like_plan();

// Single-entity invoice application matching the sample report scenario:
// six text fields plus a pre-selected list field, one tab, three initial
// records.
sim::AppSpec invoice_demo_app();
catalog::Catalog invoice_demo_catalog();

bool is_app_preset(const std::string& name);
sim::AppSpec app_by_name(const std::string& name);        // desk | erp-like | invoice-demo
catalog::Catalog catalog_by_name(const std::string& name);
std::vector<plan::TestObjective> plan_by_name(const std::string& name);

} // namespace gexplore::presets
