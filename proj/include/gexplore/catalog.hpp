#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "gexplore/rng.hpp"
#include "gexplore/types.hpp"

namespace gexplore::catalog {

// Maps input-widget labels to candidate values, with a random-string
// fallback for labels that are not present. Immutable after load.
struct Catalog {
    std::map<std::string, std::vector<std::string>> entries; // normalized label -> values
    std::vector<std::string> default_values;
    std::uint64_t rng_seed = 0;

    std::size_t size() const { return entries.size(); }
};

// lowercase + trim; idempotent.
std::string normalize_label(const std::string& label);

// Value for an input widget: a catalog entry when the normalized label is
// known, otherwise one of the defaults. Uses the caller-supplied generator
// so concurrent replications stay independent.
std::string lookup(const Catalog& catalog, const sim::Widget& widget, Rng& rng);

// Seed-deterministic convenience overload (derives a stream from
// rng_seed and the label).
std::string lookup(const Catalog& catalog, const sim::Widget& widget);

struct LoadResult {
    Catalog catalog;
    std::vector<std::string> warnings;
};

// One record per line: label, then tab-separated values. A line whose
// label is "*" defines the default value set. '#' starts a comment.
LoadResult load_catalog(const std::filesystem::path& path);
void save_catalog(const Catalog& catalog, const std::filesystem::path& path);

} // namespace gexplore::catalog
