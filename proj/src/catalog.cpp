#include "gexplore/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace gexplore::catalog {

std::string normalize_label(const std::string& label) {
    std::size_t b = 0, e = label.size();
    while (b < e && std::isspace(static_cast<unsigned char>(label[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(label[e - 1]))) --e;
    std::string out = label.substr(b, e - b);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string lookup(const Catalog& catalog, const sim::Widget& widget, Rng& rng) {
    auto it = catalog.entries.find(normalize_label(widget.title));
    if (it != catalog.entries.end()) return it->second[rng.uniform(it->second.size())];
    if (catalog.default_values.empty()) throw Error("catalog has no default values");
    return catalog.default_values[rng.uniform(catalog.default_values.size())];
}

std::string lookup(const Catalog& catalog, const sim::Widget& widget) {
    Rng rng(catalog.rng_seed ^ fnv1a(normalize_label(widget.title)));
    return lookup(catalog, widget, rng);
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : line) {
        if (c == '\t') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

} // namespace

LoadResult load_catalog(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open catalog file: " + path.string());
    LoadResult result;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto parts = split_tabs(line);
        if (parts.size() < 2)
            throw ParseError("catalog " + path.string() + ":" + std::to_string(line_no) +
                             ": expected label and at least one value");
        std::string label = parts[0];
        std::vector<std::string> values(parts.begin() + 1, parts.end());
        for (std::size_t i = 0; i < values.size(); ++i)
            if (values[i].empty())
                throw ParseError("catalog " + path.string() + ":" + std::to_string(line_no) +
                                 ": empty value in field " + std::to_string(i + 2));
        if (label == "*") {
            result.catalog.default_values = values;
            continue;
        }
        std::string norm = normalize_label(label);
        if (norm.empty())
            throw ParseError("catalog " + path.string() + ":" + std::to_string(line_no) +
                             ": empty label in field 1");
        if (result.catalog.entries.count(norm))
            result.warnings.push_back("duplicate label '" + norm + "' at line " +
                                      std::to_string(line_no) + ", last entry wins");
        result.catalog.entries[norm] = values; // last one wins
    }
    if (result.catalog.default_values.empty())
        result.catalog.default_values = {"alpha", "bravo", "charlie", "delta", "echo"};
    return result;
}

void save_catalog(const Catalog& catalog, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write catalog file: " + path.string());
    out << "# input value catalog: label<TAB>value...; '*' names the default set\n";
    auto write = [&](const std::string& label, const std::vector<std::string>& values) {
        out << label;
        for (const auto& v : values) out << '\t' << v;
        out << '\n';
    };
    write("*", catalog.default_values);
    for (const auto& [label, values] : catalog.entries) write(label, values);
}

} // namespace gexplore::catalog
