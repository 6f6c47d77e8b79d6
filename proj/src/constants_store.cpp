#include "skdv/constants_store.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "skdv/errors.hpp"

namespace skdv {

ConstantStore ConstantStore::parse(const std::string& text) {
    ConstantStore s;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        Entry e;
        std::string value;
        if (!(ls >> e.id)) continue;
        std::string extra;
        if (!(ls >> e.ensemble_version >> value) || (ls >> extra))
            throw ConfigError("constant store line " + std::to_string(lineno) +
                                  ": expected <id> <ensemble_version> <value>",
                              lineno);
        try {
            size_t used = 0;
            e.value = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
            throw ConfigError("constant store line " + std::to_string(lineno) +
                                  ": bad number '" + value + "'",
                              lineno);
        }
        s.set(e.id, e.ensemble_version, e.value);
    }
    return s;
}

ConstantStore ConstantStore::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open constant store " + path, 0);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string ConstantStore::serialize() const {
    std::string out = "# <id> <ensemble_version> <constant>\n";
    for (const auto& e : entries_) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", e.value);
        out += e.id + " " + e.ensemble_version + " " + buf + "\n";
    }
    return out;
}

void ConstantStore::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write constant store " + path, 0);
    out << serialize();
}

std::optional<double> ConstantStore::lookup(const std::string& id,
                                            const std::string& version) const {
    for (const auto& e : entries_)
        if (e.id == id && e.ensemble_version == version) return e.value;
    return std::nullopt;
}

void ConstantStore::set(const std::string& id, const std::string& version, double value) {
    for (auto& e : entries_)
        if (e.id == id && e.ensemble_version == version) {
            e.value = value;
            return;
        }
    entries_.push_back({id, version, value});
}

}  // namespace skdv
