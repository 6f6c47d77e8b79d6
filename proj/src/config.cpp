#include "skdv/config.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "skdv/errors.hpp"

namespace skdv {

const char* to_string(Experiment e) {
    switch (e) {
        case Experiment::linear_schrodinger: return "linear_schrodinger";
        case Experiment::linear_kdv: return "linear_kdv";
        case Experiment::nonlinear_skdv: return "nonlinear_skdv";
        case Experiment::picard_crosscheck: return "picard_crosscheck";
        case Experiment::estimates: return "estimates";
        case Experiment::diagnose_field: return "diagnose_field";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& value, const char* type, int line) {
    throw ConfigError("line " + std::to_string(line) + ": key '" + key + "' expects " + type +
                          ", got '" + value + "'",
                      line);
}

double to_double(const std::string& key, const std::string& v, int line) {
    if (v.empty()) bad(key, v, "a number", line);
    char* end = nullptr;
    errno = 0;
    const double d = std::strtod(v.c_str(), &end);
    if (*end != '\0' || errno == ERANGE) bad(key, v, "a number", line);
    return d;
}

long long to_integer(const std::string& key, const std::string& v, int line) {
    if (v.empty()) bad(key, v, "an integer", line);
    char* end = nullptr;
    errno = 0;
    const long long i = std::strtoll(v.c_str(), &end, 10);
    if (*end != '\0' || errno == ERANGE) bad(key, v, "an integer", line);
    return i;
}

bool to_bool(const std::string& key, const std::string& v, int line) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    bad(key, v, "a boolean", line);
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(v);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Key {
    const char* name;
    std::function<void(ExperimentConfig&, const std::string&, int)> set;
    std::function<std::string(const ExperimentConfig&)> get;
};

#define SKDV_DOUBLE(field)                                                                  \
    Key {                                                                                   \
        #field,                                                                             \
            [](ExperimentConfig& c, const std::string& v, int l) {                          \
                c.field = to_double(#field, v, l);                                          \
            },                                                                              \
            [](const ExperimentConfig& c) { return fmt(c.field); }                          \
    }
#define SKDV_INT(field)                                                                     \
    Key {                                                                                   \
        #field,                                                                             \
            [](ExperimentConfig& c, const std::string& v, int l) {                          \
                c.field = static_cast<decltype(c.field)>(to_integer(#field, v, l));         \
            },                                                                              \
            [](const ExperimentConfig& c) { return std::to_string(c.field); }               \
    }
#define SKDV_STRING(field)                                                                  \
    Key {                                                                                   \
        #field, [](ExperimentConfig& c, const std::string& v, int) { c.field = v; },        \
            [](const ExperimentConfig& c) { return c.field; }                               \
    }
#define SKDV_BOOL(field)                                                                    \
    Key {                                                                                   \
        #field,                                                                             \
            [](ExperimentConfig& c, const std::string& v, int l) {                          \
                c.field = to_bool(#field, v, l);                                            \
            },                                                                              \
            [](const ExperimentConfig& c) { return std::string(c.field ? "true" : "false"); } \
    }

const std::vector<Key>& keys() {
    static const std::vector<Key> k = {
        Key{"experiment",
            [](ExperimentConfig& c, const std::string& v, int l) {
                for (auto e : {Experiment::linear_schrodinger, Experiment::linear_kdv,
                               Experiment::nonlinear_skdv, Experiment::picard_crosscheck,
                               Experiment::estimates, Experiment::diagnose_field})
                    if (v == to_string(e)) {
                        c.experiment = e;
                        return;
                    }
                bad("experiment", v, "an experiment name", l);
            },
            [](const ExperimentConfig& c) { return std::string(to_string(c.experiment)); }},
        SKDV_INT(n_points),
        SKDV_DOUBLE(length),
        SKDV_DOUBLE(T),
        SKDV_INT(snapshots),
        SKDV_DOUBLE(data_alpha),
        SKDV_DOUBLE(data_alpha_kdv),
        SKDV_DOUBLE(x0),
        SKDV_DOUBLE(c),
        SKDV_INT(j_max),
        SKDV_DOUBLE(coupling_alpha),
        SKDV_DOUBLE(coupling_gamma),
        SKDV_DOUBLE(c_cfl),
        SKDV_DOUBLE(fixed_dt),
        Key{"betas",
            [](ExperimentConfig& c, const std::string& v, int l) {
                c.betas.clear();
                for (const auto& item : split_list(v)) c.betas.push_back(to_double("betas", item, l));
                if (c.betas.empty()) bad("betas", v, "a comma-separated list of numbers", l);
            },
            [](const ExperimentConfig& c) {
                std::string s;
                for (size_t i = 0; i < c.betas.size(); ++i) s += (i ? "," : "") + fmt(c.betas[i]);
                return s;
            }},
        SKDV_DOUBLE(holder_window),
        SKDV_DOUBLE(fit_band_hi),
        SKDV_INT(fit_bands),
        SKDV_DOUBLE(sobolev_s),
        SKDV_DOUBLE(picard_T),
        SKDV_DOUBLE(picard_scale),
        SKDV_INT(picard_iter),
        SKDV_INT(picard_degree),
        Key{"seed",
            [](ExperimentConfig& c, const std::string& v, int l) {
                const long long s = to_integer("seed", v, l);
                if (s < 0) bad("seed", v, "a non-negative integer", l);
                c.seed = static_cast<std::uint64_t>(s);
            },
            [](const ExperimentConfig& c) { return std::to_string(c.seed); }},
        SKDV_INT(ensemble_size),
        Key{"estimate_ids",
            [](ExperimentConfig& c, const std::string& v, int l) {
                c.estimate_ids = split_list(v);
                if (c.estimate_ids.empty()) bad("estimate_ids", v, "a comma-separated list", l);
            },
            [](const ExperimentConfig& c) {
                std::string s;
                for (size_t i = 0; i < c.estimate_ids.size(); ++i)
                    s += (i ? "," : "") + c.estimate_ids[i];
                return s;
            }},
        SKDV_STRING(constants_file),
        SKDV_BOOL(record),
        SKDV_STRING(snapshot_path),
        SKDV_STRING(output_dir),
        SKDV_BOOL(write_snapshots),
    };
    return k;
}

#undef SKDV_DOUBLE
#undef SKDV_INT
#undef SKDV_STRING
#undef SKDV_BOOL

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string s = trim(raw);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line) + ": expected key = value", line);
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        const Key* found = nullptr;
        for (const auto& k : keys())
            if (key == k.name) found = &k;
        if (!found)
            throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'", line);
        found->set(cfg, value, line);
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path, 0);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string to_text(const ExperimentConfig& cfg) {
    std::string out;
    for (const auto& k : keys()) out += std::string(k.name) + " = " + k.get(cfg) + "\n";
    return out;
}

std::vector<std::string> config_keys() {
    std::vector<std::string> out;
    for (const auto& k : keys()) out.emplace_back(k.name);
    return out;
}

void validate(const ExperimentConfig& c) {
    auto need = [](bool ok, const std::string& what) {
        if (!ok) throw ConfigError("invalid configuration: " + what, 0);
    };
    need(c.n_points > 0 && c.n_points % 2 == 0, "n_points must be a positive even integer");
    need(c.length > 0.0, "length must be > 0");
    need(c.T > 0.0, "T must be > 0");
    need(c.snapshots >= 2, "snapshots must be >= 2");
    need(c.data_alpha > 0.0, "data_alpha must be > 0");
    need(c.data_alpha_kdv >= 0.0, "data_alpha_kdv must be >= 0");
    need(c.c > 0.0, "c must be > 0");
    need(c.j_max >= 0, "j_max must be >= 0");
    need(c.c_cfl > 0.0, "c_cfl must be > 0");
    need(c.fixed_dt >= 0.0, "fixed_dt must be >= 0");
    for (double b : c.betas) need(b > 0.0 && b <= 1.0, "betas must lie in (0, 1]");
    need(c.holder_window > 0.0, "holder_window must be > 0");
    need(c.fit_band_hi >= 0.0, "fit_band_hi must be >= 0");
    need(c.fit_bands >= 4, "fit_bands must be >= 4");
    need(c.sobolev_s > 0.75, "sobolev_s must be > 3/4");
    need(c.picard_T > 0.0, "picard_T must be > 0");
    need(c.picard_scale >= 0.0, "picard_scale must be >= 0");
    need(c.picard_iter >= 1, "picard_iter must be >= 1");
    need(c.picard_degree >= 2, "picard_degree must be >= 2");
    need(c.ensemble_size >= 1, "ensemble_size must be >= 1");
    need(c.experiment != Experiment::diagnose_field || !c.snapshot_path.empty(),
         "diagnose_field needs snapshot_path");
}

}  // namespace skdv
