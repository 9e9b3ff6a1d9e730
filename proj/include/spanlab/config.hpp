#ifndef SPANLAB_CONFIG_HPP
#define SPANLAB_CONFIG_HPP

#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "graph.hpp"

namespace spanlab {

// Flat key=value experiment configuration. A run's config is embedded
// verbatim in its outputs so any artifact can be replayed.
struct ExperimentConfig {
    std::map<std::string, std::string> kv;

    bool has(const std::string& k) const { return kv.count(k) > 0; }

    std::string get(const std::string& k) const {
        auto it = kv.find(k);
        if (it == kv.end()) throw ParameterError("config: missing required key '" + k + "'");
        return it->second;
    }
    std::string get_or(const std::string& k, const std::string& dflt) {
        auto it = kv.find(k);
        if (it == kv.end()) {
            kv[k] = dflt; // defaults are echoed back
            return dflt;
        }
        return it->second;
    }
    std::int64_t get_int(const std::string& k) const { return std::stoll(get(k)); }
    std::int64_t get_int_or(const std::string& k, std::int64_t dflt) {
        return std::stoll(get_or(k, std::to_string(dflt)));
    }
    double get_double(const std::string& k) const { return std::stod(get(k)); }
    double get_double_or(const std::string& k, double dflt) {
        std::ostringstream os;
        os << dflt;
        return std::stod(get_or(k, os.str()));
    }
};

inline const std::map<std::string, std::set<std::string>>& known_config_keys() {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"gen", {"command", "family", "n", "seed", "out"}},
        {"check-expansion", {"command", "graph", "rule", "vmax", "budget", "w", "delta", "out"}},
        {"census",
         {"command", "graph", "lmax", "engine", "extensions", "out"}},
        {"bounds", {"command", "graph", "consts", "out"}},
        {"contain", {"command", "graph", "family", "budget", "seed", "exact", "out"}},
        {"fragment",
         {"command", "preset", "n", "eps", "w", "bigc", "coarse_b", "sharp_delta",
          "pop", "seed", "budget", "restarts", "stick", "ride_run", "round_cap", "rounds", "hist",
          "exact", "out"}},
        {"threshold",
         {"command", "family", "n", "trials", "seed", "budget", "grid", "tol",
          "bisect", "out"}},
    };
    return keys;
}

inline ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto strip = [](std::string s) {
            auto a = s.find_first_not_of(" \t\r");
            auto b = s.find_last_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            return s.substr(a, b - a + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParameterError("config: line without '=': " + line);
        std::string k = strip(line.substr(0, eq));
        std::string v = strip(line.substr(eq + 1));
        if (cfg.kv.count(k)) throw ParameterError("config: duplicate key '" + k + "'");
        cfg.kv[k] = v;
    }
    if (!cfg.has("command")) throw ParameterError("config: missing required key 'command'");
    const auto& registry = known_config_keys();
    auto it = registry.find(cfg.get("command"));
    if (it == registry.end())
        throw ParameterError("config: unknown command '" + cfg.get("command") + "'");
    std::vector<std::string> unknown;
    for (const auto& [k, v] : cfg.kv)
        if (!it->second.count(k)) unknown.push_back(k);
    if (!unknown.empty()) {
        std::string msg = "config: unknown keys:";
        for (const auto& k : unknown) msg += " '" + k + "'";
        throw ParameterError(msg);
    }
    return cfg;
}

inline std::string emit_config(const ExperimentConfig& cfg) {
    std::ostringstream os;
    for (const auto& [k, v] : cfg.kv) os << k << "=" << v << "\n";
    return os.str();
}

// family spec names used across the CLI and configs
inline FamilySpec parse_family(const std::string& name) {
    auto starts = [&](const std::string& p) { return name.rfind(p, 0) == 0; };
    auto arg_list = [&](const std::string& p) {
        std::string inner = name.substr(p.size() + 1, name.size() - p.size() - 2);
        std::vector<std::string> parts;
        std::istringstream is(inner);
        std::string tok;
        while (std::getline(is, tok, ',')) parts.push_back(tok);
        return parts;
    };
    if (name == "sq_cycle") return FamilySpec::square_of_cycle();
    if (starts("power_of_cycle(")) {
        auto a = arg_list("power_of_cycle");
        return FamilySpec::power_of_cycle(std::stoi(a.at(0)));
    }
    if (starts("toroidal_grid(")) {
        auto a = arg_list("toroidal_grid");
        return FamilySpec::toroidal_grid(std::stoi(a.at(0)));
    }
    if (name == "square_lattice_completed") return FamilySpec::square_lattice();
    if (name == "triangular_lattice_completed") return FamilySpec::triangular_lattice();
    if (name == "overlapping_four_cycles") return FamilySpec::overlapping_four_cycles();
    if (starts("random_regular(")) {
        auto a = arg_list("random_regular");
        return FamilySpec::random_regular(std::stoi(a.at(0)),
                                          std::stoull(a.at(1)));
    }
    throw ParameterError("unknown family '" + name + "'");
}

} // namespace spanlab

#endif
