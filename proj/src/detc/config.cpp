#include "detc/config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "detc/errors.hpp"

namespace detc {

namespace {

using nlohmann::json;

json thresholds_to_json(const TriggerThresholds& th) {
    return json{{"dx", th.dx}, {"du", th.du}};
}

json config_json(const ScenarioConfig& cfg) {
    json j;
    j["scenario"] = {{"name", cfg.scenario_name}};
    j["sim"] = {{"dt", cfg.dt}, {"horizon", cfg.horizon}};
    j["c"] = cfg.c;
    j["varpi1"] = cfg.varpi1;
    j["varpi2"] = cfg.varpi2;
    j["sigma"] = cfg.sigma;
    j["gamma"] = cfg.gamma;
    j["thresholds"] = thresholds_to_json(cfg.thresholds);
    j["init"] = {{"x", cfg.x0}, {"theta_hat", cfg.theta_hat0}};
    return j;
}

template <typename T>
void take(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

void apply_overrides(const json& j, ScenarioConfig& cfg) {
    static const std::set<std::string> known = {"scenario", "sim",   "c",          "varpi1",
                                                "varpi2",   "sigma", "gamma",      "thresholds",
                                                "init"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!known.count(key)) throw ParseError("config: unknown key \"" + key + "\"");
    }
    if (j.contains("scenario")) {
        const auto& s = j.at("scenario");
        for (const auto& [key, value] : s.items()) {
            (void)value;
            if (key != "name") throw ParseError("config: unknown key \"scenario." + key + "\"");
        }
    }
    if (j.contains("sim")) {
        const auto& s = j.at("sim");
        for (const auto& [key, value] : s.items()) {
            (void)value;
            if (key != "dt" && key != "horizon")
                throw ParseError("config: unknown key \"sim." + key + "\"");
        }
        take(s, "dt", cfg.dt);
        take(s, "horizon", cfg.horizon);
    }
    take(j, "c", cfg.c);
    take(j, "varpi1", cfg.varpi1);
    take(j, "varpi2", cfg.varpi2);
    take(j, "sigma", cfg.sigma);
    take(j, "gamma", cfg.gamma);
    if (j.contains("thresholds")) {
        const auto& t = j.at("thresholds");
        for (const auto& [key, value] : t.items()) {
            (void)value;
            if (key != "dx" && key != "du")
                throw ParseError("config: unknown key \"thresholds." + key + "\"");
        }
        take(t, "dx", cfg.thresholds.dx);
        take(t, "du", cfg.thresholds.du);
    }
    if (j.contains("init")) {
        const auto& t = j.at("init");
        for (const auto& [key, value] : t.items()) {
            (void)value;
            if (key != "x" && key != "theta_hat")
                throw ParseError("config: unknown key \"init." + key + "\"");
        }
        take(t, "x", cfg.x0);
        take(t, "theta_hat", cfg.theta_hat0);
    }
}

Scenario load_from_json(const json& j, const std::string& scenario_override) {
    std::string name = scenario_override;
    if (name.empty()) {
        if (!j.contains("scenario") || !j.at("scenario").contains("name"))
            throw ParseError("config: missing scenario.name");
        name = j.at("scenario").at("name").get<std::string>();
    }
    Scenario scenario = builtin_scenario(name);
    try {
        apply_overrides(j, scenario.config);
    } catch (const json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    scenario.config.scenario_name = name;
    scenario.config.validate(scenario.plant);
    return scenario;
}

}  // namespace

std::string config_to_json(const ScenarioConfig& cfg) { return config_json(cfg).dump(2) + "\n"; }

Scenario load_scenario_json(const std::string& json_text, const std::string& scenario_override) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    return load_from_json(j, scenario_override);
}

Scenario load_scenario_file(const std::string& path, const std::string& scenario_override) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return load_scenario_json(text, scenario_override);
}

void save_scenario_config(const Scenario& scenario, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << config_to_json(scenario.config);
    if (!out) throw IoError("failed writing " + path);
}

std::uint64_t config_fingerprint(const ScenarioConfig& cfg) {
    const std::string text = config_to_json(cfg);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace detc
