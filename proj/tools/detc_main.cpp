// Command-line front end for the detc shared library. Consumes only the
// public C API.

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "detc/detc.h"

namespace {

struct ScenarioDeleter {
    void operator()(detc_scenario* s) const { detc_scenario_free(s); }
};
struct ResultDeleter {
    void operator()(detc_result* r) const { detc_result_free(r); }
};
using ScenarioPtr = std::unique_ptr<detc_scenario, ScenarioDeleter>;
using ResultPtr = std::unique_ptr<detc_result, ResultDeleter>;

[[noreturn]] void fail(detc_status status, const std::string& context) {
    std::cerr << "error: " << context << ": " << detc_status_name(status) << ": "
              << detc_last_error() << "\n";
    std::exit(2);
}

void check(detc_status status, const std::string& context) {
    if (status != DETC_OK) fail(status, context);
}

std::string take_string(char* s) {
    std::string out = s ? s : "";
    detc_string_free(s);
    return out;
}

std::string num(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

ScenarioPtr open_scenario(const std::string& config_path, const std::string& scenario_name) {
    detc_scenario* raw = nullptr;
    if (!config_path.empty()) {
        check(detc_scenario_load(config_path.c_str(),
                                 scenario_name.empty() ? nullptr : scenario_name.c_str(), &raw),
              "loading " + config_path);
    } else {
        const std::string name = scenario_name.empty() ? "sec5" : scenario_name;
        check(detc_scenario_builtin(name.c_str(), &raw), "scenario " + name);
    }
    return ScenarioPtr(raw);
}

std::string resolve_out_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("DETC_OUT_DIR"); env && *env) return env;
    return ".";
}

ResultPtr run_controller(const detc_scenario* scenario, detc_controller controller) {
    detc_result* raw = nullptr;
    check(detc_run(scenario, controller, &raw), "simulation");
    return ResultPtr(raw);
}

void write_run_outputs(const detc_scenario* scenario, const detc_result* result,
                       const std::string& dir, bool etcs) {
    std::filesystem::create_directories(dir);
    check(detc_result_write_trajectory_csv(result, (dir + "/trajectory.csv").c_str()),
          "writing trajectory");
    check(detc_scenario_save(scenario, (dir + "/config.json").c_str()), "writing config");
    if (etcs) {
        check(detc_result_write_events_csv(result, (dir + "/events.csv").c_str()),
              "writing events");
        char* stats = nullptr;
        check(detc_result_stats_csv(result, &stats), "computing statistics");
        std::ofstream out(dir + "/stats.csv", std::ios::binary);
        out << take_string(stats);
    }
}

int cmd_run(const std::string& config_path, const std::string& scenario_name,
            const std::string& controller_name, const std::string& out_flag) {
    const auto scenario = open_scenario(config_path, scenario_name);
    const bool etcs = controller_name == "etcs";
    const auto result =
        run_controller(scenario.get(), etcs ? DETC_CONTROLLER_ETCS : DETC_CONTROLLER_CCS);
    const std::string dir = resolve_out_dir(out_flag);
    write_run_outputs(scenario.get(), result.get(), dir, etcs);
    std::cout << "wrote " << dir << "/trajectory.csv (" << detc_result_grid_size(result.get())
              << " rows)\n";
    if (detc_result_truncated(result.get())) {
        std::cerr << "warning: divergence guard tripped; run truncated\n";
        return 1;
    }
    return 0;
}

int cmd_verify(const std::string& what, const std::string& config_path,
               const std::string& scenario_name) {
    const auto scenario = open_scenario(config_path, scenario_name);
    char* csv = nullptr;
    int pass = 1;
    if (what == "gains") {
        check(detc_gain_table_csv(scenario.get(), &csv), "gain table");
        std::cout << take_string(csv);
        return 0;
    }
    if (what == "lemma1") {
        check(detc_lemma1_report_csv(scenario.get(), 1000, 20200613ull, &csv, &pass), "lemma1");
    } else if (what == "lemma2") {
        const auto result = run_controller(scenario.get(), DETC_CONTROLLER_ETCS);
        check(detc_lemma2_report_csv(result.get(), scenario.get(), &csv, &pass), "lemma2");
    } else if (what == "zeno") {
        const auto result = run_controller(scenario.get(), DETC_CONTROLLER_ETCS);
        check(detc_zeno_report_csv(result.get(), &csv, &pass), "zeno");
    } else {
        std::cerr << "error: unknown verify target \"" << what
                  << "\" (expected gains|lemma1|lemma2|zeno)\n";
        return 2;
    }
    std::cout << take_string(csv);
    std::cout << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : 1;
}

int cmd_compare(const std::string& dir_a, const std::string& dir_b) {
    char* csv = nullptr;
    check(detc_compare_files_csv((dir_a + "/trajectory.csv").c_str(),
                                 (dir_b + "/trajectory.csv").c_str(), &csv),
          "compare");
    std::cout << take_string(csv);
    return 0;
}

int cmd_sweep(const std::vector<double>& scales, const std::string& config_path,
              const std::string& scenario_name, const std::string& out_flag) {
    const auto scenario = open_scenario(config_path, scenario_name);
    const auto baseline = run_controller(scenario.get(), DETC_CONTROLLER_CCS);

    std::string csv = "scale,max_state_distance,events_total\n";
    bool monotone = true;
    double previous = 0.0;
    bool first = true;
    for (double scale : scales) {
        detc_scenario* scaled_raw = nullptr;
        check(detc_scenario_scale_thresholds(scenario.get(), scale, &scaled_raw), "scaling");
        ScenarioPtr scaled(scaled_raw);
        const auto result = run_controller(scaled.get(), DETC_CONTROLLER_ETCS);
        double distance = 0.0;
        check(detc_compare_max_state_distance(result.get(), baseline.get(), &distance),
              "distance");
        int events = 0;
        check(detc_result_event_count(result.get(), &events), "event count");
        csv += num(scale) + "," + num(distance) + "," + std::to_string(events) + "\n";
        if (!first && distance > previous) monotone = false;
        previous = distance;
        first = false;
    }
    std::cout << csv;
    const std::string dir = resolve_out_dir(out_flag);
    std::filesystem::create_directories(dir);
    std::ofstream out(dir + "/sweep.csv", std::ios::binary);
    out << csv;
    std::cout << (monotone ? "PASS: distance nonincreasing across scales"
                           : "FAIL: distance increased between scales")
              << "\n";
    return monotone ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decentralized event-triggered control toolkit"};
    app.require_subcommand(1);

    std::string config_path, scenario_name, controller = "ccs", out_dir;
    std::string verify_what, dir_a, dir_b;
    std::vector<double> scales{1.0, 0.5, 0.25, 0.125};

    auto* run = app.add_subcommand("run", "simulate a scenario and write CSV outputs");
    run->add_option("--scenario", scenario_name, "built-in scenario name");
    run->add_option("--controller", controller, "ccs|etcs")
        ->check(CLI::IsMember({"ccs", "etcs"}));
    run->add_option("--config", config_path, "JSON configuration file");
    run->add_option("--out", out_dir, "output directory (or DETC_OUT_DIR)");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("what", verify_what, "gains|lemma1|lemma2|zeno")->required();
    verify->add_option("--scenario", scenario_name, "built-in scenario name");
    verify->add_option("--config", config_path, "JSON configuration file");

    auto* compare = app.add_subcommand("compare", "sup distance between two run directories");
    compare->add_option("--a", dir_a, "first run directory")->required();
    compare->add_option("--b", dir_b, "second run directory")->required();

    auto* sweep = app.add_subcommand("sweep", "threshold-scale refinement sweep");
    sweep->add_option("--threshold-scale", scales, "comma-separated scale factors")
        ->delimiter(',');
    sweep->add_option("--scenario", scenario_name, "built-in scenario name");
    sweep->add_option("--config", config_path, "JSON configuration file");
    sweep->add_option("--out", out_dir, "output directory (or DETC_OUT_DIR)");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return cmd_run(config_path, scenario_name, controller, out_dir);
    if (verify->parsed()) return cmd_verify(verify_what, config_path, scenario_name);
    if (compare->parsed()) return cmd_compare(dir_a, dir_b);
    if (sweep->parsed()) return cmd_sweep(scales, config_path, scenario_name, out_dir);
    return 2;
}
