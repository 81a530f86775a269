#include "detc/detc.h"

#include <cstring>
#include <string>

#include "detc/analysis.hpp"
#include "detc/config.hpp"
#include "detc/csv.hpp"
#include "detc/errors.hpp"
#include "detc/scenario.hpp"
#include "detc/sim.hpp"

// Handle definitions: thin immutable bundles around the core types.
struct detc_scenario {
    detc::Scenario scenario;
};
struct detc_result {
    detc::SimResult result;
    detc::Scenario scenario;  // producing setup, kept for verification calls
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
detc_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return DETC_OK;
    } catch (const detc::SpecError& e) {
        g_last_error = e.what();
        return DETC_ERROR_SPEC;
    } catch (const detc::NumericError& e) {
        g_last_error = e.what();
        return DETC_ERROR_NUMERIC;
    } catch (const detc::ContractError& e) {
        g_last_error = e.what();
        return DETC_ERROR_CONTRACT;
    } catch (const detc::ParseError& e) {
        g_last_error = e.what();
        return DETC_ERROR_PARSE;
    } catch (const detc::IoError& e) {
        g_last_error = e.what();
        return DETC_ERROR_IO;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DETC_ERROR_INTERNAL;
    }
}

detc_status invalid(const char* message) {
    g_last_error = message;
    return DETC_ERROR_INVALID_ARGUMENT;
}

detc::GainTable table_of(const detc_scenario* s) {
    return detc::compute_gain_table(s->scenario.config, s->scenario.plant.orders);
}

}  // namespace

extern "C" {

const char* detc_version(void) { return "1.0.0"; }

const char* detc_status_name(detc_status status) {
    switch (status) {
        case DETC_OK: return "ok";
        case DETC_ERROR_INVALID_ARGUMENT: return "invalid argument";
        case DETC_ERROR_SPEC: return "specification error";
        case DETC_ERROR_NUMERIC: return "numeric error";
        case DETC_ERROR_CONTRACT: return "contract error";
        case DETC_ERROR_PARSE: return "parse error";
        case DETC_ERROR_IO: return "io error";
        case DETC_ERROR_INTERNAL: return "internal error";
    }
    return "unknown";
}

const char* detc_last_error(void) { return g_last_error.c_str(); }

void detc_string_free(char* s) { delete[] s; }

detc_status detc_builtin_names(char** out) {
    if (!out) return invalid("detc_builtin_names: null output");
    return guarded([&] {
        std::string text;
        for (const auto& name : detc::builtin_scenario_names()) {
            text += name;
            text += "\n";
        }
        *out = dup_string(text);
    });
}

detc_status detc_scenario_builtin(const char* name, detc_scenario** out) {
    if (!name || !out) return invalid("detc_scenario_builtin: null argument");
    return guarded([&] { *out = new detc_scenario{detc::builtin_scenario(name)}; });
}

detc_status detc_scenario_load(const char* path, const char* scenario_override,
                               detc_scenario** out) {
    if (!path || !out) return invalid("detc_scenario_load: null argument");
    return guarded([&] {
        *out = new detc_scenario{
            detc::load_scenario_file(path, scenario_override ? scenario_override : "")};
    });
}

detc_status detc_scenario_save(const detc_scenario* s, const char* path) {
    if (!s || !path) return invalid("detc_scenario_save: null argument");
    return guarded([&] { detc::save_scenario_config(s->scenario, path); });
}

detc_status detc_scenario_config_json(const detc_scenario* s, char** out) {
    if (!s || !out) return invalid("detc_scenario_config_json: null argument");
    return guarded([&] { *out = dup_string(detc::config_to_json(s->scenario.config)); });
}

detc_status detc_scenario_scale_thresholds(const detc_scenario* s, double factor,
                                           detc_scenario** out) {
    if (!s || !out) return invalid("detc_scenario_scale_thresholds: null argument");
    return guarded([&] {
        if (!(factor > 0.0)) throw detc::SpecError("threshold scale must be strictly positive");
        detc_scenario* copy = new detc_scenario{s->scenario};
        copy->scenario.config.thresholds = copy->scenario.config.thresholds.scaled(factor);
        *out = copy;
    });
}

void detc_scenario_free(detc_scenario* s) { delete s; }

int detc_scenario_subsystem_count(const detc_scenario* s) {
    return s ? s->scenario.plant.subsystem_count : 0;
}

int detc_scenario_order(const detc_scenario* s, int i) {
    if (!s || i < 0 || i >= s->scenario.plant.subsystem_count) return 0;
    return s->scenario.plant.orders[static_cast<std::size_t>(i)];
}

double detc_scenario_dt(const detc_scenario* s) { return s ? s->scenario.config.dt : 0.0; }

double detc_scenario_horizon(const detc_scenario* s) {
    return s ? s->scenario.config.horizon : 0.0;
}

const char* detc_scenario_name(const detc_scenario* s) {
    return s ? s->scenario.config.scenario_name.c_str() : "";
}

detc_status detc_scenario_notes(const detc_scenario* s, char** out) {
    if (!s || !out) return invalid("detc_scenario_notes: null argument");
    return guarded([&] {
        std::string text;
        for (const auto& note : s->scenario.plant.notes) {
            text += note;
            text += "\n";
        }
        *out = dup_string(text);
    });
}

detc_status detc_gain_table_csv(const detc_scenario* s, char** out) {
    if (!s || !out) return invalid("detc_gain_table_csv: null argument");
    return guarded([&] {
        const auto table = table_of(s);
        const auto bounds = detc::lemma2_bounds(table, s->scenario.config.thresholds);
        *out = dup_string(detc::gain_table_report(table, bounds));
    });
}

detc_status detc_lemma1_constant(const detc_scenario* s, int i, double* out) {
    if (!s || !out) return invalid("detc_lemma1_constant: null argument");
    return guarded([&] { *out = detc::lemma1_constant(table_of(s), i); });
}

detc_status detc_lemma1_report_csv(const detc_scenario* s, int samples, unsigned long long seed,
                                   char** out, int* pass) {
    if (!s || !out || !pass) return invalid("detc_lemma1_report_csv: null argument");
    return guarded([&] {
        auto report = detc::check_lemma1(table_of(s), samples, seed);
        report.fingerprint = detc::config_fingerprint(s->scenario.config);
        *out = dup_string(report.to_csv());
        *pass = report.pass() ? 1 : 0;
    });
}

detc_status detc_run(const detc_scenario* s, detc_controller controller, detc_result** out) {
    if (!s || !out) return invalid("detc_run: null argument");
    if (controller != DETC_CONTROLLER_CCS && controller != DETC_CONTROLLER_ETCS)
        return invalid("detc_run: unknown controller kind");
    return guarded([&] {
        const auto kind = controller == DETC_CONTROLLER_CCS ? detc::ControllerKind::Ccs
                                                            : detc::ControllerKind::Etcs;
        auto result = detc::run(s->scenario.plant, s->scenario.config, kind);
        *out = new detc_result{std::move(result), s->scenario};
    });
}

void detc_result_free(detc_result* r) { delete r; }

int detc_result_grid_size(const detc_result* r) {
    return r ? static_cast<int>(r->result.time.size()) : 0;
}

int detc_result_truncated(const detc_result* r) { return r && r->result.truncated ? 1 : 0; }

double detc_result_kappa(const detc_result* r) { return r ? r->result.kappa : 0.0; }

detc_status detc_result_residual(const detc_result* r, double tail_start, int i, double* out) {
    if (!r || !out) return invalid("detc_result_residual: null argument");
    return guarded([&] {
        if (i < 0 || i >= r->result.subsystem_count)
            throw detc::ContractError("residual: subsystem index out of range");
        *out = detc::residual_set(r->result, tail_start)[static_cast<std::size_t>(i)];
    });
}

detc_status detc_result_event_count(const detc_result* r, int* out) {
    if (!r || !out) return invalid("detc_result_event_count: null argument");
    return guarded([&] {
        int count = 0;
        for (const auto& s : detc::inter_event_stats(r->result)) count += s.count;
        *out = count;
    });
}

detc_status detc_result_write_trajectory_csv(const detc_result* r, const char* path) {
    if (!r || !path) return invalid("detc_result_write_trajectory_csv: null argument");
    return guarded([&] { detc::write_text_file(path, detc::trajectory_csv(r->result)); });
}

detc_status detc_result_write_events_csv(const detc_result* r, const char* path) {
    if (!r || !path) return invalid("detc_result_write_events_csv: null argument");
    return guarded([&] { detc::write_text_file(path, detc::events_csv(r->result)); });
}

detc_status detc_result_stats_csv(const detc_result* r, char** out) {
    if (!r || !out) return invalid("detc_result_stats_csv: null argument");
    return guarded([&] {
        *out = dup_string(detc::inter_event_stats_csv(detc::inter_event_stats(r->result)));
    });
}

detc_status detc_lemma2_report_csv(const detc_result* r, const detc_scenario* s, char** out,
                                   int* pass) {
    if (!r || !s || !out || !pass) return invalid("detc_lemma2_report_csv: null argument");
    return guarded([&] {
        const auto table = table_of(s);
        const auto bounds = detc::lemma2_bounds(table, s->scenario.config.thresholds);
        const auto report = detc::check_lemma2(r->result, bounds, table);
        *out = dup_string(report.to_csv());
        *pass = report.pass() ? 1 : 0;
    });
}

detc_status detc_zeno_report_csv(const detc_result* r, char** out, int* pass) {
    if (!r || !out || !pass) return invalid("detc_zeno_report_csv: null argument");
    return guarded([&] {
        const auto report = detc::check_zeno(r->result);
        *out = dup_string(report.to_csv());
        *pass = report.pass() ? 1 : 0;
    });
}

detc_status detc_compare_max_state_distance(const detc_result* a, const detc_result* b,
                                            double* out) {
    if (!a || !b || !out) return invalid("detc_compare_max_state_distance: null argument");
    return guarded([&] { *out = detc::max_state_distance(a->result, b->result); });
}

detc_status detc_compare_files_csv(const char* trajectory_a, const char* trajectory_b,
                                   char** out) {
    if (!trajectory_a || !trajectory_b || !out)
        return invalid("detc_compare_files_csv: null argument");
    return guarded([&] {
        const auto a = detc::read_trajectory_file(trajectory_a);
        const auto b = detc::read_trajectory_file(trajectory_b);
        const auto distances = detc::compare_trajectory_tables(a.columns, a.rows, b.columns, b.rows);
        std::string csv = "signal,sup_distance\n";
        for (const auto& d : distances)
            csv += d.signal + "," + detc::format_double(d.distance) + "\n";
        *out = dup_string(csv);
    });
}

}  // extern "C"
