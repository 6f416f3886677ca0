#include "pintoc.h"

#include <exception>
#include <string>

#include "pintoc/experiment.hpp"

using pintoc::experiment::ExperimentConfig;
using pintoc::experiment::RunOutput;

struct pintoc_run {
    std::string record;
    std::string csv;
    std::string diff;
    std::string trajectory;
    bool converged = true;
};

namespace {

thread_local std::string g_last_error;

ExperimentConfig parse_config(const char* config_json) {
    const std::string text = (config_json == nullptr || *config_json == '\0')
                                 ? std::string("{}")
                                 : std::string(config_json);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    return ExperimentConfig::from_json(j);
}

pintoc_run* wrap(RunOutput&& out) {
    auto* run = new pintoc_run;
    run->record = out.record.to_json().dump(2);
    run->csv = std::move(out.csv);
    run->diff = std::move(out.diff_report);
    run->trajectory = std::move(out.trajectory_csv);
    run->converged = out.converged && !out.partial_failure;
    return run;
}

template <typename Fn>
pintoc_status guarded(Fn&& fn, pintoc_run** out) {
    if (out == nullptr) {
        g_last_error = "output handle pointer is null";
        return PINTOC_INVALID_CONFIG;
    }
    *out = nullptr;
    try {
        RunOutput result = fn();
        const bool ok = result.converged && !result.partial_failure;
        *out = wrap(std::move(result));
        g_last_error.clear();
        return ok ? PINTOC_OK : PINTOC_NOT_CONVERGED;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return PINTOC_INVALID_CONFIG;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return PINTOC_INTERNAL_ERROR;
    }
}

}  // namespace

extern "C" {

const char* pintoc_version(void) { return "0.1.0"; }

const char* pintoc_last_error(void) { return g_last_error.c_str(); }

pintoc_status pintoc_solve(const char* config_json, pintoc_run** out) {
    return guarded([&] { return pintoc::experiment::run_solve(parse_config(config_json)); },
                   out);
}

pintoc_status pintoc_spectrum(const char* config_json, pintoc_run** out) {
    return guarded(
        [&] { return pintoc::experiment::run_spectrum(parse_config(config_json)); }, out);
}

pintoc_status pintoc_bound(const char* config_json, pintoc_run** out) {
    return guarded([&] { return pintoc::experiment::run_bound(parse_config(config_json)); },
                   out);
}

pintoc_status pintoc_table(const char* table_id, const char* config_json,
                           pintoc_run** out) {
    if (table_id == nullptr) {
        g_last_error = "table id is null";
        return PINTOC_INVALID_CONFIG;
    }
    const std::string id(table_id);
    return guarded(
        [&] { return pintoc::experiment::run_table(id, parse_config(config_json)); }, out);
}

const char* pintoc_run_record(const pintoc_run* run) {
    return run ? run->record.c_str() : nullptr;
}

const char* pintoc_run_csv(const pintoc_run* run) {
    return (run && !run->csv.empty()) ? run->csv.c_str() : nullptr;
}

const char* pintoc_run_diff(const pintoc_run* run) {
    return (run && !run->diff.empty()) ? run->diff.c_str() : nullptr;
}

const char* pintoc_run_trajectory(const pintoc_run* run) {
    return (run && !run->trajectory.empty()) ? run->trajectory.c_str() : nullptr;
}

int pintoc_run_converged(const pintoc_run* run) {
    return (run && run->converged) ? 1 : 0;
}

void pintoc_run_free(pintoc_run* run) { delete run; }

}  // extern "C"
