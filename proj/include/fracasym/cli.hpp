#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fracasym/verify.hpp"

namespace fracasym {

enum class Command { Kernel, Potential, Solve, Rates, Verify };

std::string to_string(Command c);
Command parse_command(const std::string& name);

struct RunConfig {
    Command command = Command::Verify;
    VerifyConfig verify;
    bool theorem_set = false;
    std::string cache_dir;  ///< empty: FRACASYM_CACHE, else no cache
    std::string out_dir = ".";
    int threads = 0;
};

/// Strict INI parser: sections [problem], [forcing], [grid], [verify]; unknown keys
/// and duplicate keys are errors. Throws Error("config", ...) naming the violated rule.
RunConfig parse_config(const std::string& text);

/// Re-checks the invariants that parse_config enforces (after command-line overrides).
void validate(const RunConfig& cfg);

/// Set cache/threads fields through to the lower-level option structs.
void apply_runtime_options(RunConfig& cfg);

struct RunResult {
    int status = 0;                  ///< 0 success/pass, 1 check failure
    std::vector<std::string> files;  ///< written artifacts
    nlohmann::json summary;
};

/// Table of rate exponents for the configured regime.
std::string rates_csv(const RunConfig& cfg);

/// Runs the selected command; throws Error on configuration problems.
RunResult run_command(const RunConfig& cfg);

/// Exit status for an exception escaping run_command: 2 for configuration/domain errors, 1 otherwise.
int exit_status_for(const std::exception& e);

}  // namespace fracasym
