#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "encoding.hpp"

namespace solilab::cli {

enum ExitCode : int { pass = 0, residual_failure = 1, config_error = 2, singular = 3 };

struct RunConfig {
    /// toda | sine-gordon | langmuir | nls | quasidet-selftest
    std::string system;
    /// rational | gaussian-rational | complex-float
    std::string mode = "rational";
    /// Unset dimensions default per system, or follow explicit parameters.
    std::optional<int> n, N, r, cap;
    std::uint64_t seed = 1;
    /// Explicit parameter arrays; random parameters from `seed` when null.
    json params;
    // Langmuir window / period.
    int lo = 0;
    int hi = 4;
    std::optional<int> period;
    // NLS variant and bottom-row entry.
    bool heat = false;
    std::string entry = "NN";

    bool dump_series = false;
    int dump_degree = 3;
    std::optional<std::string> report_path;
    int trials = 100;
    /// Resampling attempts on singular random draws.
    int attempts = 8;
    /// Also run the Marchenko-lemma checkers.
    bool lemmas = false;
    bool timings = false;
};

/// Reads the JSON config document; unknown keys are rejected.
RunConfig config_from_json(const json& doc);
RunConfig load_config(const std::string& path);

struct RunResult {
    int exit_code = ExitCode::pass;
    /// The serialized report (deterministic unless timings are enabled).
    std::string report;
    std::string summary;
};

RunResult run(const RunConfig& config);

/// Full command-line entry point: parses arguments, runs, writes the report
/// to --report, $SOLILAB_REPORT_DIR/<system>-<seed>.json or stdout.
int main(int argc, char** argv);

} // namespace solilab::cli
