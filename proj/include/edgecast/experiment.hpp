#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edgecast/analysis.hpp"
#include "edgecast/geometry.hpp"
#include "edgecast/planner.hpp"

namespace edgecast::experiment {

// CLI exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitValidationFailure = 3;
inline constexpr int kExitIoError = 4;

/// Thrown for schema violations and inconsistent parameters (exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RateGrid {
    double from = 0.1;
    double to = 3.0;
    int points = 30;

    std::vector<double> values() const;
};

/// Everything a batch command needs: system parameters, sweep axes, trial
/// counts and output locations. JSON-loadable with flag overrides on top.
struct ExperimentSpec {
    geom::SystemConfig system;
    analysis::Receiver receiver = analysis::Receiver::kPzf;
    analysis::EulerInversionParams euler;
    planner::Objective objective = planner::Objective::kAverageRate;
    double target_outage = 0.1;

    long geometry_trials = 100000;
    long fading_trials = 200;
    int workers = 1;
    std::string out_dir = "out";
    bool emit_per_trial = false;
    long per_trial_limit = 1000;

    RateGrid rate_grid;
    std::vector<int> l_list;  // empty = {system.L}

    // deliver-demo shape: K users, N files, M cached files, [N_E, L] MDS code.
    int demo_users = 3;
    int demo_files = 3;
    int demo_cache = 1;
    int demo_blocks_total = 5;
    int demo_macro_l = 2;
    std::int64_t demo_file_bits = 1920;

    /// Parses and validates; unknown keys are rejected (schema discipline).
    static ExperimentSpec from_json_text(const std::string& text);
    std::string to_json_text() const;

    /// FNV-1a hash of the canonical JSON form, stamped into every artifact.
    std::uint64_t config_hash() const;

    void validate() const;
};

int run_simulate(const ExperimentSpec& spec);
int run_analyze(const ExperimentSpec& spec);
int run_optimize(const ExperimentSpec& spec);
int run_validate(const ExperimentSpec& spec);
int run_deliver_demo(const ExperimentSpec& spec);

}  // namespace edgecast::experiment
