#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "edgecast/curve_table.hpp"
#include "edgecast/experiment.hpp"

namespace {

using edgecast::experiment::ConfigError;
using edgecast::experiment::ExperimentSpec;

struct CommonFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<int> workers;
    std::optional<long> trials;
    std::optional<int> macro_l;
    std::optional<int> n_r;
    std::optional<double> eta;
    std::optional<double> lambda;
    std::optional<std::string> rate_grid;  // "from:to:points"
    std::optional<std::string> receiver;
    std::optional<std::string> objective;
    std::optional<double> target_outage;
    bool per_trial = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file (flags override file values)");
    cmd->add_option("--seed", f.seed, "RNG seed (64-bit)");
    cmd->add_option("--out", f.out_dir, "output directory");
    cmd->add_option("--workers", f.workers, "worker threads (must not change results)");
    cmd->add_option("--trials", f.trials, "Monte Carlo geometry trials");
    cmd->add_option("--L", f.macro_l, "macro-diversity order");
    cmd->add_option("--nr", f.n_r, "receive antennas");
    cmd->add_option("--eta", f.eta, "pathloss exponent");
    cmd->add_option("--lambda", f.lambda, "EN density per km^2");
    cmd->add_option("--rate-grid", f.rate_grid, "delivery-rate grid as from:to:points");
    cmd->add_option("--receiver", f.receiver, "pzf | pzf-sic");
    cmd->add_option("--objective", f.objective, "average-rate | target-outage");
    cmd->add_option("--target-outage", f.target_outage, "planner outage target in (0,1)");
    cmd->add_flag("--per-trial", f.per_trial, "emit per-trial debug records");
}

ExperimentSpec build_spec(const CommonFlags& f) {
    ExperimentSpec spec;
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw edgecast::io::IoError("cannot read config file: " + f.config_path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        spec = ExperimentSpec::from_json_text(buffer.str());
    }
    if (f.seed) spec.system.seed = *f.seed;
    if (f.out_dir) spec.out_dir = *f.out_dir;
    if (f.workers) spec.workers = *f.workers;
    if (f.trials) spec.geometry_trials = *f.trials;
    if (f.macro_l) spec.system.L = *f.macro_l;
    if (f.n_r) spec.system.n_r = *f.n_r;
    if (f.eta) spec.system.eta = *f.eta;
    if (f.lambda) spec.system.lambda_density = *f.lambda;
    if (f.receiver) {
        if (*f.receiver == "pzf")
            spec.receiver = edgecast::analysis::Receiver::kPzf;
        else if (*f.receiver == "pzf-sic")
            spec.receiver = edgecast::analysis::Receiver::kPzfSic;
        else
            throw ConfigError("--receiver must be pzf or pzf-sic");
    }
    if (f.objective) {
        if (*f.objective == "average-rate")
            spec.objective = edgecast::planner::Objective::kAverageRate;
        else if (*f.objective == "target-outage")
            spec.objective = edgecast::planner::Objective::kTargetOutage;
        else
            throw ConfigError("--objective must be average-rate or target-outage");
    }
    if (f.target_outage) spec.target_outage = *f.target_outage;
    if (f.per_trial) spec.emit_per_trial = true;
    if (f.rate_grid) {
        double from = 0, to = 0;
        int points = 0;
        char c1 = 0, c2 = 0;
        std::istringstream iss(*f.rate_grid);
        if (!(iss >> from >> c1 >> to >> c2 >> points) || c1 != ':' || c2 != ':')
            throw ConfigError("--rate-grid must look like 0.1:3.0:30");
        spec.rate_grid = {from, to, points};
    }
    spec.validate();
    std::cout << "effective config (hash " << std::hex << spec.config_hash() << std::dec << "):\n"
              << spec.to_json_text() << "\n";
    return spec;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coded-caching delivery over a stochastic-geometry edge network: "
                 "Monte Carlo simulation, closed-form analysis and macro-diversity planning"};
    app.require_subcommand(1);

    CommonFlags flags;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo SIR CDF and outage tables");
    auto* analyze = app.add_subcommand("analyze", "analytic CDF, rate and outage tables");
    auto* optimize = app.add_subcommand("optimize", "select the macro-diversity order L");
    auto* validate = app.add_subcommand("validate", "run the built-in oracle suite");
    auto* demo = app.add_subcommand("deliver-demo", "end-to-end coded caching + MDS round trip");
    for (auto* cmd : {simulate, analyze, optimize, validate, demo}) add_common_flags(cmd, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : edgecast::experiment::kExitConfigError;  // help exits clean
    }

    try {
        const ExperimentSpec spec = build_spec(flags);
        if (simulate->parsed()) return edgecast::experiment::run_simulate(spec);
        if (analyze->parsed()) return edgecast::experiment::run_analyze(spec);
        if (optimize->parsed()) return edgecast::experiment::run_optimize(spec);
        if (validate->parsed()) return edgecast::experiment::run_validate(spec);
        if (demo->parsed()) return edgecast::experiment::run_deliver_demo(spec);
        return edgecast::experiment::kExitConfigError;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return edgecast::experiment::kExitConfigError;
    } catch (const edgecast::io::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return edgecast::experiment::kExitIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return edgecast::experiment::kExitValidationFailure;
    }
}
