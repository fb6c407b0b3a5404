#include "edgecast/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "edgecast/coded_caching.hpp"
#include "edgecast/curve_table.hpp"
#include "edgecast/phy.hpp"
#include "edgecast/quadrature.hpp"
#include "edgecast/rng.hpp"
#include "edgecast/specfun.hpp"

namespace edgecast::experiment {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "edgecast 1.0.0";

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        if (std::find_if(known.begin(), known.end(),
                         [&](const char* k) { return key == k; }) == known.end())
            throw ConfigError("config: unknown key '" + key + "' in " + where);
    }
}

template <typename T>
void read_into(const json& j, const char* key, T& target) {
    if (j.contains(key)) {
        try {
            target = j.at(key).get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(std::string("config: bad value for '") + key + "': " + e.what());
        }
    }
}

analysis::Receiver parse_receiver(const std::string& name) {
    if (name == "pzf") return analysis::Receiver::kPzf;
    if (name == "pzf-sic") return analysis::Receiver::kPzfSic;
    throw ConfigError("config: receiver must be 'pzf' or 'pzf-sic'");
}

planner::Objective parse_objective(const std::string& name) {
    if (name == "average-rate") return planner::Objective::kAverageRate;
    if (name == "target-outage") return planner::Objective::kTargetOutage;
    throw ConfigError("config: objective must be 'average-rate' or 'target-outage'");
}

std::string hex64(std::uint64_t value) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

/// Runs fn(trial) for trial in [0, trials) across `workers` threads; each
/// trial must touch only its own output slots so results are
/// schedule-independent.
template <typename Fn>
void parallel_trials(long trials, int workers, Fn&& fn) {
    workers = std::max(1, workers);
    if (workers == 1) {
        for (long t = 0; t < trials; ++t) fn(t);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (long t = w; t < trials; t += workers) fn(t);
        });
    for (auto& th : pool) th.join();
}

double empirical_cdf(const std::vector<double>& sorted, double x) {
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
    return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
}

std::vector<double> log_spaced(double lo, double hi, int n) {
    std::vector<double> grid(static_cast<std::size_t>(n));
    const double step = (std::log(hi) - std::log(lo)) / (n - 1);
    for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = std::exp(std::log(lo) + i * step);
    return grid;
}

}  // namespace

std::vector<double> RateGrid::values() const {
    if (points < 2 || !(from > 0.0) || !(to > from))
        throw ConfigError("config: rate_grid needs 0 < from < to and points >= 2");
    std::vector<double> out(static_cast<std::size_t>(points));
    const double step = (to - from) / (points - 1);
    for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = from + i * step;
    return out;
}

ExperimentSpec ExperimentSpec::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    reject_unknown_keys(j,
                        {"system", "receiver", "euler", "objective", "target_outage",
                         "geometry_trials", "fading_trials", "workers", "out_dir",
                         "emit_per_trial", "per_trial_limit", "rate_grid", "l_list", "demo"},
                        "root");
    ExperimentSpec spec;
    if (j.contains("system")) {
        const auto& s = j.at("system");
        reject_unknown_keys(s,
                            {"lambda", "eta", "nr", "L", "area_radius_km", "beta_intercept",
                             "tx_power", "noise_power", "bandwidth_hz", "users", "library_files",
                             "cache_files", "file_bits", "seed"},
                            "system");
        read_into(s, "lambda", spec.system.lambda_density);
        read_into(s, "eta", spec.system.eta);
        read_into(s, "nr", spec.system.n_r);
        read_into(s, "L", spec.system.L);
        read_into(s, "area_radius_km", spec.system.area_radius_km);
        read_into(s, "beta_intercept", spec.system.beta_intercept);
        read_into(s, "tx_power", spec.system.tx_power);
        read_into(s, "noise_power", spec.system.noise_power);
        read_into(s, "bandwidth_hz", spec.system.bandwidth_hz);
        read_into(s, "users", spec.system.users);
        read_into(s, "library_files", spec.system.library_files);
        read_into(s, "cache_files", spec.system.cache_files);
        read_into(s, "file_bits", spec.system.file_bits);
        read_into(s, "seed", spec.system.seed);
    }
    if (j.contains("receiver")) spec.receiver = parse_receiver(j.at("receiver").get<std::string>());
    if (j.contains("euler")) {
        const auto& e = j.at("euler");
        reject_unknown_keys(e, {"A", "B", "G"}, "euler");
        read_into(e, "A", spec.euler.accuracy_a);
        read_into(e, "B", spec.euler.smoothing_b);
        read_into(e, "G", spec.euler.terms_g);
    }
    if (j.contains("objective"))
        spec.objective = parse_objective(j.at("objective").get<std::string>());
    read_into(j, "target_outage", spec.target_outage);
    read_into(j, "geometry_trials", spec.geometry_trials);
    read_into(j, "fading_trials", spec.fading_trials);
    read_into(j, "workers", spec.workers);
    read_into(j, "out_dir", spec.out_dir);
    read_into(j, "emit_per_trial", spec.emit_per_trial);
    read_into(j, "per_trial_limit", spec.per_trial_limit);
    if (j.contains("rate_grid")) {
        const auto& g = j.at("rate_grid");
        reject_unknown_keys(g, {"from", "to", "points"}, "rate_grid");
        read_into(g, "from", spec.rate_grid.from);
        read_into(g, "to", spec.rate_grid.to);
        read_into(g, "points", spec.rate_grid.points);
    }
    read_into(j, "l_list", spec.l_list);
    if (j.contains("demo")) {
        const auto& d = j.at("demo");
        reject_unknown_keys(d, {"users", "files", "cache", "blocks_total", "macro_l", "file_bits"},
                            "demo");
        read_into(d, "users", spec.demo_users);
        read_into(d, "files", spec.demo_files);
        read_into(d, "cache", spec.demo_cache);
        read_into(d, "blocks_total", spec.demo_blocks_total);
        read_into(d, "macro_l", spec.demo_macro_l);
        read_into(d, "file_bits", spec.demo_file_bits);
    }
    spec.validate();
    return spec;
}

std::string ExperimentSpec::to_json_text() const {
    json j;
    j["system"] = {{"lambda", system.lambda_density},
                   {"eta", system.eta},
                   {"nr", system.n_r},
                   {"L", system.L},
                   {"area_radius_km", system.area_radius_km},
                   {"beta_intercept", system.beta_intercept},
                   {"tx_power", system.tx_power},
                   {"noise_power", system.noise_power},
                   {"bandwidth_hz", system.bandwidth_hz},
                   {"users", system.users},
                   {"library_files", system.library_files},
                   {"cache_files", system.cache_files},
                   {"file_bits", system.file_bits},
                   {"seed", system.seed}};
    j["receiver"] = receiver == analysis::Receiver::kPzf ? "pzf" : "pzf-sic";
    j["euler"] = {{"A", euler.accuracy_a}, {"B", euler.smoothing_b}, {"G", euler.terms_g}};
    j["objective"] =
        objective == planner::Objective::kAverageRate ? "average-rate" : "target-outage";
    j["target_outage"] = target_outage;
    j["geometry_trials"] = geometry_trials;
    j["fading_trials"] = fading_trials;
    j["workers"] = workers;
    j["out_dir"] = out_dir;
    j["emit_per_trial"] = emit_per_trial;
    j["per_trial_limit"] = per_trial_limit;
    j["rate_grid"] = {{"from", rate_grid.from}, {"to", rate_grid.to}, {"points", rate_grid.points}};
    j["l_list"] = l_list;
    j["demo"] = {{"users", demo_users},         {"files", demo_files},
                 {"cache", demo_cache},         {"blocks_total", demo_blocks_total},
                 {"macro_l", demo_macro_l},     {"file_bits", demo_file_bits}};
    return j.dump(2);
}

std::uint64_t ExperimentSpec::config_hash() const {
    // Only result-affecting fields: workers, output paths and debug emission
    // must not change the hash (or the artifacts could never be byte-identical
    // across worker counts).
    json j = json::parse(to_json_text());
    j.erase("workers");
    j.erase("out_dir");
    j.erase("emit_per_trial");
    j.erase("per_trial_limit");
    return io::fnv1a_hash(j.dump());
}

void ExperimentSpec::validate() const {
    try {
        system.validate();
        euler.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (geometry_trials < 1) throw ConfigError("config: geometry_trials must be >= 1");
    if (fading_trials < 1) throw ConfigError("config: fading_trials must be >= 1");
    if (workers < 1 || workers > 512) throw ConfigError("config: workers must be in [1, 512]");
    if (!(target_outage > 0.0) || !(target_outage < 1.0))
        throw ConfigError("config: target_outage must be in (0, 1)");
    if (per_trial_limit < 1) throw ConfigError("config: per_trial_limit must be >= 1");
    (void)rate_grid.values();
    for (int l : l_list)
        if (l < 1 || l > system.n_r) throw ConfigError("config: l_list entries must be in [1, n_r]");
}

namespace {

/// Shared provenance stamp for every emitted artifact.
void stamp(io::CurveTable& table, const ExperimentSpec& spec, const std::string& source) {
    table.set_metadata("generator", kVersion);
    table.set_metadata("config_hash", hex64(spec.config_hash()));
    table.set_metadata("seed", std::to_string(spec.system.seed));
    table.set_metadata("source", source);
}

fs::path prepare_out_dir(const ExperimentSpec& spec) {
    fs::path dir(spec.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw io::IoError("cannot create output directory: " + dir.string());
    io::write_text_file((dir / "effective_config.json").string(), spec.to_json_text() + "\n");
    return dir;
}

struct SirSamples {
    // [ell-1][trial], sorted after collection
    std::vector<std::vector<double>> exact;
    std::vector<std::vector<double>> tilde;
    long resampled = 0;
};

SirSamples collect_sir_samples(const ExperimentSpec& spec) {
    const auto& cfg = spec.system;
    const int macro_l = cfg.L;
    const long trials = spec.geometry_trials;
    SirSamples s;
    s.exact.assign(static_cast<std::size_t>(macro_l),
                   std::vector<double>(static_cast<std::size_t>(trials)));
    s.tilde.assign(static_cast<std::size_t>(macro_l),
                   std::vector<double>(static_cast<std::size_t>(trials)));
    std::vector<long> resampled(static_cast<std::size_t>(trials), 0);

    parallel_trials(trials, spec.workers, [&](long t) {
        Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(t));
        long local = 0;
        const auto g = geom::sample_ppp_min_points(cfg, static_cast<std::size_t>(macro_l) + 1,
                                                   rng, local);
        resampled[static_cast<std::size_t>(t)] = local;
        const auto& r = g.sorted_distances;
        const double r_l = r[static_cast<std::size_t>(macro_l - 1)];
        for (int ell = 1; ell <= macro_l; ++ell) {
            s.exact[static_cast<std::size_t>(ell - 1)][static_cast<std::size_t>(t)] =
                geom::local_avg_sir_exact(g, ell, macro_l, cfg.eta);
            s.tilde[static_cast<std::size_t>(ell - 1)][static_cast<std::size_t>(t)] =
                geom::local_avg_sir_approx(r[static_cast<std::size_t>(ell - 1)], r_l,
                                           cfg.lambda_density, cfg.eta);
        }
    });
    for (long v : resampled) s.resampled += v;
    return s;
}

}  // namespace

int run_simulate(const ExperimentSpec& spec) {
    const auto dir = prepare_out_dir(spec);
    const auto& cfg = spec.system;
    const int macro_l = cfg.L;

    SirSamples samples = collect_sir_samples(spec);

    // Per-trial debug records: replay the first trials' streams to recover
    // the distances (the bulk pass keeps only the SIR values).
    if (spec.emit_per_trial) {
        std::string csv;
        csv += "# generator = " + std::string(kVersion) + "\n";
        csv += "# config_hash = " + hex64(spec.config_hash()) + "\n";
        csv += "# seed = " + std::to_string(cfg.seed) + "\n";
        csv += "trial,ell,r_ell_km,rho_tilde,qlb_rate\n";
        const long limit = std::min<long>(spec.per_trial_limit, spec.geometry_trials);
        for (long t = 0; t < limit; ++t) {
            Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(t));
            long dummy = 0;
            const auto g = geom::sample_ppp_min_points(cfg, static_cast<std::size_t>(macro_l) + 1,
                                                       rng, dummy);
            const double r_l = g.sorted_distances[static_cast<std::size_t>(macro_l - 1)];
            for (int ell = 1; ell <= macro_l; ++ell) {
                const double r_ell = g.sorted_distances[static_cast<std::size_t>(ell - 1)];
                const double rho = geom::local_avg_sir_approx(r_ell, r_l, cfg.lambda_density,
                                                              cfg.eta);
                const int order = (spec.receiver == analysis::Receiver::kPzf)
                                      ? cfg.n_r - macro_l + 1
                                      : cfg.n_r - macro_l + ell;
                csv += std::to_string(t) + "," + std::to_string(ell) + "," +
                       io::format_number(r_ell) + "," + io::format_number(rho) + "," +
                       io::format_number(analysis::qlb_rate_for_order(rho, order)) + "\n";
            }
        }
        io::write_text_file((dir / "sim_per_trial.csv").string(), csv);
    }

    // Outage curve needs the joint per-trial samples; run it before sorting.
    // A stream is in outage exactly when rho~_ell falls at or below the
    // rate's qlb threshold (the qlb rate is strictly increasing in rho~).
    const long trials = spec.geometry_trials;
    io::CurveTable outage("rate_bps_hz", {"outage_min", "outage_last_stream", "std_error"});
    stamp(outage, spec, "monte-carlo trials=" + std::to_string(trials));
    outage.set_metadata("receiver",
                        spec.receiver == analysis::Receiver::kPzf ? "pzf" : "pzf-sic");
    for (double rate : spec.rate_grid.values()) {
        std::vector<double> thresholds(static_cast<std::size_t>(macro_l));
        for (int ell = 1; ell <= macro_l; ++ell) {
            const int order = (spec.receiver == analysis::Receiver::kPzf)
                                  ? cfg.n_r - macro_l + 1
                                  : cfg.n_r - macro_l + ell;
            thresholds[static_cast<std::size_t>(ell - 1)] = analysis::qlb_rate_inverse(rate, order);
        }
        long n_min = 0, n_last = 0;
        for (long t = 0; t < trials; ++t) {
            bool any = false;
            for (int ell = 1; ell <= macro_l; ++ell)
                if (samples.tilde[static_cast<std::size_t>(ell - 1)][static_cast<std::size_t>(t)] <=
                    thresholds[static_cast<std::size_t>(ell - 1)])
                    any = true;
            n_min += any;
            n_last += samples.tilde[static_cast<std::size_t>(macro_l - 1)]
                                   [static_cast<std::size_t>(t)] <=
                      thresholds[static_cast<std::size_t>(macro_l - 1)];
        }
        const double p_min = static_cast<double>(n_min) / static_cast<double>(trials);
        const double p_last = static_cast<double>(n_last) / static_cast<double>(trials);
        outage.append(rate, {p_min, p_last, std::sqrt(p_min * (1 - p_min) / trials)});
    }
    io::write_text_file((dir / "sim_outage.csv").string(), outage.to_csv());

    // Empirical CDFs of the exact and approximate local-average SIR per stream.
    for (auto& v : samples.exact) std::sort(v.begin(), v.end());
    for (auto& v : samples.tilde) std::sort(v.begin(), v.end());
    for (int ell = 1; ell <= macro_l; ++ell) {
        const auto& ex = samples.exact[static_cast<std::size_t>(ell - 1)];
        const auto& ti = samples.tilde[static_cast<std::size_t>(ell - 1)];
        const double lo = std::min(ex[static_cast<std::size_t>(ex.size() / 200)],
                                   ti[static_cast<std::size_t>(ti.size() / 200)]);
        const double hi = std::max(ex[static_cast<std::size_t>(ex.size() - 1 - ex.size() / 200)],
                                   ti[static_cast<std::size_t>(ti.size() - 1 - ti.size() / 200)]);
        io::CurveTable table("gamma", {"cdf_rho_exact", "cdf_rho_tilde"});
        stamp(table, spec, "monte-carlo trials=" + std::to_string(spec.geometry_trials));
        table.set_metadata("ell", std::to_string(ell));
        table.set_metadata("resampled_geometries", std::to_string(samples.resampled));
        for (double g : log_spaced(lo, hi, 121))
            table.append(g, {empirical_cdf(ex, g), empirical_cdf(ti, g)});
        io::write_text_file((dir / ("sim_cdf_rho_l" + std::to_string(ell) + ".csv")).string(),
                            table.to_csv());
    }

    std::cout << "simulate: wrote " << macro_l << " CDF tables and sim_outage.csv to " << dir
              << " (resampled " << samples.resampled << " geometries)\n";
    return kExitOk;
}

int run_analyze(const ExperimentSpec& spec) {
    const auto dir = prepare_out_dir(spec);
    const auto& cfg = spec.system;
    const int macro_l = cfg.L;
    analysis::EulerDiagnostics diag;

    const auto gamma_grid = log_spaced(1e-2, 1e3, 181);
    for (int ell = 1; ell <= macro_l; ++ell) {
        io::CurveTable rho("gamma", {"cdf_rho_tilde"});
        stamp(rho, spec, "analytic");
        rho.set_metadata("ell", std::to_string(ell));
        io::CurveTable sir("gamma", {"cdf_sir_tilde"});
        stamp(sir, spec, "analytic");
        sir.set_metadata("ell", std::to_string(ell));
        for (double g : gamma_grid) {
            rho.append(g, {analysis::cdf_rho_approx(g, ell, macro_l, cfg.eta, spec.euler, &diag)});
            sir.append(g, {analysis::cdf_sir_tilde(g, ell, macro_l, cfg.n_r, cfg.eta)});
        }
        io::write_text_file((dir / ("cdf_rho_analytic_l" + std::to_string(ell) + ".csv")).string(),
                            rho.to_csv());
        io::write_text_file((dir / ("cdf_sir_tilde_l" + std::to_string(ell) + ".csv")).string(),
                            sir.to_csv());
    }

    io::CurveTable per_stream("ell", {"avg_rate_lb"});
    stamp(per_stream, spec, "analytic");
    for (int ell = 1; ell <= macro_l; ++ell)
        per_stream.append(ell, {analysis::avg_rate_stream(ell, macro_l, cfg.n_r, cfg.eta)});
    io::write_text_file((dir / "avg_rate_streams.csv").string(), per_stream.to_csv());

    io::CurveTable product("L", {"avg_rate_pzf", "product_pzf", "avg_rate_pzf_sic", "product_sic"});
    stamp(product, spec, "analytic");
    for (int l = 1; l <= cfg.n_r; ++l) {
        const double pzf = analysis::avg_rate_pzf(l, cfg.n_r, cfg.eta);
        const double sic = analysis::avg_rate_pzf_sic(l, cfg.n_r, cfg.eta);
        product.append(l, {pzf, l * pzf, sic, l * sic});
    }
    io::write_text_file((dir / "rate_product.csv").string(), product.to_csv());

    io::CurveTable outage("rate_bps_hz", {"outage"});
    stamp(outage, spec, "analytic");
    outage.set_metadata("receiver",
                        spec.receiver == analysis::Receiver::kPzf ? "pzf" : "pzf-sic");
    for (double rate : spec.rate_grid.values())
        outage.append(rate, {analysis::outage_analytic(rate, macro_l, cfg.n_r, cfg.eta, spec.euler,
                                                       spec.receiver)});
    outage.set_metadata("euler_clamped",
                        std::to_string(diag.clamped_low + diag.clamped_high));
    io::write_text_file((dir / "outage_analytic.csv").string(), outage.to_csv());

    std::cout << "analyze: wrote CDF, rate and outage tables to " << dir << " (clamped "
              << diag.clamped_low + diag.clamped_high << " Euler values)\n";
    return kExitOk;
}

int run_optimize(const ExperimentSpec& spec) {
    const auto dir = prepare_out_dir(spec);
    planner::PlanConfig plan;
    plan.n_r = spec.system.n_r;
    plan.eta = spec.system.eta;
    plan.receiver = spec.receiver;
    plan.objective = spec.objective;
    plan.target_outage = spec.target_outage;
    plan.file_bits = static_cast<double>(spec.system.file_bits);
    plan.bandwidth_hz = spec.system.bandwidth_hz;
    plan.users = spec.system.users;
    plan.mu = spec.system.cache_fraction();
    plan.euler = spec.euler;

    const planner::PlannerResult result = planner::optimize_l(plan);
    io::write_text_file((dir / "planner_result.json").string(), result.to_json() + "\n");

    io::CurveTable table("L", {"rate_at_target_outage", "avg_rate", "product_LR", "latency_s"});
    stamp(table, spec, "analytic");
    table.set_metadata("selected_L", std::to_string(result.selected_l));
    for (const auto& r : result.records)
        table.append(r.macro_l, {r.rate_at_target_outage, r.avg_rate, r.product_lr, r.latency_s});
    io::write_text_file((dir / "planner_result.csv").string(), table.to_csv());

    std::cout << "optimize: selected L = " << result.selected_l << " ("
              << (spec.receiver == analysis::Receiver::kPzf ? "pzf" : "pzf-sic") << ", "
              << (spec.objective == planner::Objective::kAverageRate ? "average-rate"
                                                                     : "target-outage")
              << "); tables in " << dir << "\n";
    return kExitOk;
}

int run_deliver_demo(const ExperimentSpec& spec) {
    const auto dir = prepare_out_dir(spec);
    const int users = spec.demo_users;
    const int files = spec.demo_files;
    const int cache = spec.demo_cache;
    const int n_total = spec.demo_blocks_total;
    const int k_data = spec.demo_macro_l;
    if (spec.demo_file_bits % 8 != 0) throw ConfigError("demo: file_bits must be a byte multiple");

    std::string report;
    bool all_ok = true;
    auto note = [&](bool ok, const std::string& line) {
        all_ok = all_ok && ok;
        report += std::string(ok ? "[ok] " : "[FAIL] ") + line + "\n";
    };

    try {
        const auto library = caching::Library::random(
            files, static_cast<std::size_t>(spec.demo_file_bits / 8), spec.system.seed);
        const auto assign = caching::place_caches(users, files, cache, library);
        note(assign.cached_bits_per_user() ==
                 static_cast<std::int64_t>(cache) * library.file_bits(),
             "per-user cache is exactly MF bits (" +
                 std::to_string(assign.cached_bits_per_user()) + ")");

        std::vector<int> demand(static_cast<std::size_t>(users));
        for (int k = 0; k < users; ++k) demand[static_cast<std::size_t>(k)] = k % files;
        const auto codeword = caching::build_multicast_codeword(demand, assign, library);
        const auto expect_bits = caching::codeword_length_bits(
            users, cache, files, library.file_bits());
        note(codeword.total_bits == expect_bits,
             "codeword length matches F K (1-mu)/(1+K mu): " +
                 std::to_string(codeword.total_bits) + " bits");

        int recovered = 0;
        for (int k = 0; k < users; ++k) {
            const auto file = caching::recover_file(k, codeword, assign, demand);
            recovered += (file == library.file(demand[static_cast<std::size_t>(k)]));
        }
        note(recovered == users,
             std::to_string(recovered) + "/" + std::to_string(users) + " users recovered their file");

        const auto mds = caching::mds_encode(codeword, k_data, n_total);
        const auto payload = codeword.concatenated();
        const auto index_subsets = caching::subsets_lex(n_total, k_data);
        int decoded = 0;
        for (const auto& subset : index_subsets) {
            std::vector<std::pair<int, caching::Bytes>> gathered;
            for (int idx : subset)
                gathered.emplace_back(idx, mds.blocks[static_cast<std::size_t>(idx)]);
            decoded += (caching::mds_decode(gathered, k_data, n_total, mds.total_bits) == payload);
        }
        note(decoded == static_cast<int>(index_subsets.size()),
             std::to_string(decoded) + "/" + std::to_string(index_subsets.size()) +
                 " MDS block subsets decode the codeword");

        const auto wire = mds.serialize();
        const auto parsed = caching::MdsBlockSet::deserialize(wire, k_data, mds.total_bits);
        note(parsed.blocks == mds.blocks, "wire framing round-trips");
    } catch (const std::exception& e) {
        note(false, std::string("exception: ") + e.what());
    }

    report += all_ok ? "deliver-demo: all checks passed\n" : "deliver-demo: FAILURES above\n";
    io::write_text_file((dir / "deliver_demo_report.txt").string(), report);
    std::cout << report;
    return all_ok ? kExitOk : kExitValidationFailure;
}

}  // namespace edgecast::experiment
