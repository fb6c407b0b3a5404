#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "edgecast/curve_table.hpp"
#include "edgecast/experiment.hpp"

using namespace edgecast;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("edgecast_test_" + name);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("number formatting is 12 significant digits") {
    CHECK(io::format_number(1.0) == "1");
    CHECK(io::format_number(0.1) == "0.1");
    CHECK(io::format_number(1234.5678901234567) == "1234.56789012");
    CHECK(io::format_number(1e-9) == "1e-09");
}

TEST_CASE("curve table enforces increasing abscissa and emits stable CSV") {
    io::CurveTable t("x", {"y1", "y2"});
    t.set_metadata("seed", "7");
    t.append(0.5, {1.0, 2.0});
    t.append(1.5, {3.0, 4.0});
    CHECK_THROWS(t.append(1.5, {0.0, 0.0}));  // not strictly increasing
    CHECK_THROWS(t.append(2.0, {0.0}));        // row width mismatch

    const std::string csv = t.to_csv();
    CHECK(csv == "# seed = 7\nx,y1,y2\n0.5,1,2\n1.5,3,4\n");
    CHECK(t.to_json().find("\"rows\"") != std::string::npos);
}

TEST_CASE("fnv hash is stable") {
    CHECK(io::fnv1a_hash("") == 0xcbf29ce484222325ULL);
    CHECK(io::fnv1a_hash("a") != io::fnv1a_hash("b"));
}

TEST_CASE("experiment spec: round trip, overrides, schema errors") {
    experiment::ExperimentSpec spec;
    spec.system.seed = 99;
    spec.geometry_trials = 1234;
    const auto text = spec.to_json_text();
    const auto parsed = experiment::ExperimentSpec::from_json_text(text);
    CHECK(parsed.system.seed == 99);
    CHECK(parsed.geometry_trials == 1234);
    CHECK(parsed.config_hash() == spec.config_hash());

    CHECK_THROWS_AS(experiment::ExperimentSpec::from_json_text("{\"bogus\": 1}"),
                    experiment::ConfigError);
    CHECK_THROWS_AS(experiment::ExperimentSpec::from_json_text("{\"receiver\": \"mrc\"}"),
                    experiment::ConfigError);
    CHECK_THROWS_AS(experiment::ExperimentSpec::from_json_text("not json"),
                    experiment::ConfigError);
    CHECK_THROWS_AS(
        experiment::ExperimentSpec::from_json_text("{\"system\": {\"eta\": 1.5}}"),
        experiment::ConfigError);
    CHECK_THROWS_AS(
        experiment::ExperimentSpec::from_json_text("{\"rate_grid\": {\"from\": 3, \"to\": 1}}"),
        experiment::ConfigError);
}

TEST_CASE("deliver-demo runs end to end and reports success") {
    experiment::ExperimentSpec spec;
    spec.out_dir = fresh_dir("demo").string();
    CHECK(experiment::run_deliver_demo(spec) == experiment::kExitOk);
    const auto report = slurp(fs::path(spec.out_dir) / "deliver_demo_report.txt");
    CHECK(report.find("3/3 users recovered") != std::string::npos);
    CHECK(report.find("10/10 MDS block subsets decode") != std::string::npos);
    CHECK(report.find("all checks passed") != std::string::npos);
}

TEST_CASE("optimize command writes planner artifacts") {
    experiment::ExperimentSpec spec;
    spec.out_dir = fresh_dir("opt").string();
    CHECK(experiment::run_optimize(spec) == experiment::kExitOk);
    const auto json_text = slurp(fs::path(spec.out_dir) / "planner_result.json");
    CHECK(json_text.find("\"selected_L\": 3") != std::string::npos);
    const auto csv = slurp(fs::path(spec.out_dir) / "planner_result.csv");
    CHECK(csv.find("# selected_L = 3") != std::string::npos);
    CHECK(slurp(fs::path(spec.out_dir) / "effective_config.json").find("\"nr\": 8") !=
          std::string::npos);
}

TEST_CASE("simulate is byte-identical across worker counts") {
    auto run = [&](int workers, const std::string& tag) {
        experiment::ExperimentSpec spec;
        spec.system.seed = 2024;
        spec.system.L = 3;
        spec.geometry_trials = 3000;
        spec.rate_grid = {0.3, 2.1, 7};
        spec.workers = workers;
        spec.out_dir = fresh_dir("sim_" + tag).string();
        REQUIRE(experiment::run_simulate(spec) == experiment::kExitOk);
        std::string all;
        for (const auto& name :
             {"sim_outage.csv", "sim_cdf_rho_l1.csv", "sim_cdf_rho_l2.csv", "sim_cdf_rho_l3.csv"})
            all += slurp(fs::path(spec.out_dir) / name);
        return all;
    };
    const auto bytes1 = run(1, "w1");
    const auto bytes2 = run(2, "w2");
    const auto bytes5 = run(5, "w5");
    CHECK(bytes1 == bytes2);
    CHECK(bytes1 == bytes5);
    // Worker count must not leak into the emitted provenance either.
    CHECK(bytes1.find("workers") == std::string::npos);
}

TEST_CASE("analyze emits the expected analytic tables") {
    experiment::ExperimentSpec spec;
    spec.system.L = 2;
    spec.rate_grid = {0.5, 2.0, 4};
    spec.out_dir = fresh_dir("ana").string();
    CHECK(experiment::run_analyze(spec) == experiment::kExitOk);
    for (const auto& name : {"cdf_rho_analytic_l1.csv", "cdf_rho_analytic_l2.csv",
                             "cdf_sir_tilde_l1.csv", "avg_rate_streams.csv", "rate_product.csv",
                             "outage_analytic.csv"}) {
        const auto body = slurp(fs::path(spec.out_dir) / name);
        CHECK(body.find("# config_hash = ") != std::string::npos);
        CHECK(body.find("# source = analytic") != std::string::npos);
    }
}

TEST_CASE("io errors surface as IoError") {
    CHECK_THROWS_AS(io::write_text_file("/nonexistent_dir_zz/x.csv", "data"), io::IoError);
}
