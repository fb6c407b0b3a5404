#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "edgecast/analysis.hpp"
#include "edgecast/geometry.hpp"
#include "edgecast/rng.hpp"
#include "support/oracles.hpp"

using namespace edgecast;

namespace {

geom::SystemConfig base_config() {
    geom::SystemConfig cfg;
    cfg.lambda_density = 8.0;
    cfg.eta = 3.75;
    cfg.n_r = 8;
    cfg.L = 4;
    cfg.area_radius_km = 3.0;
    return cfg;
}

}  // namespace

TEST_CASE("config invariants enforced") {
    auto cfg = base_config();
    CHECK_NOTHROW(cfg.validate());
    cfg.eta = 2.0;
    CHECK_THROWS(cfg.validate());
    cfg = base_config();
    cfg.L = 9;  // > n_r
    CHECK_THROWS(cfg.validate());
    cfg = base_config();
    cfg.lambda_density = 0.0;
    CHECK_THROWS(cfg.validate());
}

TEST_CASE("ppp sampling: mean count and nearest-distance law") {
    auto cfg = base_config();
    Rng rng(42);
    const long trials = 4000;
    const double mean_expected = cfg.lambda_density * M_PI * cfg.area_radius_km * cfg.area_radius_km;

    double count_sum = 0.0;
    std::vector<double> r1;
    r1.reserve(trials);
    for (long t = 0; t < trials; ++t) {
        const auto g = geom::sample_ppp(cfg, rng);
        count_sum += static_cast<double>(g.size());
        CHECK(std::is_sorted(g.sorted_distances.begin(), g.sorted_distances.end()));
        if (g.size() > 0) r1.push_back(g.sorted_distances.front());
    }
    const double mean = count_sum / trials;
    // Poisson mean lambda*pi*R^2, sample-mean tolerance ~5 sigma.
    CHECK(std::abs(mean - mean_expected) < 5.0 * std::sqrt(mean_expected / trials));

    // Empirical CDF of r_1 vs 1 - exp(-pi lambda v^2).
    std::sort(r1.begin(), r1.end());
    const double ks = oracles::ks_vs_cdf(r1, [&](double v) {
        return 1.0 - std::exp(-M_PI * cfg.lambda_density * v * v);
    });
    CHECK(ks < 1.36 / std::sqrt(static_cast<double>(r1.size())) * 1.6);
}

TEST_CASE("ppp sampling: tiny disk almost surely empty") {
    auto cfg = base_config();
    cfg.area_radius_km = 1e-4;
    Rng rng(7);
    int nonzero = 0;
    for (int t = 0; t < 1000; ++t) nonzero += geom::sample_ppp(cfg, rng).size() > 0;
    CHECK(nonzero == 0);  // mean count 2.5e-7
}

TEST_CASE("distance pdf normalization and mode") {
    // n = 1 integrates to 1.
    const double total1 = oracles::simpson_to_infinity(
        [](double v) { return geom::distance_pdf(1, 8.0, v); }, 0.0, 1e-12);
    CHECK(total1 == doctest::Approx(1.0).epsilon(1e-9));

    // Mode of the n = 1 density at 1/sqrt(2 pi lambda).
    const double lambda = 8.0;
    const double mode = 1.0 / std::sqrt(2.0 * M_PI * lambda);
    const double at_mode = geom::distance_pdf(1, lambda, mode);
    CHECK(at_mode > geom::distance_pdf(1, lambda, mode * 1.01));
    CHECK(at_mode > geom::distance_pdf(1, lambda, mode * 0.99));

    // n = 3, lambda = 1: quadrature oracle for the normalization.
    const double total3 = oracles::simpson_to_infinity(
        [](double v) { return geom::distance_pdf(3, 1.0, v); }, 0.0, 1e-13);
    CHECK(std::abs(total3 - 1.0) < 1e-10);
}

TEST_CASE("joint distance pdf: support, marginal, normalization") {
    CHECK(geom::joint_distance_pdf(1, 4, 8.0, 0.5, 0.3) == 0.0);  // u > v
    CHECK_THROWS(geom::joint_distance_pdf(3, 3, 8.0, 0.1, 0.2));  // ell >= n

    // Integrating u out of the joint pdf recovers the marginal of r_n.
    const double lambda = 8.0;
    for (double v : {0.2, 0.4, 0.7}) {
        const double marginal = oracles::simpson(
            [&](double u) { return geom::joint_distance_pdf(1, 4, lambda, u, v); }, 0.0, v,
            1e-12);
        CHECK(marginal == doctest::Approx(geom::distance_pdf(4, lambda, v)).epsilon(1e-8));
    }

    // Full double integral over 0 <= u <= v < inf equals 1 for (ell,n)=(1,4).
    const double total = oracles::simpson_triangle_to_infinity(
        [&](double u, double v) { return geom::joint_distance_pdf(1, 4, lambda, u, v); }, 2.0,
        1e-10);
    CHECK(std::abs(total - 1.0) < 1e-8);
}

TEST_CASE("expected interference closed form") {
    CHECK(geom::expected_interference(1.0 / M_PI, 4.0, 1.0) == doctest::Approx(1.0));
    CHECK(geom::expected_interference(2.0, 3.75, 0.5) ==
          doctest::Approx(2.0 * geom::expected_interference(1.0, 3.75, 0.5)));
    CHECK_THROWS(geom::expected_interference(8.0, 2.0, 1.0));
}

TEST_CASE("Campbell formula vs conditioned Monte Carlo") {
    // Mean of sum_{j>L} r_j^{-eta} conditioned on r_L near 0.2 km; compare
    // against 2 pi lambda/(eta-2) (r_L^{2-eta} - R^{2-eta}) per accepted
    // sample (the subtraction removes the finite-disk truncation).
    auto cfg = base_config();
    cfg.area_radius_km = 1.5;
    const int macro_l = 4;
    Rng rng(11);
    double mc_sum = 0.0, campbell_sum = 0.0;
    long hits = 0;
    for (long t = 0; t < 200000 && hits < 6000; ++t) {
        const auto g = geom::sample_ppp(cfg, rng);
        if (g.size() <= static_cast<std::size_t>(macro_l)) continue;
        const double r_l = g.sorted_distances[macro_l - 1];
        if (r_l < 0.18 || r_l > 0.22) continue;
        double interference = 0.0;
        for (std::size_t j = macro_l; j < g.size(); ++j)
            interference += std::pow(g.sorted_distances[j], -cfg.eta);
        mc_sum += interference;
        campbell_sum += geom::expected_interference(cfg.lambda_density, cfg.eta, r_l) -
                        geom::expected_interference(cfg.lambda_density, cfg.eta,
                                                    cfg.area_radius_km);
        ++hits;
    }
    REQUIRE(hits > 2000);
    CHECK(std::abs(mc_sum - campbell_sum) / campbell_sum < 0.02);
}

TEST_CASE("local-average SIR: exact form basics") {
    // Single interferer at the same distance as the served EN: ratio 1.
    auto g = geom::NetworkGeometry::from_points({{0.3, 0.0}, {0.0, 0.3}});
    CHECK(geom::local_avg_sir_exact(g, 1, 1, 3.75) == doctest::Approx(1.0));

    CHECK_THROWS(geom::local_avg_sir_exact(g, 1, 2, 3.75));  // needs > L points

    // Monotone in the stream index on every realization.
    auto cfg = base_config();
    Rng rng(3);
    for (int t = 0; t < 200; ++t) {
        long dummy = 0;
        const auto geo = geom::sample_ppp_min_points(cfg, 5, rng, dummy);
        double prev = std::numeric_limits<double>::infinity();
        for (int ell = 1; ell <= 4; ++ell) {
            const double rho = geom::local_avg_sir_exact(geo, ell, 4, cfg.eta);
            CHECK(rho <= prev * (1 + 1e-12));
            prev = rho;
        }
    }
}

TEST_CASE("local-average SIR: approximation identities") {
    const double lambda = 8.0, eta = 3.75;
    // Definitional identity against the Campbell mean.
    for (double r_ell : {0.1, 0.25}) {
        const double r_l = 0.4;
        const double direct = geom::local_avg_sir_approx(r_ell, r_l, lambda, eta);
        const double viamean =
            std::pow(r_ell, -eta) / geom::expected_interference(lambda, eta, r_l);
        CHECK(direct == doctest::Approx(viamean).epsilon(1e-14));
    }
    CHECK(geom::local_avg_sir_approx(1.0, 1.0, 1.0 / M_PI, 4.0) == doctest::Approx(1.0));
    CHECK_THROWS(geom::local_avg_sir_approx(0.5, 0.4, lambda, eta));  // r_ell > r_L
}

TEST_CASE("exact vs approximate SIR distributions (reduced Fig. 2 check)") {
    // The conditional-mean substitution is distribution-accurate for the
    // strongest stream and drifts for later ones; these bounds are the
    // converged Monte Carlo gaps (plus sampling margin) measured at
    // lambda=8, eta=3.75, L=4 on the 3 km disk.
    auto cfg = base_config();
    const int macro_l = 4;
    const long trials = 20000;
    Rng rng(5);
    std::vector<std::vector<double>> exact(macro_l), approx(macro_l);
    for (long t = 0; t < trials; ++t) {
        long dummy = 0;
        const auto g = geom::sample_ppp_min_points(cfg, macro_l + 1, rng, dummy);
        const double r_l = g.sorted_distances[macro_l - 1];
        for (int ell = 1; ell <= macro_l; ++ell) {
            exact[ell - 1].push_back(geom::local_avg_sir_exact(g, ell, macro_l, cfg.eta));
            approx[ell - 1].push_back(geom::local_avg_sir_approx(
                g.sorted_distances[ell - 1], r_l, cfg.lambda_density, cfg.eta));
        }
    }
    const double bound[4] = {0.030, 0.045, 0.058, 0.070};
    for (int ell = 1; ell <= macro_l; ++ell) {
        auto& a = exact[ell - 1];
        auto& b = approx[ell - 1];
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        const double lo = b[static_cast<std::size_t>(0.01 * trials)];
        const double hi = b[static_cast<std::size_t>(0.99 * trials)];
        const double ks = oracles::ks_two_sample(a, b, lo, hi);
        CHECK(ks <= bound[ell - 1]);
    }
}

TEST_CASE("approximate SIR Monte Carlo matches Euler-inverted CDF") {
    auto cfg = base_config();
    cfg.L = 2;
    const long trials = 20000;
    Rng rng(8);
    std::vector<std::vector<double>> samples(2);
    for (long t = 0; t < trials; ++t) {
        long dummy = 0;
        const auto g = geom::sample_ppp_min_points(cfg, 3, rng, dummy);
        for (int ell = 1; ell <= 2; ++ell)
            samples[ell - 1].push_back(geom::local_avg_sir_approx(
                g.sorted_distances[ell - 1], g.sorted_distances[1], cfg.lambda_density, cfg.eta));
    }
    analysis::EulerInversionParams params;
    for (int ell = 1; ell <= 2; ++ell) {
        auto& v = samples[ell - 1];
        std::sort(v.begin(), v.end());
        double worst = 0.0;
        for (double q = 0.02; q <= 0.98; q += 0.04) {
            const double x = v[static_cast<std::size_t>(q * trials)];
            const double analytic = analysis::cdf_rho_approx(x, ell, 2, cfg.eta, params);
            const double empirical =
                static_cast<double>(std::upper_bound(v.begin(), v.end(), x) - v.begin()) / trials;
            worst = std::max(worst, std::abs(analytic - empirical));
        }
        CHECK(worst < 0.015);  // 1e-3 inversion error + MC noise at 2e4 draws
    }
}

TEST_CASE("geometry JSON round trip") {
    auto cfg = base_config();
    Rng rng(123);
    const auto g = geom::sample_ppp(cfg, rng);
    const auto restored = geom::NetworkGeometry::from_json(g.to_json());
    REQUIRE(restored.size() == g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(restored.sorted_distances[i] == doctest::Approx(g.sorted_distances[i]).epsilon(1e-15));
}
