#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "edgecast/rng.hpp"
#include "edgecast/specfun.hpp"
#include "support/oracles.hpp"

using edgecast::specfun::ergodic_log_moment;
using edgecast::specfun::exp_integral_e1;
using edgecast::specfun::exp_scaled_e1;
using edgecast::specfun::hyp2f1;
using edgecast::specfun::upper_incomplete_gamma;
using Complex = std::complex<double>;

TEST_CASE("hyp2f1 basic values") {
    CHECK(hyp2f1(4.0, 0.8, 1.8, Complex(0.0, 0.0)).real() == doctest::Approx(1.0).epsilon(1e-14));
    // 2F1(1,1;2;z) = -ln(1-z)/z at z = -1.
    CHECK(hyp2f1(1.0, 1.0, 2.0, -1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("hyp2f1 complex argument vs series-after-Pfaff oracle") {
    const Complex z(-3.0, 2.0);
    const Complex got = hyp2f1(4.0, 0.8, 1.8, z);
    const Complex want = oracles::hyp2f1_series(4.0, 0.8, 1.8, z);
    CHECK(std::abs(got - want) <= 1e-10 * std::abs(want));
}

TEST_CASE("hyp2f1 large-argument regimes vs Euler-integral oracle") {
    // c = b + 1 makes 2F1(a,b;b+1;z) = b * int_0^1 t^{b-1} (1-zt)^{-a} dt;
    // evaluate that with the independent Simpson integrator (u = t^b when
    // the endpoint is singular, direct otherwise so the 1/|z| layer stays
    // resolvable).
    auto oracle = [](double a, double b, Complex z) {
        const bool substitute = b < 1.0;
        auto f = [&](double u, bool real_part) {
            const double t = substitute ? std::pow(u, 1.0 / b) : u;
            const Complex core = std::pow(Complex(1.0, 0.0) - z * t, -a);
            const Complex v = substitute ? core : b * std::pow(t, b - 1.0) * core;
            return real_part ? v.real() : v.imag();
        };
        // Piecewise-dyadic panels down below the 1/|z| layer so the adaptive
        // rule cannot converge on an unsampled spike.
        std::vector<double> breaks{1.0};
        for (double t = 0.5; t > 0.1 / std::max(2.0, std::abs(z)); t *= 0.5)
            breaks.push_back(substitute ? std::pow(t, b) : t);
        breaks.push_back(0.0);
        Complex acc(0.0, 0.0);
        for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
            acc += Complex(oracles::simpson([&](double u) { return f(u, true); }, breaks[i + 1],
                                            breaks[i], 1e-15, 60),
                           oracles::simpson([&](double u) { return f(u, false); }, breaks[i + 1],
                                            breaks[i], 1e-15, 60));
        }
        return acc;
    };
    for (const Complex z : {Complex(-40.0, 0.0), Complex(-200.0, 377.0), Complex(-1e6, 2e6),
                            Complex(0.0, -50.0), Complex(-3e9, 1e9)}) {
        for (const auto& [a, b] : std::initializer_list<std::pair<double, double>>{
                 {4.0, 0.533333333333}, {8.0, 1.6}, {3.0, 2.13333333333}}) {
            const Complex got = hyp2f1(a, b, b + 1.0, z);
            const Complex want = oracle(a, b, z);
            // The 5e-15 floor is the oracle's own panel-cancellation noise;
            // tiny function values at extreme |z| cannot be resolved more
            // finely in double precision.
            CHECK(std::abs(got - want) <= 1e-9 * std::abs(want) + 5e-15);
        }
    }
}

TEST_CASE("hyp2f1 degenerate integer a-b falls back cleanly") {
    // a - b integer breaks the 1/z connection formula; the Euler-integral
    // path must take over seamlessly. 2F1(5,2;3;z) = 2 int_0^1 t (1-zt)^{-5} dt.
    const Complex z(-150.0, 90.0);
    const Complex got = hyp2f1(5.0, 2.0, 3.0, z);
    auto f = [&](double t, bool real_part) {
        const Complex v = 2.0 * t * std::pow(Complex(1.0, 0.0) - z * t, -5.0);
        return real_part ? v.real() : v.imag();
    };
    const Complex want(
        oracles::simpson([&](double t) { return f(t, true); }, 0.0, 1.0, 1e-14, 64),
        oracles::simpson([&](double t) { return f(t, false); }, 0.0, 1.0, 1e-14, 64));
    CHECK(std::abs(got - want) <= 1e-9 * std::abs(want));
}

TEST_CASE("hyp2f1 contiguous relation in a (DLMF 15.5.11)") {
    edgecast::Rng rng(1234);
    for (int i = 0; i < 60; ++i) {
        const double a = 0.3 + 4.0 * rng.uniform();
        const double b = 0.3 + 4.0 * rng.uniform();
        const double c = a + b + 0.2 + 2.0 * rng.uniform();  // keep parameters tame
        const Complex z(-4.0 * rng.uniform(), 4.0 * (rng.uniform() - 0.5));
        const Complex lhs = (c - a) * hyp2f1(a - 1.0, b, c, z) +
                            (2.0 * a - c + (b - a) * z) * hyp2f1(a, b, c, z) +
                            a * (z - 1.0) * hyp2f1(a + 1.0, b, c, z);
        const double scale = std::abs(hyp2f1(a, b, c, z));
        CHECK(std::abs(lhs) <= 1e-8 * std::max(1.0, scale));
    }
}

TEST_CASE("hyp2f1 rejects unsupported regimes") {
    CHECK_THROWS(hyp2f1(1.0, 1.0, -2.0, Complex(0.5, 0.0)));   // c non-positive integer
    CHECK_THROWS(hyp2f1(1.0, 1.0, 2.0, Complex(1.5, 0.0)));    // real z >= 1
}

TEST_CASE("upper incomplete gamma") {
    CHECK(upper_incomplete_gamma(1, 0.0) == doctest::Approx(1.0));
    CHECK(upper_incomplete_gamma(1, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(upper_incomplete_gamma(5, 0.0) == doctest::Approx(24.0).epsilon(1e-14));
    const double want =
        oracles::simpson_to_infinity([](double t) { return t * t * std::exp(-t); }, 2.5, 1e-14);
    CHECK(upper_incomplete_gamma(3, 2.5) == doctest::Approx(want).epsilon(1e-12));
    CHECK_THROWS(upper_incomplete_gamma(0, 1.0));
}

TEST_CASE("exponential integral E1") {
    const double want =
        oracles::simpson_to_infinity([](double t) { return std::exp(-t) / t; }, 1.0, 1e-14);
    CHECK(exp_integral_e1(1.0) == doctest::Approx(want).epsilon(1e-12));
    CHECK(exp_integral_e1(1.0) == doctest::Approx(0.21938393439552).epsilon(1e-10));

    // Standard bracket e^{-x} x/(x^2+x+...) style: e^{-x}/(x+1) < E1(x) < e^{-x}/x.
    const double x = 50.0;
    CHECK(exp_integral_e1(x) < std::exp(-x) / x);
    CHECK(exp_integral_e1(x) > std::exp(-x) / (x + 1.0));

    double prev = exp_integral_e1(0.05);
    for (double t = 0.1; t < 30.0; t *= 1.4) {
        const double cur = exp_integral_e1(t);
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK_THROWS(exp_integral_e1(0.0));
}

TEST_CASE("ergodic log moment: trivial and derived values") {
    CHECK(ergodic_log_moment(3, 0.0) == 0.0);

    // M = 1, mu = 1: E[ln(1+X)], X unit-mean exponential (= e E1(1)).
    const double want = oracles::simpson_to_infinity(
        [](double t) { return std::log1p(t) * std::exp(-t); }, 0.0, 1e-13);
    CHECK(ergodic_log_moment(1, 1.0) == doctest::Approx(want).epsilon(1e-12));
    CHECK(ergodic_log_moment(1, 1.0) == doctest::Approx(0.596347362323).epsilon(1e-10));
}

TEST_CASE("ergodic log moment vs Monte Carlo (M=3, mu=0.7)") {
    edgecast::Rng rng(99);
    const long trials = 2000000;
    double sum = 0.0, sum_sq = 0.0;
    for (long i = 0; i < trials; ++i) {
        const double x = rng.exponential() + rng.exponential() + rng.exponential();
        const double v = std::log1p(0.7 * x);
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / trials;
    const double se = std::sqrt((sum_sq / trials - mean * mean) / trials);
    CHECK(std::abs(ergodic_log_moment(3, 0.7) - mean) <= 3.0 * se);
}

TEST_CASE("ergodic log moment stays accurate where the literal closed form cancels") {
    // Gamma-weighted quadrature oracle, independent integrator.
    auto oracle = [](int m, double mu) {
        const double lg = std::lgamma(static_cast<double>(m));
        return oracles::simpson_to_infinity(
            [&](double t) {
                if (t <= 0.0) return 0.0;
                return std::log1p(mu * t) * std::exp((m - 1) * std::log(t) - t - lg);
            },
            0.0, 1e-14);
    };
    for (const auto& [m, mu] : std::initializer_list<std::pair<int, double>>{
             {16, 1e-3}, {16, 1e-6}, {5, 1e-4}, {8, 0.05}, {13, 3.3}, {16, 100.0}, {9, 0.13}}) {
        const double want = oracle(m, mu);
        CHECK(ergodic_log_moment(m, mu) == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("ergodic log moment monotone in order and argument") {
    double prev_mu = 0.0;
    for (double mu = 0.01; mu < 300.0; mu *= 3.0) {
        const double v = ergodic_log_moment(4, mu);
        CHECK(v > prev_mu);
        prev_mu = v;
        double prev_m = 0.0;
        for (int m = 1; m <= 16; ++m) {
            const double w = ergodic_log_moment(m, mu);
            CHECK(w > prev_m);
            prev_m = w;
        }
    }
}

TEST_CASE("scaled E1 consistent with E1") {
    for (double x : {0.2, 0.9, 1.1, 4.0, 30.0}) {
        CHECK(exp_scaled_e1(x) ==
              doctest::Approx(std::exp(x) * exp_integral_e1(x)).epsilon(1e-12));
    }
}
