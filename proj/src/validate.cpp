#include <cmath>
#include <complex>
#include <iostream>
#include <vector>

#include "edgecast/analysis.hpp"
#include "edgecast/coded_caching.hpp"
#include "edgecast/curve_table.hpp"
#include "edgecast/experiment.hpp"
#include "edgecast/geometry.hpp"
#include "edgecast/phy.hpp"
#include "edgecast/quadrature.hpp"
#include "edgecast/rng.hpp"
#include "edgecast/specfun.hpp"

namespace edgecast::experiment {

namespace {

struct Suite {
    int failures = 0;

    void check(const std::string& name, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "PASS " : "FAIL ") << name;
        if (!detail.empty()) std::cout << " (" << detail << ")";
        std::cout << "\n";
        if (!ok) ++failures;
    }
};

std::string num(double v) { return io::format_number(v); }

}  // namespace

int run_validate(const ExperimentSpec& spec) {
    using specfun::hyp2f1;
    Suite suite;
    const double eta = spec.system.eta;

    {  // hypergeometric identities
        const double v = hyp2f1(1.0, 1.0, 2.0, -1.0);
        suite.check("hyp2f1 log identity", std::abs(v - std::log(2.0)) < 1e-12,
                    "2F1(1,1;2;-1) = " + num(v));
        // Gauss contiguous relation (DLMF 15.5.11) at a complex point.
        const std::complex<double> z(-1.3, 0.7);
        const double a = 2.5, b = 0.8, c = 1.9;
        const auto res = (c - a) * hyp2f1(a - 1, b, c, z) +
                         (2 * a - c + (b - a) * z) * hyp2f1(a, b, c, z) +
                         (a * (z - 1.0)) * hyp2f1(a + 1, b, c, z);
        suite.check("hyp2f1 contiguous relation", std::abs(res) < 1e-10,
                    "residual " + num(std::abs(res)));
    }

    {  // exponential-law inversion oracle (ell = L = 1, eta = 4)
        double worst = 0.0;
        for (double g = 0.1; g <= 10.0; g *= 1.35) {
            const double approx = analysis::cdf_rho_approx(g, 1, 1, 4.0, spec.euler);
            worst = std::max(worst, std::abs(approx - std::exp(-1.0 / g)));
        }
        suite.check("euler inversion vs exponential law", worst <= 1e-3, "max dev " + num(worst));
    }

    {  // Erlang identity at ell = L: 1/rho~_L is alpha2 * Gamma(L,1)
        const int l = spec.system.L;
        const double alpha2 = 2.0 / (eta - 2.0);
        double worst = 0.0;
        for (double g = 0.05; g <= 20.0; g *= 1.5) {
            const double approx = analysis::cdf_rho_approx(g, l, l, eta, spec.euler);
            const double exact =
                specfun::upper_incomplete_gamma_regularized(l, 1.0 / (alpha2 * g));
            worst = std::max(worst, std::abs(approx - exact));
        }
        suite.check("euler inversion vs Erlang law", worst <= 2e-3, "max dev " + num(worst));
    }

    {  // Laplace transform basics
        double worst = 0.0;
        for (int l = 1; l <= 4; ++l)
            for (int ell = 1; ell <= l; ++ell)
                worst = std::max(worst,
                                 std::abs(analysis::laplace_inv_rho({0.0, 0.0}, ell, l, eta) -
                                          std::complex<double>(1.0, 0.0)));
        suite.check("laplace transform at s=0 is 1", worst <= 1e-10, "max dev " + num(worst));
        const auto v = analysis::laplace_inv_rho({2.0, 0.0}, 1, 1, 4.0);
        suite.check("laplace ell=L=1, eta=4 is 1/(1+s)", std::abs(v - 1.0 / 3.0) < 1e-12,
                    num(v.real()));
    }

    {  // worst-stream closed form vs quadrature of the complementary CDF
        const int l = spec.system.L, n_r = spec.system.n_r;
        const double closed = analysis::avg_rate_pzf(l, n_r, eta);
        auto ccdf = [&](double rate) {
            return 1.0 - analysis::cdf_sir_tilde(std::exp2(rate) - 1.0, l, l, n_r, eta);
        };
        double upper = 10.0;
        while (ccdf(upper) > 1e-11 && upper < 220.0) upper *= 2.0;
        const double quad = integrate(ccdf, 0.0, upper, 1e-9, 60).value;
        suite.check("avg rate closed form vs quadrature", std::abs(closed - quad) <= 1e-6,
                    num(closed) + " vs " + num(quad));
    }

    {  // I_M against its Frullani-integral representation
        double worst = 0.0;
        for (const auto& [m, mu] : std::vector<std::pair<int, double>>{
                 {1, 1.0}, {3, 0.7}, {5, 25.0}, {13, 0.02}, {16, 1e-3}}) {
            const double direct = specfun::ergodic_log_moment(m, mu);
            auto f = [&](double z) {
                if (z <= 0.0) return mu * m;  // limit of the integrand at 0
                return std::exp(-z) * (1.0 - std::pow(1.0 + mu * z, -m)) / z;
            };
            const double frullani = integrate_to_infinity(f, 0.0, 1e-12, 60).value;
            worst = std::max(worst, std::abs(direct - frullani) / std::max(frullani, 1e-12));
        }
        suite.check("ergodic log-moment vs Frullani integral", worst <= 1e-8,
                    "max rel dev " + num(worst));
    }

    {  // coded caching + MDS end to end (K=4, N=2, M=1 -> t=2)
        bool ok = true;
        const auto library = caching::Library::random(2, 96, 7);
        const auto assign = caching::place_caches(4, 2, 1, library);
        for (int mask = 0; mask < 16 && ok; ++mask) {
            std::vector<int> demand{mask & 1, (mask >> 1) & 1, (mask >> 2) & 1, (mask >> 3) & 1};
            const auto cw = caching::build_multicast_codeword(demand, assign, library);
            for (int k = 0; k < 4; ++k)
                ok = ok && caching::recover_file(k, cw, assign, demand) ==
                               library.file(demand[static_cast<std::size_t>(k)]);
        }
        suite.check("coded caching exhaustive demands (K=4, N=2)", ok);

        const auto cw = caching::build_multicast_codeword({0, 1, 0, 1}, assign, library);
        const auto mds = caching::mds_encode(cw, 2, 5);
        const auto payload = cw.concatenated();
        bool mds_ok = true;
        for (const auto& subset : caching::subsets_lex(5, 2)) {
            std::vector<std::pair<int, caching::Bytes>> got;
            for (int i : subset) got.emplace_back(i, mds.blocks[static_cast<std::size_t>(i)]);
            mds_ok = mds_ok && caching::mds_decode(got, 2, 5, mds.total_bits) == payload;
        }
        suite.check("MDS all-subset decode (L=2, N_E=5)", mds_ok);
    }

    {  // Campbell mean interference vs conditioned Monte Carlo
        geom::SystemConfig cfg = spec.system;
        cfg.validate();
        Rng rng(spec.system.seed + 17);
        const double r_cond = 0.2;
        double acc = 0.0;
        long n = 0;
        const long trials = 20000;
        for (long t = 0; t < trials; ++t) {
            const auto g = geom::sample_ppp(cfg, rng);
            // Condition on r_L ~= r_cond by keeping interference from points
            // beyond r_cond (Campbell over the complement disk).
            double i_sum = 0.0;
            for (double r : g.sorted_distances)
                if (r > r_cond) i_sum += std::pow(r, -cfg.eta);
            acc += i_sum;
            ++n;
        }
        const double mc = acc / static_cast<double>(n);
        // Finite-disk correction: subtract the expected tail beyond the disk.
        const double campbell = geom::expected_interference(cfg.lambda_density, cfg.eta, r_cond) -
                                geom::expected_interference(cfg.lambda_density, cfg.eta,
                                                            cfg.area_radius_km);
        const double rel = std::abs(mc - campbell) / campbell;
        suite.check("Campbell interference vs Monte Carlo", rel <= 0.02, "rel dev " + num(rel));
    }

    {  // decoding-order brute force
        Rng rng(spec.system.seed + 23);
        const auto report = phy::verify_sic_order_theorem(3, 300, rng);
        suite.check("identity decoding order is max-min optimal", report.passed(),
                    std::to_string(report.instances) + " instances");
    }

    {  // ZF useful-coefficient mean = n_r - L + 1
        Rng rng(spec.system.seed + 29);
        const int n_r = spec.system.n_r, l = spec.system.L;
        double acc = 0.0;
        const long draws = 20000;
        for (long i = 0; i < draws; ++i) {
            const auto h = phy::sample_channel(n_r, l, rng);
            acc += phy::pzf_filters(h, l).useful_coeff(0);
        }
        const double mean = acc / static_cast<double>(draws);
        const double rel = std::abs(mean - (n_r - l + 1)) / (n_r - l + 1);
        suite.check("ZF useful coefficient mean", rel <= 0.02, "rel dev " + num(rel));
    }

    {  // planner reproduces the reference optimum
        planner::PlanConfig plan;
        plan.n_r = 8;
        plan.eta = 3.75;
        const auto res = planner::optimize_l(plan);
        suite.check("planner optimum (pzf, n_r=8)", res.selected_l == 3,
                    "selected L = " + std::to_string(res.selected_l));
    }

    std::cout << (suite.failures == 0 ? "validate: all suites passed\n"
                                      : "validate: " + std::to_string(suite.failures) +
                                            " suite(s) failed\n");
    return suite.failures == 0 ? kExitOk : kExitValidationFailure;
}

}  // namespace edgecast::experiment
