#include "edgecast/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "edgecast/quadrature.hpp"
#include "edgecast/specfun.hpp"

namespace edgecast::analysis {

namespace {

constexpr double kLog2E = 1.4426950408889634074;

double factorial(int n) { return std::tgamma(static_cast<double>(n) + 1.0); }

double binomial_d(int n, int k) {
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

void check_stream_args(int ell, int macro_l, double eta) {
    if (macro_l < 1) throw std::invalid_argument("analysis: L must be >= 1");
    if (ell < 1 || ell > macro_l) throw std::invalid_argument("analysis: need 1 <= ell <= L");
    if (!(eta > 2.0)) throw std::invalid_argument("analysis: eta must be > 2");
}

}  // namespace

void EulerInversionParams::validate() const {
    if (!(accuracy_a > 0.0)) throw std::invalid_argument("euler params: A must be > 0");
    if (smoothing_b < 0) throw std::invalid_argument("euler params: B must be >= 0");
    if (terms_g < 1) throw std::invalid_argument("euler params: G must be >= 1");
}

Complex laplace_inv_rho(Complex s, int ell, int macro_l, double eta) {
    check_stream_args(ell, macro_l, eta);
    if (s.real() < 0.0) throw std::invalid_argument("laplace_inv_rho: requires Re(s) >= 0");
    const double alpha2 = 2.0 / (eta - 2.0);
    if (ell == macro_l) return std::pow(alpha2 * s + 1.0, -static_cast<double>(macro_l));

    const int l = macro_l;
    Complex sum = 0.0;
    for (int n = 0; n <= l - ell - 1; ++n) {
        const double eta_prime = 2.0 * (n + ell) / eta;
        const double coeff = ((n % 2 == 0) ? 1.0 : -1.0) * factorial(l - 1) /
                             (factorial(l - ell - 1) * factorial(ell - 1) * (n + ell)) *
                             binomial_d(l - ell - 1, n);
        sum += coeff * specfun::hyp2f1(l, eta_prime, eta_prime + 1.0, -alpha2 * s);
    }
    return sum;
}

double cdf_rho_approx(double gamma, int ell, int macro_l, double eta,
                      const EulerInversionParams& params, EulerDiagnostics* diag) {
    check_stream_args(ell, macro_l, eta);
    params.validate();
    if (gamma <= 0.0) return 0.0;

    const double a = params.accuracy_a;
    const int b_max = params.smoothing_b;
    const int g_max = params.terms_g + b_max;

    // tau_g depends only on g; hoist the transform evaluations.
    std::vector<double> re_term(static_cast<std::size_t>(g_max) + 1);
    for (int g = 0; g <= g_max; ++g) {
        const Complex tau(a * gamma / 2.0, M_PI * g * gamma);
        re_term[static_cast<std::size_t>(g)] =
            (laplace_inv_rho(tau, ell, macro_l, eta) / tau).real();
    }

    double acc = 0.0;
    for (int b = 0; b <= b_max; ++b) {
        double inner = 0.0;
        for (int g = 0; g <= params.terms_g + b; ++g) {
            const double d_g = (g == 0) ? 2.0 : 1.0;
            const double sign = (g % 2 == 0) ? 1.0 : -1.0;
            inner += sign / d_g * re_term[static_cast<std::size_t>(g)];
        }
        acc += binomial_d(b_max, b) * inner;
    }
    double value = 1.0 - gamma * std::exp(a / 2.0) / std::pow(2.0, b_max) * acc;
    if (value < 0.0) {
        if (diag) ++diag->clamped_low;
        value = 0.0;
    } else if (value > 1.0) {
        if (diag) ++diag->clamped_high;
        value = 1.0;
    }
    return value;
}

double cdf_sir_tilde_last(double gamma, int macro_l, double eta, int chi_order) {
    if (macro_l < 1) throw std::invalid_argument("cdf_sir_tilde: L must be >= 1");
    if (!(eta > 2.0)) throw std::invalid_argument("cdf_sir_tilde: eta must be > 2");
    if (chi_order < 1) throw std::invalid_argument("cdf_sir_tilde: chi-square order must be >= 1");
    if (gamma <= 0.0) return 0.0;
    const double x = 2.0 * gamma / (eta - 2.0);
    const double ratio = x / (x + 1.0);
    // term_m = C(m+L-1, m) x^m / (x+1)^{m+L}, accumulated by its recurrence
    // so no large powers are formed.
    double term = std::pow(x + 1.0, -static_cast<double>(macro_l));
    double ccdf = term;
    for (int m = 1; m < chi_order; ++m) {
        term *= ratio * (m + macro_l - 1.0) / m;
        ccdf += term;
    }
    return std::min(1.0, std::max(0.0, 1.0 - ccdf));
}

double cdf_sir_tilde(double gamma, int ell, int macro_l, int n_r, double eta) {
    check_stream_args(ell, macro_l, eta);
    if (macro_l > n_r) throw std::invalid_argument("cdf_sir_tilde: need L <= n_r");
    if (gamma <= 0.0) return 0.0;
    if (ell == macro_l) return cdf_sir_tilde_last(gamma, macro_l, eta, n_r - macro_l + 1);

    const int l = macro_l;
    const double x = 2.0 * gamma / (eta - 2.0);
    const double log_x = std::log(x);
    double ccdf = 0.0;
    for (int m = 0; m <= n_r - l; ++m) {
        for (int n = 0; n <= l - ell - 1; ++n) {
            const double eta_prime = 2.0 * (n + ell) / eta;
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            const double log_coeff = std::log(2.0) - std::lgamma(m + 1.0) -
                                     std::lgamma(l - ell) - std::lgamma(ell) +
                                     std::lgamma(m + l) - std::log(eta * (eta_prime + m)) +
                                     std::lgamma(l - ell) - std::lgamma(n + 1.0) -
                                     std::lgamma(l - ell - n);
            const double hyp =
                specfun::hyp2f1(l + m, m + eta_prime, m + eta_prime + 1.0, -x);
            if (hyp <= 0.0) continue;  // underflow at extreme gamma
            ccdf += sign * std::exp(log_coeff + m * log_x + std::log(hyp));
        }
    }
    return std::min(1.0, std::max(0.0, 1.0 - ccdf));
}

namespace {

double avg_rate_from_ccdf_quadrature(int ell, int macro_l, double eta, int n_r) {
    auto ccdf = [&](double rate) {
        return 1.0 - cdf_sir_tilde(std::exp2(rate) - 1.0, ell, macro_l, n_r, eta);
    };
    double upper = 10.0;
    while (ccdf(upper) > 1e-10 && upper < 250.0) upper *= 2.0;
    const auto q = integrate(ccdf, 0.0, upper, 1e-7, 60);
    if (!q.converged)
        throw std::runtime_error("avg_rate_stream: quadrature did not converge (ell=" +
                                 std::to_string(ell) + ", L=" + std::to_string(macro_l) +
                                 ", n_r=" + std::to_string(n_r) + ", eta=" + std::to_string(eta) +
                                 ", err=" + std::to_string(q.error_estimate) + ")");
    return q.value;
}

double worst_stream_rate_sum(int macro_l, double eta, int chi_order) {
    const double z = 1.0 - 2.0 / (eta - 2.0);
    double sum = 0.0;
    for (int m = 0; m < chi_order; ++m)
        sum += kLog2E / (m + macro_l) *
               specfun::hyp2f1(1.0, macro_l, m + macro_l + 1.0, z);
    return sum;
}

}  // namespace

double avg_rate_stream(int ell, int macro_l, int n_r, double eta) {
    check_stream_args(ell, macro_l, eta);
    if (macro_l > n_r) throw std::invalid_argument("avg_rate_stream: need L <= n_r");
    if (ell == macro_l) return worst_stream_rate_sum(macro_l, eta, n_r - macro_l + 1);
    return avg_rate_from_ccdf_quadrature(ell, macro_l, eta, n_r);
}

double avg_rate_pzf(int macro_l, int n_r, double eta) {
    return avg_rate_stream(macro_l, macro_l, n_r, eta);
}

double avg_rate_pzf_sic(int macro_l, int n_r, double eta) {
    if (macro_l < 1 || macro_l > n_r) throw std::invalid_argument("avg_rate_pzf_sic: need 1 <= L <= n_r");
    if (!(eta > 2.0)) throw std::invalid_argument("avg_rate_pzf_sic: eta must be > 2");
    // Last SIC stage has chi-square order n_r, so m runs to n_r - 1.
    return worst_stream_rate_sum(macro_l, eta, n_r);
}

double qlb_rate_for_order(double rho_tilde, int chi_order) {
    return specfun::ergodic_log_moment(chi_order, rho_tilde) * kLog2E;
}

double qlb_rate_inverse(double rate, int chi_order) {
    if (rate <= 0.0) return 0.0;
    double hi = 1.0;
    while (qlb_rate_for_order(hi, chi_order) < rate) {
        hi *= 8.0;
        if (hi > 1e15) return std::numeric_limits<double>::infinity();
    }
    double lo = 0.0;
    // Bisection on the strictly increasing rate function.
    while (hi - lo > 1e-10 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (qlb_rate_for_order(mid, chi_order) < rate)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double outage_analytic(double rate, int macro_l, int n_r, double eta,
                       const EulerInversionParams& params, Receiver receiver,
                       bool* ceiling_warning) {
    if (macro_l < 1 || macro_l > n_r) throw std::invalid_argument("outage_analytic: need 1 <= L <= n_r");
    if (!(eta > 2.0)) throw std::invalid_argument("outage_analytic: eta must be > 2");
    if (rate <= 0.0) return 0.0;
    const int order = (receiver == Receiver::kPzf) ? n_r - macro_l + 1 : n_r;
    const double threshold = qlb_rate_inverse(rate, order);
    if (!std::isfinite(threshold)) {
        if (ceiling_warning) *ceiling_warning = true;
        return 1.0;
    }
    return cdf_rho_approx(threshold, macro_l, macro_l, eta, params);
}

}  // namespace edgecast::analysis
