#pragma once

#include <complex>

namespace edgecast::analysis {

using Complex = std::complex<double>;

enum class Receiver { kPzf, kPzfSic };

/// Euler-summation constants for numerical Laplace inversion. The defaults
/// (with D_0 = 2, D_g = 1 fixed in the summation) give roughly 1e-4 absolute
/// accuracy on the CDFs handled here.
struct EulerInversionParams {
    double accuracy_a = 9.21;
    int smoothing_b = 5;
    int terms_g = 8;

    void validate() const;
};

/// Counters for CDF values that fell outside [0, 1] before clamping (the
/// truncated Euler series is an approximation, slightly negative values near
/// the support edge are expected).
struct EulerDiagnostics {
    long clamped_low = 0;
    long clamped_high = 0;
};

/// Laplace transform E[exp(-s / rho~_ell)] of the reciprocal local-average
/// SIR. For ell < L this is the alternating binomial sum of 2F1(L, eta';
/// eta'+1; -2s/(eta-2)) terms with eta' = 2(n+ell)/eta; for ell = L it
/// collapses to (2s/(eta-2) + 1)^(-L). Requires Re(s) >= 0.
Complex laplace_inv_rho(Complex s, int ell, int macro_l, double eta);

/// CDF of rho~_ell by Euler-series inversion of laplace_inv_rho, clamped to
/// [0, 1]. Clamping events are counted in *diag when provided.
double cdf_rho_approx(double gamma, int ell, int macro_l, double eta,
                      const EulerInversionParams& params, EulerDiagnostics* diag = nullptr);

/// CDF of SIR~_ell = rho~_ell * X_{2(n_r-L+1)} (fading and geometry averaged).
/// Closed double sum for ell < L, single sum for ell = L.
double cdf_sir_tilde(double gamma, int ell, int macro_l, int n_r, double eta);

/// Variant with an explicit chi-square order M (X_{2M}); the PZF CDF above is
/// M = n_r - L + 1, the PZF-SIC last stage is M = n_r. Only ell = L supported.
double cdf_sir_tilde_last(double gamma, int macro_l, double eta, int chi_order);

/// Lower bound on the geometry-averaged ergodic spectral efficiency of
/// stream ell, in bit/s/Hz. Closed hypergeometric sum at ell = L; numerical
/// integration of the complementary CDF for ell < L.
double avg_rate_stream(int ell, int macro_l, int n_r, double eta);

/// Worst-stream (ell = L) bound: the PZF system rate.
double avg_rate_pzf(int macro_l, int n_r, double eta);

/// PZF-SIC last-stage bound: same hypergeometric sum with the chi-square
/// order raised to n_r, i.e. m running to n_r - 1.
double avg_rate_pzf_sic(int macro_l, int n_r, double eta);

/// Analytic outage quasi-upper bound: F_{rho~_L}(C^{-1}(R)) where C is the
/// strictly increasing quasi-lower-bound rate with chi-square order
/// n_r - L + 1 (PZF) or n_r (PZF-SIC, last-stage relaxation). The inverse is
/// found by bisection to 1e-10 relative accuracy in rho~. If R exceeds the
/// numeric ceiling of the rate function the result is 1 and *ceiling_warning
/// is set when provided.
double outage_analytic(double rate, int macro_l, int n_r, double eta,
                       const EulerInversionParams& params, Receiver receiver,
                       bool* ceiling_warning = nullptr);

/// Quasi-lower-bound rate C(rho~) in bit/s/Hz for the given chi-square order.
double qlb_rate_for_order(double rho_tilde, int chi_order);

/// Inverse of qlb_rate_for_order by bracketed bisection (1e-10 relative).
/// Returns +inf past the numeric ceiling.
double qlb_rate_inverse(double rate, int chi_order);

}  // namespace edgecast::analysis
