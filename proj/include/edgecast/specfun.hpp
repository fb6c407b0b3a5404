#pragma once

#include <complex>

namespace edgecast::specfun {

using Complex = std::complex<double>;

/// Gauss hypergeometric 2F1(a, b; c; z).
///
/// Supported regimes (all this library needs): real z < 1, and complex z
/// with Re(z) <= 0 of arbitrary magnitude. Evaluation picks between the
/// Maclaurin series, the Pfaff transform z -> z/(z-1), the 1/z connection
/// formula, and an Euler-integral quadrature fallback for parameter sets
/// where the connection formula degenerates. Relative accuracy ~1e-12.
///
/// Throws std::domain_error outside the supported regime and when c is a
/// non-positive integer.
Complex hyp2f1(double a, double b, double c, Complex z);

/// Real-argument convenience overload (x < 1).
double hyp2f1(double a, double b, double c, double x);

/// Upper incomplete gamma for integer order a >= 1:
/// Gamma(a, x) = (a-1)! e^{-x} sum_{i<a} x^i / i!.
double upper_incomplete_gamma(int a, double x);

/// Q(a, x) = Gamma(a, x) / Gamma(a) = e^{-x} sum_{i<a} x^i / i!.
double upper_incomplete_gamma_regularized(int a, double x);

/// Exponential integral E1(x) = int_1^inf t^{-1} e^{-xt} dt, x > 0.
double exp_integral_e1(double x);

/// e^x E1(x), stable for large x (where E1 itself underflows).
double exp_scaled_e1(double x);

/// I_M(mu) = E[ln(1 + mu * X)] in nats, where X is a sum of M unit-mean
/// exponentials (so E[X] = M). This is the closed form
///   Pi_M(-1/mu) E1(1/mu) + sum_{m=1}^{M-1} (1/m) Pi_m(1/mu) Pi_{M-m}(-1/mu),
/// Pi_n(y) = e^{-y} sum_{i<n} y^i/i!, evaluated through an exact
/// rearrangement that avoids the catastrophic cancellation the literal sum
/// suffers for small mu:
///   I_M = G + sum_{m=1}^{M-1} (1 - T_m)/m,   G = e^x E1(x), x = 1/mu,
///   T_m = int_0^inf t^{m-1} e^{-t} / ((1+mu t) (m-1)!) dt in (0, 1),
/// with T_m by recurrence T_m = x (1 - T_{m-1})/(m-1) where that is stable
/// and by direct quadrature otherwise.
double ergodic_log_moment(int order, double mu);

}  // namespace edgecast::specfun
