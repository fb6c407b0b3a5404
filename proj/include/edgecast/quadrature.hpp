#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <stdexcept>

namespace edgecast {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
};

namespace detail {

// Gauss-Kronrod 15(7) nodes/weights on [-1, 1].
inline constexpr double kGk15Nodes[15] = {
    -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730, -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245, 0.0,
    0.207784955007898467600689403773245,  0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,  0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,  0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};

inline constexpr double kGk15Weights[15] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

// Embedded 7-point Gauss weights (odd Kronrod positions).
inline constexpr double kG7Weights[7] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
    0.381830050505118944950369775488975, 0.279705391489276667901467771423780,
    0.129484966168869693270611432679082};

template <typename F>
void gk15_panel(const F& f, double a, double b, double& kronrod, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double gauss = 0.0;
    kronrod = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double fx = f(c + h * kGk15Nodes[i]);
        kronrod += kGk15Weights[i] * fx;
        if (i % 2 == 1) gauss += kG7Weights[i / 2] * fx;
    }
    kronrod *= h;
    gauss *= h;
    err = std::abs(kronrod - gauss);
}

template <typename F>
void adapt(const F& f, double a, double b, double tol, int depth, QuadratureResult& out) {
    double whole = 0.0, err = 0.0;
    gk15_panel(f, a, b, whole, err);
    if (err <= tol || depth <= 0) {
        out.value += whole;
        out.error_estimate += err;
        if (err > tol) out.converged = false;
        return;
    }
    const double c = 0.5 * (a + b);
    adapt(f, a, c, 0.5 * tol, depth - 1, out);
    adapt(f, c, b, 0.5 * tol, depth - 1, out);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod 15(7) on a finite interval.
template <typename F>
    requires std::invocable<F&, double>
QuadratureResult integrate(const F& f, double a, double b, double abs_tol = 1e-12,
                           int max_depth = 60) {
    QuadratureResult out;
    out.converged = true;
    if (a == b) return out;
    detail::adapt(f, a, b, abs_tol, max_depth, out);
    return out;
}

/// Integral over [a, inf) via the map t = a + u/(1-u), u in [0,1).
template <typename F>
    requires std::invocable<F&, double>
QuadratureResult integrate_to_infinity(const F& f, double a, double abs_tol = 1e-12,
                                       int max_depth = 60) {
    auto g = [&](double u) {
        const double om = 1.0 - u;
        const double t = a + u / om;
        return f(t) / (om * om);
    };
    return integrate(g, 0.0, 1.0, abs_tol, max_depth);
}

}  // namespace edgecast
