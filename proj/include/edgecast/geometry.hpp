#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edgecast/rng.hpp"

namespace edgecast::geom {

/// Scalar system and propagation parameters. Distances are in km, the EN
/// density in ENs/km^2; SIRs are dimensionless (interference-limited regime,
/// so the intercept and powers cancel but are retained for completeness).
struct SystemConfig {
    double lambda_density = 8.0;   // ENs per km^2
    double eta = 3.75;             // pathloss exponent, > 2
    int n_r = 8;                   // receive antennas
    int L = 4;                     // macro-diversity order, 1 <= L <= n_r
    double area_radius_km = 3.0;   // simulation disk radius
    double beta_intercept = 1.0;   // unused in interference-limited mode
    double tx_power = 1.0;         // unused in interference-limited mode
    double noise_power = 0.0;      // unused in interference-limited mode
    double bandwidth_hz = 20e6;    // w, latency computations only
    int users = 8;                 // K, content-delivery side
    int library_files = 4;         // N
    int cache_files = 1;           // M (per-user cache, in files)
    std::int64_t file_bits = 8192; // F
    std::uint64_t seed = 1;

    double cache_fraction() const {
        return static_cast<double>(cache_files) / static_cast<double>(library_files);
    }

    /// Throws std::invalid_argument on any violated invariant.
    void validate() const;
};

struct Point2D {
    double x = 0.0;
    double y = 0.0;
};

/// One PPP realization: EN positions and their origin-sorted distances
/// r_1 <= r_2 <= ... (the typical user sits at the origin).
struct NetworkGeometry {
    std::vector<Point2D> points;
    std::vector<double> sorted_distances;

    static NetworkGeometry from_points(std::vector<Point2D> pts);

    std::size_t size() const { return points.size(); }

    /// JSON round-trip so exact geometries can be replayed elsewhere.
    std::string to_json() const;
    static NetworkGeometry from_json(const std::string& text);
};

/// Poisson(lambda * pi * R^2) point count, positions i.i.d. uniform on the
/// disk. A zero-point draw is valid; callers that need at least L points
/// resample (see sample_ppp_min_points).
NetworkGeometry sample_ppp(const SystemConfig& config, Rng& rng);

/// Resamples until at least `min_points` points; increments `resample_count`
/// once per discarded draw.
NetworkGeometry sample_ppp_min_points(const SystemConfig& config, std::size_t min_points,
                                      Rng& rng, long& resample_count);

/// PDF of the n-th nearest PPP point distance:
/// f(v) = 2 (pi lambda)^n / (n-1)! * v^{2n-1} e^{-pi lambda v^2}.
double distance_pdf(int n, double lambda, double v);

/// Joint PDF of the ell-th and n-th nearest distances (ell < n):
/// f(u,v) = 4 (pi lambda)^n / ((n-ell-1)! (ell-1)!) (v^2-u^2)^{n-ell-1}
///          v u^{2 ell - 1} e^{-pi lambda v^2} on 0 <= u <= v (else 0).
double joint_distance_pdf(int ell, int n, double lambda, double u, double v);

/// Mean interference beyond radius r_L (Campbell):
/// E[I | r_L] = 2 pi lambda / (eta - 2) * r_L^{2 - eta}. Requires eta > 2.
double expected_interference(double lambda, double eta, double r_l);

/// Exact local-average SIR rho_ell = r_ell^{-eta} / sum_{j>L} r_j^{-eta}.
/// Requires more than L points.
double local_avg_sir_exact(const NetworkGeometry& geometry, int ell, int macro_l, double eta);

/// Conditional-mean approximation
/// rho~_ell = r_L^{eta-2} / r_ell^{eta} * (eta-2) / (2 pi lambda),
/// i.e. the exact SIR with the interference replaced by its Campbell mean.
double local_avg_sir_approx(double r_ell, double r_l, double lambda, double eta);

}  // namespace edgecast::geom
