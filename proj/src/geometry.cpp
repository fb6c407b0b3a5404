#include "edgecast/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace edgecast::geom {

void SystemConfig::validate() const {
    if (!(lambda_density > 0.0)) throw std::invalid_argument("config: lambda_density must be > 0");
    if (!(eta > 2.0)) throw std::invalid_argument("config: eta must be > 2");
    if (n_r < 1) throw std::invalid_argument("config: n_r must be >= 1");
    if (L < 1 || L > n_r) throw std::invalid_argument("config: need 1 <= L <= n_r");
    if (!(area_radius_km > 0.0)) throw std::invalid_argument("config: area_radius_km must be > 0");
    if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("config: bandwidth_hz must be > 0");
    if (users < 1) throw std::invalid_argument("config: users must be >= 1");
    if (library_files < 1) throw std::invalid_argument("config: library_files must be >= 1");
    if (cache_files < 1 || cache_files > library_files)
        throw std::invalid_argument("config: need 1 <= cache_files <= library_files");
    if (file_bits < 8) throw std::invalid_argument("config: file_bits must be >= 8");
}

NetworkGeometry NetworkGeometry::from_points(std::vector<Point2D> pts) {
    NetworkGeometry g;
    g.points = std::move(pts);
    g.sorted_distances.reserve(g.points.size());
    for (const auto& p : g.points) g.sorted_distances.push_back(std::hypot(p.x, p.y));
    std::sort(g.sorted_distances.begin(), g.sorted_distances.end());
    return g;
}

std::string NetworkGeometry::to_json() const {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : points) pts.push_back({p.x, p.y});
    return nlohmann::json{{"points", pts}}.dump();
}

NetworkGeometry NetworkGeometry::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    std::vector<Point2D> pts;
    for (const auto& p : j.at("points")) pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    return from_points(std::move(pts));
}

NetworkGeometry sample_ppp(const SystemConfig& config, Rng& rng) {
    config.validate();
    const double radius = config.area_radius_km;
    const double mean = config.lambda_density * M_PI * radius * radius;
    const long count = rng.poisson(mean);
    std::vector<Point2D> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        const double r = radius * std::sqrt(rng.uniform());
        const double theta = 2.0 * M_PI * rng.uniform();
        pts.push_back({r * std::cos(theta), r * std::sin(theta)});
    }
    return NetworkGeometry::from_points(std::move(pts));
}

NetworkGeometry sample_ppp_min_points(const SystemConfig& config, std::size_t min_points,
                                      Rng& rng, long& resample_count) {
    for (;;) {
        NetworkGeometry g = sample_ppp(config, rng);
        if (g.size() >= min_points) return g;
        ++resample_count;
    }
}

double distance_pdf(int n, double lambda, double v) {
    if (n < 1) throw std::invalid_argument("distance_pdf: n must be >= 1");
    if (v < 0.0) return 0.0;
    if (v == 0.0) return 0.0;
    const double pl = M_PI * lambda;
    // 2 (pi lambda)^n / (n-1)! v^{2n-1} e^{-pi lambda v^2}, in log form for large n.
    const double log_pdf = std::log(2.0) + n * std::log(pl) - std::lgamma(n) +
                           (2 * n - 1) * std::log(v) - pl * v * v;
    return std::exp(log_pdf);
}

double joint_distance_pdf(int ell, int n, double lambda, double u, double v) {
    if (ell < 1 || ell >= n) throw std::invalid_argument("joint_distance_pdf: need 1 <= ell < n");
    if (u < 0.0 || v < 0.0 || u > v) return 0.0;
    const double pl = M_PI * lambda;
    const double coeff =
        4.0 * std::exp(n * std::log(pl) - std::lgamma(n - ell) - std::lgamma(ell));
    return coeff * std::pow(v * v - u * u, n - ell - 1) * v *
           std::pow(u, 2 * ell - 1) * std::exp(-pl * v * v);
}

double expected_interference(double lambda, double eta, double r_l) {
    if (!(eta > 2.0)) throw std::invalid_argument("expected_interference: diverges for eta <= 2");
    if (!(r_l > 0.0)) throw std::invalid_argument("expected_interference: r_l must be > 0");
    return 2.0 * M_PI * lambda / (eta - 2.0) * std::pow(r_l, 2.0 - eta);
}

double local_avg_sir_exact(const NetworkGeometry& geometry, int ell, int macro_l, double eta) {
    const auto& r = geometry.sorted_distances;
    if (ell < 1 || ell > macro_l) throw std::invalid_argument("local_avg_sir_exact: need 1 <= ell <= L");
    if (r.size() <= static_cast<std::size_t>(macro_l))
        throw std::invalid_argument("local_avg_sir_exact: geometry needs more than L points");
    double interference = 0.0;
    for (std::size_t j = static_cast<std::size_t>(macro_l); j < r.size(); ++j)
        interference += std::pow(r[j], -eta);
    return std::pow(r[ell - 1], -eta) / interference;
}

double local_avg_sir_approx(double r_ell, double r_l, double lambda, double eta) {
    if (!(r_ell > 0.0) || r_ell > r_l)
        throw std::invalid_argument("local_avg_sir_approx: need 0 < r_ell <= r_L");
    return std::pow(r_l, eta - 2.0) / std::pow(r_ell, eta) * (eta - 2.0) / (2.0 * M_PI * lambda);
}

}  // namespace edgecast::geom
