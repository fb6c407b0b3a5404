#include "edgecast/phy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "edgecast/specfun.hpp"

namespace edgecast::phy {

namespace {

constexpr double kLog2E = 1.4426950408889634074;

/// Unit-norm pseudo-inverse columns of `block` plus their inverse squared
/// norms, via thin QR: block = Q R  =>  block‡ = Q R^{-H}.
void zf_directions(const Eigen::MatrixXcd& block, Eigen::MatrixXcd& filters,
                   Eigen::VectorXd& useful_coeff) {
    const int n_r = static_cast<int>(block.rows());
    const int cols = static_cast<int>(block.cols());
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(block);
    Eigen::MatrixXcd q_thin =
        qr.householderQ() * Eigen::MatrixXcd::Identity(n_r, cols);
    Eigen::MatrixXcd r =
        qr.matrixQR().topLeftCorner(cols, cols).triangularView<Eigen::Upper>();

    double diag_min = std::numeric_limits<double>::infinity(), diag_max = 0.0;
    for (int i = 0; i < cols; ++i) {
        const double d = std::abs(r(i, i));
        diag_min = std::min(diag_min, d);
        diag_max = std::max(diag_max, d);
    }
    if (!(diag_min > 0.0) || diag_max / diag_min > 1e12)
        throw std::runtime_error("pzf_filters: channel block numerically rank-deficient");

    // Columns y_ell of R^{-H}; then h‡_ell = Q y_ell with ||h‡_ell|| = ||y_ell||.
    Eigen::MatrixXcd y = r.adjoint()
                             .triangularView<Eigen::Lower>()
                             .solve(Eigen::MatrixXcd::Identity(cols, cols));
    filters.resize(n_r, cols);
    useful_coeff.resize(cols);
    for (int ell = 0; ell < cols; ++ell) {
        const double norm = y.col(ell).norm();
        filters.col(ell) = q_thin * (y.col(ell) / norm);
        useful_coeff(ell) = 1.0 / (norm * norm);
    }
}

double interference_power(const Eigen::MatrixXcd& channel, const std::vector<double>& distances,
                          const Eigen::VectorXcd& filter, int macro_l, double eta) {
    double acc = 0.0;
    for (int j = macro_l; j < static_cast<int>(channel.cols()); ++j) {
        const std::complex<double> tap = filter.dot(channel.col(j));  // q^H h_j
        acc += std::pow(distances[static_cast<std::size_t>(j)], -eta) * std::norm(tap);
    }
    return acc;
}

void check_geometry_args(const Eigen::MatrixXcd& channel, const std::vector<double>& distances,
                         int ell, int macro_l) {
    if (static_cast<int>(distances.size()) != channel.cols())
        throw std::invalid_argument("phy: distances/channel size mismatch");
    if (macro_l < 1 || channel.rows() < macro_l)
        throw std::invalid_argument("phy: need n_r >= L >= 1");
    if (channel.cols() < macro_l) throw std::invalid_argument("phy: need at least L ENs");
    if (ell < 1 || ell > macro_l) throw std::invalid_argument("phy: need 1 <= ell <= L");
}

}  // namespace

Eigen::MatrixXcd sample_channel(int n_r, int n_columns, Rng& rng) {
    Eigen::MatrixXcd h(n_r, n_columns);
    for (int j = 0; j < n_columns; ++j)
        for (int i = 0; i < n_r; ++i) h(i, j) = rng.complex_normal();
    return h;
}

PzfFilters pzf_filters(const Eigen::MatrixXcd& channel, int macro_l) {
    if (macro_l < 1 || channel.rows() < macro_l || channel.cols() < macro_l)
        throw std::invalid_argument("pzf_filters: need n_r >= L and at least L columns");
    PzfFilters out;
    zf_directions(channel.leftCols(macro_l), out.filters, out.useful_coeff);
    return out;
}

double pzf_stream_sir(const Eigen::MatrixXcd& channel, const std::vector<double>& distances,
                      int ell, int macro_l, double eta) {
    check_geometry_args(channel, distances, ell, macro_l);
    const PzfFilters f = pzf_filters(channel, macro_l);
    const double signal = std::pow(distances[static_cast<std::size_t>(ell - 1)], -eta) *
                          f.useful_coeff(ell - 1);
    const double interference =
        interference_power(channel, distances, f.filters.col(ell - 1), macro_l, eta);
    if (interference == 0.0) return std::numeric_limits<double>::infinity();
    return signal / interference;
}

double sic_stream_sir(const Eigen::MatrixXcd& channel, const std::vector<double>& distances,
                      const std::vector<int>& order, int ell, int macro_l, double eta) {
    check_geometry_args(channel, distances, ell, macro_l);
    std::vector<int> sorted_order = order;
    std::sort(sorted_order.begin(), sorted_order.end());
    for (int i = 0; i < macro_l; ++i)
        if (i >= static_cast<int>(sorted_order.size()) || sorted_order[static_cast<std::size_t>(i)] != i + 1)
            throw std::invalid_argument("sic_stream_sir: order must be a permutation of {1..L}");

    // Residual ZF over the not-yet-decoded streams order[ell-1 .. L-1].
    const int residual = macro_l - ell + 1;
    Eigen::MatrixXcd block(channel.rows(), residual);
    for (int i = 0; i < residual; ++i)
        block.col(i) = channel.col(order[static_cast<std::size_t>(ell - 1 + i)] - 1);

    Eigen::MatrixXcd filters;
    Eigen::VectorXd coeff;
    zf_directions(block, filters, coeff);

    const int target = order[static_cast<std::size_t>(ell - 1)];
    const double signal = std::pow(distances[static_cast<std::size_t>(target - 1)], -eta) * coeff(0);
    const double interference =
        interference_power(channel, distances, filters.col(0), macro_l, eta);
    if (interference == 0.0) return std::numeric_limits<double>::infinity();
    return signal / interference;
}

StreamRateEstimate ergodic_rate_mc(const geom::NetworkGeometry& geometry, int ell, int macro_l,
                                   int n_r, double eta, long fading_trials, Rng& rng) {
    if (fading_trials < 1) throw std::invalid_argument("ergodic_rate_mc: need fading_trials >= 1");
    const auto& r = geometry.sorted_distances;
    if (r.size() < static_cast<std::size_t>(macro_l))
        throw std::invalid_argument("ergodic_rate_mc: geometry needs at least L points");

    double sum = 0.0, sum_sq = 0.0;
    for (long t = 0; t < fading_trials; ++t) {
        const Eigen::MatrixXcd h = sample_channel(n_r, static_cast<int>(r.size()), rng);
        const double sir = pzf_stream_sir(h, r, ell, macro_l, eta);
        const double rate = std::log2(1.0 + sir);
        sum += rate;
        sum_sq += rate * rate;
    }
    StreamRateEstimate est;
    est.ell = ell;
    est.trials = fading_trials;
    est.mean_rate = sum / static_cast<double>(fading_trials);
    if (fading_trials > 1) {
        const double var =
            std::max(0.0, (sum_sq - sum * sum / static_cast<double>(fading_trials)) /
                              static_cast<double>(fading_trials - 1));
        est.std_error = std::sqrt(var / static_cast<double>(fading_trials));
    }
    return est;
}

double qlb_rate(double rho_tilde, int n_r, int macro_l) {
    if (macro_l < 1 || macro_l > n_r) throw std::invalid_argument("qlb_rate: need 1 <= L <= n_r");
    return specfun::ergodic_log_moment(n_r - macro_l + 1, rho_tilde) * kLog2E;
}

double qlb_rate_sic(double rho_tilde, int n_r, int macro_l, int ell) {
    if (macro_l < 1 || macro_l > n_r) throw std::invalid_argument("qlb_rate_sic: need 1 <= L <= n_r");
    if (ell < 1 || ell > macro_l) throw std::invalid_argument("qlb_rate_sic: need 1 <= ell <= L");
    return specfun::ergodic_log_moment(n_r - macro_l + ell, rho_tilde) * kLog2E;
}

OutageEstimate outage_mc(const geom::SystemConfig& config, double rate, Receiver receiver,
                         long geometry_trials, std::uint64_t seed, int workers) {
    config.validate();
    if (geometry_trials < 1) throw std::invalid_argument("outage_mc: need at least one trial");
    if (workers < 1) workers = 1;
    const int macro_l = config.L;

    // The qlb rate is strictly increasing in rho~, so "stream rate <= R" is
    // exactly "rho~_ell <= threshold_ell"; precompute the L thresholds.
    std::vector<double> thresholds(static_cast<std::size_t>(macro_l));
    for (int ell = 1; ell <= macro_l; ++ell) {
        const int order = (receiver == Receiver::kPzf) ? config.n_r - macro_l + 1
                                                       : config.n_r - macro_l + ell;
        thresholds[static_cast<std::size_t>(ell - 1)] = analysis::qlb_rate_inverse(rate, order);
    }

    std::vector<std::uint8_t> outage_min(static_cast<std::size_t>(geometry_trials));
    std::vector<std::uint8_t> outage_last(static_cast<std::size_t>(geometry_trials));
    std::vector<long> resampled_per_worker(static_cast<std::size_t>(workers), 0);

    auto worker = [&](int w) {
        long local_resampled = 0;
        for (long t = w; t < geometry_trials; t += workers) {
            Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
            const geom::NetworkGeometry g = geom::sample_ppp_min_points(
                config, static_cast<std::size_t>(macro_l) + 1, rng, local_resampled);
            const auto& r = g.sorted_distances;
            const double r_l = r[static_cast<std::size_t>(macro_l - 1)];
            bool any = false;
            for (int ell = 1; ell <= macro_l; ++ell) {
                const double rho = geom::local_avg_sir_approx(
                    r[static_cast<std::size_t>(ell - 1)], r_l, config.lambda_density, config.eta);
                if (rho <= thresholds[static_cast<std::size_t>(ell - 1)]) {
                    any = true;
                    if (ell == macro_l) outage_last[static_cast<std::size_t>(t)] = 1;
                }
            }
            outage_min[static_cast<std::size_t>(t)] = any ? 1 : 0;
        }
        resampled_per_worker[static_cast<std::size_t>(w)] = local_resampled;
    };

    if (workers == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }

    OutageEstimate est;
    est.trials = geometry_trials;
    est.resampled = std::accumulate(resampled_per_worker.begin(), resampled_per_worker.end(), 0L);
    long n_min = 0, n_last = 0;
    for (long t = 0; t < geometry_trials; ++t) {
        n_min += outage_min[static_cast<std::size_t>(t)];
        n_last += outage_last[static_cast<std::size_t>(t)];
    }
    est.outage = static_cast<double>(n_min) / static_cast<double>(geometry_trials);
    est.outage_last_stream = static_cast<double>(n_last) / static_cast<double>(geometry_trials);
    est.std_error =
        std::sqrt(est.outage * (1.0 - est.outage) / static_cast<double>(geometry_trials));
    return est;
}

TheoremCheckReport verify_sic_order_theorem(int macro_l, long trials, Rng& rng) {
    if (macro_l < 2 || macro_l > 6)
        throw std::invalid_argument("verify_sic_order_theorem: L in [2, 6] (factorial brute force)");
    TheoremCheckReport report;
    const int l = macro_l;

    for (long trial = 0; trial < trials; ++trial) {
        // Table f[ell][j] = f_ell(x_j): non-increasing along j (inputs sorted
        // descending), non-decreasing along ell (dominance).
        std::vector<std::vector<double>> f(static_cast<std::size_t>(l),
                                           std::vector<double>(static_cast<std::size_t>(l)));
        if (trial % 2 == 0) {
            // Synthetic monotone family: cumulative sums of nonnegative noise.
            std::vector<double> row(static_cast<std::size_t>(l));
            double acc = 0.0;
            for (int j = l - 1; j >= 0; --j) {
                acc += rng.exponential();
                row[static_cast<std::size_t>(j)] = acc;  // non-increasing in j
            }
            f[0] = row;
            for (int ell = 1; ell < l; ++ell) {
                double step = 0.0;
                for (int j = l - 1; j >= 0; --j) {
                    step += 0.5 * rng.exponential();  // non-increasing increments
                    f[static_cast<std::size_t>(ell)][static_cast<std::size_t>(j)] =
                        f[static_cast<std::size_t>(ell - 1)][static_cast<std::size_t>(j)] + step;
                }
            }
            // Occasionally flatten everything to exercise tie handling.
            if (trial % 16 == 0)
                for (auto& r_ : f)
                    for (auto& v : r_) v = 1.0;
        } else {
            // The actual SIC quasi-lower-bound family at random rho~ inputs.
            const int n_r = l + static_cast<int>(rng.bits() % 9);
            std::vector<double> x(static_cast<std::size_t>(l));
            for (auto& v : x) v = std::exp(3.0 * rng.normal());
            std::sort(x.begin(), x.end(), std::greater<>());
            for (int ell = 0; ell < l; ++ell)
                for (int j = 0; j < l; ++j)
                    f[static_cast<std::size_t>(ell)][static_cast<std::size_t>(j)] =
                        qlb_rate_sic(x[static_cast<std::size_t>(j)], n_r, l, ell + 1);
        }

        const auto min_for_perm = [&](const std::vector<int>& perm) {
            double m = std::numeric_limits<double>::infinity();
            for (int ell = 0; ell < l; ++ell)
                m = std::min(m, f[static_cast<std::size_t>(ell)]
                                  [static_cast<std::size_t>(perm[static_cast<std::size_t>(ell)])]);
            return m;
        };

        std::vector<int> perm(static_cast<std::size_t>(l));
        std::iota(perm.begin(), perm.end(), 0);
        const double identity_min = min_for_perm(perm);
        double best = -std::numeric_limits<double>::infinity();
        do {
            best = std::max(best, min_for_perm(perm));
        } while (std::next_permutation(perm.begin(), perm.end()));

        ++report.instances;
        if (best > identity_min * (1.0 + 1e-12) + 1e-15) {
            ++report.counterexamples;
            if (report.first_counterexample.empty()) {
                std::ostringstream oss;
                oss << "trial " << trial << ": best " << best << " > identity " << identity_min;
                report.first_counterexample = oss.str();
            }
        }
    }
    return report;
}

}  // namespace edgecast::phy
