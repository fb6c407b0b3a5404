#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "edgecast/analysis.hpp"
#include "edgecast/geometry.hpp"
#include "edgecast/rng.hpp"

namespace edgecast::phy {

using analysis::Receiver;

/// i.i.d. CN(0,1) channel matrix, one column per EN (nearest first).
Eigen::MatrixXcd sample_channel(int n_r, int n_columns, Rng& rng);

/// Partial zero-forcing receive filters for the L nearest ENs.
struct PzfFilters {
    Eigen::MatrixXcd filters;      // n_r x L, unit-norm columns q_ell
    Eigen::VectorXd useful_coeff;  // ||h‡_ell||^{-2}, chi-square 2(n_r-L+1) dof
};

/// Unit-normalized columns of the pseudo-inverse of H(:, 1:L), computed by QR
/// with a condition-number guard of 1e12 on the triangular factor.
PzfFilters pzf_filters(const Eigen::MatrixXcd& channel, int macro_l);

/// Post-PZF SIR of stream ell: r_ell^{-eta} ||h‡_ell||^{-2} /
/// sum_{j>L} r_j^{-eta} |q_ell^H h_j|^2. Returns +inf when the (truncated)
/// geometry has no interferer beyond L ("always decodable" sentinel).
double pzf_stream_sir(const Eigen::MatrixXcd& channel, const std::vector<double>& distances,
                      int ell, int macro_l, double eta);

/// Genie-aided PZF-SIC: streams order[0..ell-2] already removed; residual ZF
/// over columns order[ell-1..L-1]. The useful coefficient is chi-square with
/// 2(n_r-L+ell) dof. `order` is a permutation of {1, ..., L} (decoding order).
double sic_stream_sir(const Eigen::MatrixXcd& channel, const std::vector<double>& distances,
                      const std::vector<int>& order, int ell, int macro_l, double eta);

struct StreamRateEstimate {
    int ell = 0;
    double mean_rate = 0.0;  // bit/s/Hz
    double std_error = 0.0;
    long trials = 0;
};

/// Ergodic rate of stream ell for a fixed geometry: sample mean of
/// log2(1 + SIR) over i.i.d. fading realizations.
StreamRateEstimate ergodic_rate_mc(const geom::NetworkGeometry& geometry, int ell, int macro_l,
                                   int n_r, double eta, long fading_trials, Rng& rng);

/// Quasi-lower-bound rate log2(e) * I_{n_r-L+1}(rho~) in bit/s/Hz.
double qlb_rate(double rho_tilde, int n_r, int macro_l);

/// SIC stage-ell variant: chi-square order n_r - L + ell.
double qlb_rate_sic(double rho_tilde, int n_r, int macro_l, int ell);

struct OutageEstimate {
    double outage = 0.0;              // min over streams (identity SIC order)
    double outage_last_stream = 0.0;  // ell = L relaxation (equals `outage` for PZF)
    double std_error = 0.0;
    long trials = 0;
    long resampled = 0;  // geometries redrawn for having < L+1 points
};

/// Fraction of geometries whose worst quasi-lower-bound stream rate is <= R.
/// For PZF the minimum sits at ell = L by construction; for PZF-SIC the
/// minimum over stages (identity order) is used and the last-stage relaxation
/// is reported alongside. Deterministic for fixed (seed, trials) at any
/// worker count: trial i always uses RNG stream i.
OutageEstimate outage_mc(const geom::SystemConfig& config, double rate, Receiver receiver,
                         long geometry_trials, std::uint64_t seed, int workers = 1);

struct TheoremCheckReport {
    long instances = 0;
    long counterexamples = 0;
    std::string first_counterexample;  // empty when none

    bool passed() const { return counterexamples == 0; }
};

/// Brute-force check of the max-min ordering result: for monotone families
/// f_1 <= ... <= f_L and sorted inputs x_1 >= ... >= x_L, the identity
/// decoding order attains max over all L! permutations of min_ell
/// f_ell(x_perm(ell)). Random monotone families plus the actual SIC
/// quasi-lower-bound family are tested.
TheoremCheckReport verify_sic_order_theorem(int macro_l, long trials, Rng& rng);

}  // namespace edgecast::phy
