#pragma once

#include <string>
#include <vector>

#include "edgecast/analysis.hpp"

namespace edgecast::planner {

using analysis::EulerInversionParams;
using analysis::Receiver;

enum class Objective { kAverageRate, kTargetOutage };

/// D = 1/(L R) * F/w * K (1 - mu) / (1 + K mu), in seconds.
double delivery_latency(int macro_l, double rate, double file_bits, double bandwidth_hz,
                        int users, double mu);

/// R such that the analytic outage equals `target_outage`, by bisection on
/// the monotone outage curve (tolerance 1e-6 in R).
double rate_at_outage(int macro_l, int n_r, double eta, double target_outage, Receiver receiver,
                      const EulerInversionParams& params);

struct PlanConfig {
    int n_r = 8;
    double eta = 3.75;
    Receiver receiver = Receiver::kPzf;
    Objective objective = Objective::kAverageRate;
    double target_outage = 0.1;
    // Delivery-latency inputs.
    double file_bits = 8192.0;
    double bandwidth_hz = 20e6;
    int users = 8;
    double mu = 0.25;
    EulerInversionParams euler;
};

struct PlannerRecord {
    int macro_l = 0;
    double rate_at_target_outage = 0.0;  // bit/s/Hz
    double avg_rate = 0.0;               // bit/s/Hz (geometry-averaged bound)
    double product_lr = 0.0;             // L times the objective's rate
    double latency_s = 0.0;
};

struct PlannerResult {
    std::vector<PlannerRecord> records;  // L = 1..n_r
    int selected_l = 0;
    Objective objective = Objective::kAverageRate;
    Receiver receiver = Receiver::kPzf;

    std::string to_json() const;
};

/// Sweeps L = 1..n_r and picks the L maximizing L x rate for the chosen
/// objective; ties break toward smaller L (fewer decoded streams).
PlannerResult optimize_l(const PlanConfig& config);

}  // namespace edgecast::planner
