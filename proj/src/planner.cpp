#include "edgecast/planner.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace edgecast::planner {

double delivery_latency(int macro_l, double rate, double file_bits, double bandwidth_hz,
                        int users, double mu) {
    if (macro_l < 1 || !(rate > 0.0) || !(file_bits > 0.0) || !(bandwidth_hz > 0.0) || users < 1)
        throw std::invalid_argument("delivery_latency: all arguments must be positive");
    if (!(mu > 0.0) || mu > 1.0) throw std::invalid_argument("delivery_latency: need 0 < mu <= 1");
    const double caching_gain = users * (1.0 - mu) / (1.0 + users * mu);
    return 1.0 / (macro_l * rate) * (file_bits / bandwidth_hz) * caching_gain;
}

double rate_at_outage(int macro_l, int n_r, double eta, double target_outage, Receiver receiver,
                      const EulerInversionParams& params) {
    if (!(target_outage > 0.0) || !(target_outage < 1.0))
        throw std::invalid_argument("rate_at_outage: target must be in (0, 1)");
    auto outage = [&](double rate) {
        return analysis::outage_analytic(rate, macro_l, n_r, eta, params, receiver);
    };
    double hi = 0.5;
    while (outage(hi) < target_outage) {
        hi *= 2.0;
        if (hi > 512.0) throw std::runtime_error("rate_at_outage: target outage unreachable");
    }
    double lo = 0.0;
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        if (outage(mid) < target_outage)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

PlannerResult optimize_l(const PlanConfig& config) {
    if (config.n_r < 1) throw std::invalid_argument("optimize_l: n_r must be >= 1");
    PlannerResult result;
    result.objective = config.objective;
    result.receiver = config.receiver;

    double best = -1.0;
    for (int l = 1; l <= config.n_r; ++l) {
        PlannerRecord rec;
        rec.macro_l = l;
        rec.avg_rate = (config.receiver == Receiver::kPzf)
                           ? analysis::avg_rate_pzf(l, config.n_r, config.eta)
                           : analysis::avg_rate_pzf_sic(l, config.n_r, config.eta);
        rec.rate_at_target_outage = rate_at_outage(l, config.n_r, config.eta,
                                                   config.target_outage, config.receiver,
                                                   config.euler);
        const double objective_rate = (config.objective == Objective::kAverageRate)
                                          ? rec.avg_rate
                                          : rec.rate_at_target_outage;
        rec.product_lr = l * objective_rate;
        rec.latency_s = delivery_latency(l, objective_rate, config.file_bits,
                                         config.bandwidth_hz, config.users, config.mu);
        if (rec.product_lr > best * (1.0 + 1e-12)) {  // ties keep the smaller L
            best = rec.product_lr;
            result.selected_l = l;
        }
        result.records.push_back(rec);
    }
    return result;
}

std::string PlannerResult::to_json() const {
    nlohmann::json j;
    j["objective"] = objective == Objective::kAverageRate ? "average-rate" : "target-outage";
    j["receiver"] = receiver == Receiver::kPzf ? "pzf" : "pzf-sic";
    j["selected_L"] = selected_l;
    j["records"] = nlohmann::json::array();
    for (const auto& r : records)
        j["records"].push_back({{"L", r.macro_l},
                                {"rate_at_target_outage", r.rate_at_target_outage},
                                {"avg_rate", r.avg_rate},
                                {"product_LR", r.product_lr},
                                {"latency_s", r.latency_s}});
    return j.dump(2);
}

}  // namespace edgecast::planner
