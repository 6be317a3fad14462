#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "uavtc/model.hpp"

namespace uavtc {

struct EstimatorResult {
    double estimate = 0.0;
    double std_error = 0.0;  // sample standard deviation / sqrt(replications)
    std::uint64_t replications = 0;
    std::uint64_t seed = 0;
    bool available = true;   // false when the conditioning event never occurred
};

struct MonteCarloOptions {
    unsigned workers = 1;
};

// UAVTC_WORKERS if set and positive, otherwise the hardware thread count.
unsigned default_worker_count();

// All four from one replication stream: SINR_0 and SINR_t share geometry and
// mobility; fading is redrawn at each instant.
struct JointSuccessEstimate {
    EstimatorResult joint;
    EstimatorResult marginal_0;
    EstimatorResult marginal_t;
    EstimatorResult retx_given_fail;  // P{SINR_t >= T | SINR_0 < T}
};

JointSuccessEstimate estimate_joint_success(const ScenarioConfig& scenario, const MonteCarloOptions& options = {});

struct EmpiricalPmf {
    std::vector<std::uint64_t> counts;
    std::vector<double> probs;
    std::uint64_t replications = 0;
    std::uint64_t seed = 0;

    double mean() const;
};

// Interferer count at time t given m interferers at time 0.
EmpiricalPmf estimate_conditional_pmf(int m, const ScenarioConfig& scenario, const MonteCarloOptions& options = {});

// Interferer count at time 0 in an unconditioned network.
EmpiricalPmf estimate_interferer_count(const ScenarioConfig& scenario, const MonteCarloOptions& options = {});

// P{SINR_t >= T | m interferers at time 0} for each linear threshold.
std::vector<EstimatorResult> estimate_conditional_success(int m, const ScenarioConfig& scenario,
                                                          std::span<const double> thresholds,
                                                          const MonteCarloOptions& options = {});

// Mean numbers of arrivals (outside at 0, inside at t) and departures
// (inside at 0, outside at t) given m interferers at time 0.
struct MobilityFlows {
    EstimatorResult arrivals;
    EstimatorResult departures;
};

MobilityFlows estimate_mobility_flows(int m, const ScenarioConfig& scenario, const MonteCarloOptions& options = {});

} // namespace uavtc
