#include "uavtc/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "uavtc/rng.hpp"
#include "uavtc/simulate.hpp"

namespace uavtc {

namespace {

// Runs per_rep(rng, tally) for every replication index with its own stream and
// merges worker tallies. Tallies only hold integer counts, so the merged
// result is independent of the worker count.
template <class Tally, class PerRep>
Tally run_replications(std::uint64_t replications, std::uint64_t seed, unsigned workers, PerRep per_rep)
{
    const std::uint64_t n_workers = std::clamp<std::uint64_t>(workers, 1, std::max<std::uint64_t>(replications, 1));
    std::vector<Tally> tallies(n_workers);
    auto work = [&](std::uint64_t w) {
        const std::uint64_t begin = replications * w / n_workers;
        const std::uint64_t end = replications * (w + 1) / n_workers;
        for (std::uint64_t rep = begin; rep < end; ++rep) {
            StreamRng rng(seed, rep);
            per_rep(rng, tallies[w]);
        }
    };
    if (n_workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (std::uint64_t w = 0; w < n_workers; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }
    Tally total;
    for (const Tally& t : tallies) total.merge(t);
    return total;
}

EstimatorResult proportion(std::uint64_t hits, std::uint64_t trials, std::uint64_t seed)
{
    EstimatorResult r;
    r.replications = trials;
    r.seed = seed;
    if (trials == 0) {
        r.available = false;
        r.estimate = std::nan("");
        r.std_error = std::nan("");
        return r;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(trials);
    r.estimate = p;
    r.std_error = trials > 1 ? std::sqrt(p * (1.0 - p) / static_cast<double>(trials - 1)) : 0.0;
    return r;
}

EstimatorResult sample_mean(std::uint64_t sum, std::uint64_t sum_sq, std::uint64_t n, std::uint64_t seed)
{
    EstimatorResult r;
    r.replications = n;
    r.seed = seed;
    if (n == 0) {
        r.available = false;
        return r;
    }
    const double mean = static_cast<double>(sum) / static_cast<double>(n);
    r.estimate = mean;
    if (n > 1) {
        const double var = (static_cast<double>(sum_sq) - static_cast<double>(sum) * mean) / static_cast<double>(n - 1);
        r.std_error = std::sqrt(std::max(0.0, var) / static_cast<double>(n));
    }
    return r;
}

struct JointTally {
    std::uint64_t success_0 = 0;
    std::uint64_t success_t = 0;
    std::uint64_t joint = 0;
    std::uint64_t trials = 0;

    void merge(const JointTally& o)
    {
        success_0 += o.success_0;
        success_t += o.success_t;
        joint += o.joint;
        trials += o.trials;
    }
};

struct HistogramTally {
    std::vector<std::uint64_t> counts;

    void add(int n)
    {
        const auto idx = static_cast<std::size_t>(n);
        if (counts.size() <= idx) counts.resize(idx + 1, 0);
        ++counts[idx];
    }
    void merge(const HistogramTally& o)
    {
        if (counts.size() < o.counts.size()) counts.resize(o.counts.size(), 0);
        for (std::size_t i = 0; i < o.counts.size(); ++i) counts[i] += o.counts[i];
    }
};

struct ThresholdTally {
    std::vector<std::uint64_t> hits;
    std::uint64_t trials = 0;

    void merge(const ThresholdTally& o)
    {
        if (hits.size() < o.hits.size()) hits.resize(o.hits.size(), 0);
        for (std::size_t i = 0; i < o.hits.size(); ++i) hits[i] += o.hits[i];
        trials += o.trials;
    }
};

struct FlowTally {
    std::uint64_t arrivals = 0;
    std::uint64_t arrivals_sq = 0;
    std::uint64_t departures = 0;
    std::uint64_t departures_sq = 0;
    std::uint64_t trials = 0;

    void merge(const FlowTally& o)
    {
        arrivals += o.arrivals;
        arrivals_sq += o.arrivals_sq;
        departures += o.departures;
        departures_sq += o.departures_sq;
        trials += o.trials;
    }
};

EmpiricalPmf to_pmf(const HistogramTally& tally, std::uint64_t replications, std::uint64_t seed)
{
    EmpiricalPmf pmf;
    pmf.counts = tally.counts;
    pmf.replications = replications;
    pmf.seed = seed;
    pmf.probs.reserve(pmf.counts.size());
    for (std::uint64_t c : pmf.counts)
        pmf.probs.push_back(static_cast<double>(c) / static_cast<double>(std::max<std::uint64_t>(replications, 1)));
    return pmf;
}

} // namespace

unsigned default_worker_count()
{
    if (const char* env = std::getenv("UAVTC_WORKERS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
            // fall through to the hardware default
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

double EmpiricalPmf::mean() const
{
    double m = 0.0;
    for (std::size_t n = 0; n < probs.size(); ++n) m += static_cast<double>(n) * probs[n];
    return m;
}

JointSuccessEstimate estimate_joint_success(const ScenarioConfig& sc, const MonteCarloOptions& options)
{
    if (sc.replications < 1) throw std::invalid_argument("estimate_joint_success: replications must be >= 1");
    const NetworkParams& params = sc.params;
    const double threshold = sc.threshold;

    const auto tally = run_replications<JointTally>(sc.replications, sc.seed, options.workers,
                                                    [&](StreamRng& rng, JointTally& t) {
                                                        const NetworkRealization net
                                                            = sample_network(params, sc.speed, sc.t_gap, rng);
                                                        const bool ok0 = sinr(net, params, Instant::Initial, rng)
                                                                         >= threshold;
                                                        const bool okt = sinr(net, params, Instant::Later, rng)
                                                                         >= threshold;
                                                        t.success_0 += ok0;
                                                        t.success_t += okt;
                                                        t.joint += ok0 && okt;
                                                        ++t.trials;
                                                    });

    JointSuccessEstimate e;
    e.joint = proportion(tally.joint, tally.trials, sc.seed);
    e.marginal_0 = proportion(tally.success_0, tally.trials, sc.seed);
    e.marginal_t = proportion(tally.success_t, tally.trials, sc.seed);
    e.retx_given_fail = proportion(tally.success_t - tally.joint, tally.trials - tally.success_0, sc.seed);
    return e;
}

EmpiricalPmf estimate_conditional_pmf(int m, const ScenarioConfig& sc, const MonteCarloOptions& options)
{
    if (m < 0) throw std::invalid_argument("estimate_conditional_pmf: m must be >= 0");
    const auto tally = run_replications<HistogramTally>(
        sc.replications, sc.seed, options.workers, [&](StreamRng& rng, HistogramTally& t) {
            const NetworkRealization net = sample_conditioned(m, sc.params, sc.speed, sc.t_gap, rng);
            t.add(count_in_footprint(net, sc.params, Instant::Later));
        });
    return to_pmf(tally, sc.replications, sc.seed);
}

EmpiricalPmf estimate_interferer_count(const ScenarioConfig& sc, const MonteCarloOptions& options)
{
    const auto tally = run_replications<HistogramTally>(
        sc.replications, sc.seed, options.workers, [&](StreamRng& rng, HistogramTally& t) {
            const NetworkRealization net = sample_network(sc.params, sc.speed, sc.t_gap, rng);
            t.add(count_in_footprint(net, sc.params, Instant::Initial));
        });
    return to_pmf(tally, sc.replications, sc.seed);
}

std::vector<EstimatorResult> estimate_conditional_success(int m, const ScenarioConfig& sc,
                                                          std::span<const double> thresholds,
                                                          const MonteCarloOptions& options)
{
    if (m < 0) throw std::invalid_argument("estimate_conditional_success: m must be >= 0");
    const auto tally = run_replications<ThresholdTally>(
        sc.replications, sc.seed, options.workers, [&](StreamRng& rng, ThresholdTally& t) {
            if (t.hits.size() < thresholds.size()) t.hits.resize(thresholds.size(), 0);
            const NetworkRealization net = sample_conditioned(m, sc.params, sc.speed, sc.t_gap, rng);
            const double s = sinr(net, sc.params, Instant::Later, rng);
            for (std::size_t i = 0; i < thresholds.size(); ++i) t.hits[i] += s >= thresholds[i];
            ++t.trials;
        });
    std::vector<EstimatorResult> out;
    out.reserve(thresholds.size());
    for (std::size_t i = 0; i < thresholds.size(); ++i)
        out.push_back(proportion(i < tally.hits.size() ? tally.hits[i] : 0, tally.trials, sc.seed));
    return out;
}

MobilityFlows estimate_mobility_flows(int m, const ScenarioConfig& sc, const MonteCarloOptions& options)
{
    if (m < 0) throw std::invalid_argument("estimate_mobility_flows: m must be >= 0");
    const double r_out = sc.params.antenna.r_out;
    const auto tally = run_replications<FlowTally>(
        sc.replications, sc.seed, options.workers, [&](StreamRng& rng, FlowTally& t) {
            const NetworkRealization net = sample_conditioned(m, sc.params, sc.speed, sc.t_gap, rng);
            std::uint64_t in = 0;
            std::uint64_t out = 0;
            for (const UavState& uav : net.uavs) {
                const bool inside_0 = ground_distance(uav, Instant::Initial, net.t_gap) <= r_out;
                const bool inside_t = ground_distance(uav, Instant::Later, net.t_gap) <= r_out;
                in += !inside_0 && inside_t;
                out += inside_0 && !inside_t;
            }
            t.arrivals += in;
            t.arrivals_sq += in * in;
            t.departures += out;
            t.departures_sq += out * out;
            ++t.trials;
        });
    MobilityFlows f;
    f.arrivals = sample_mean(tally.arrivals, tally.arrivals_sq, tally.trials, sc.seed);
    f.departures = sample_mean(tally.departures, tally.departures_sq, tally.trials, sc.seed);
    return f;
}

} // namespace uavtc
