// Acceptance checks: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "uavtc/analytic.hpp"
#include "uavtc/cli/experiment.hpp"
#include "uavtc/estimators.hpp"
#include "uavtc/mobility.hpp"
#include "uavtc/rng.hpp"

using namespace uavtc;

namespace {

// Pinned tolerances.
constexpr std::uint64_t kReplications = 100000;
constexpr double kMaxTv = 0.02;                 // 1
constexpr double kPaperMeanWindow = 0.5;        // 2
constexpr double kFlowSigmas = 2.0;             // 2
constexpr double kPmfSumTol = 1e-9;             // 3
constexpr double kDegenerateTol = 1e-12;        // 3
constexpr double kTheorem2Sigmas = 3.0;         // 4
constexpr double kMonotoneSlack = 1e-4;         // 5
constexpr double kFkgSlack = 1e-9;              // 6
constexpr double kReversalSigmas = 2.0;         // 7
constexpr double kJetRelTol = 1e-5;             // 8
constexpr double kFdStep = 0.4;                 // 8: largest step; halved twice for Richardson
constexpr double kInvarianceTol = 1e-6;         // 9
constexpr double kNoiseAnalyticTol = 1e-10;     // 10
constexpr double kNoiseSigmas = 3.0;            // 10
constexpr std::uint64_t kLemmaDraws = 10000000; // 11
constexpr double kLemmaSigmas = 4.0;            // 11: tolerance 4 / sqrt(N)

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, double a)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

ScenarioConfig paper_at(double t, std::uint64_t seed)
{
    ScenarioConfig sc = reference_scenario();
    sc.t_gap = t;
    sc.replications = kReplications;
    sc.seed = seed;
    return sc;
}

MonteCarloOptions workers()
{
    return {default_worker_count()};
}

Outcome theorem1_vs_mc()
{
    Outcome o;
    double worst = 0;
    std::uint64_t seed = 101;
    for (int m : {5, 15})
        for (double t : {1.0, 5.0}) {
            const ScenarioConfig sc = paper_at(t, seed++);
            const InterfererPmf an = conditional_interferer_pmf(m, sc.params, sc.speed, t);
            const EmpiricalPmf mc = estimate_conditional_pmf(m, sc, workers());
            const double tv = total_variation_distance(an.probs, mc.probs);
            worst = std::max(worst, tv);
            o.pass = o.pass && tv < kMaxTv;
            o.detail += " (m=" + std::to_string(m) + ",t=" + fmt("%g", t) + ") TV=" + fmt("%.4f", tv);
        }
    o.detail = "max TV " + fmt("%.4f", worst) + " < " + fmt("%g", kMaxTv) + ";" + o.detail;
    return o;
}

Outcome arrival_departure_means()
{
    Outcome o;
    const ScenarioConfig base = reference_scenario();
    struct Row {
        const char* what;
        double t, paper, analytic;
        bool arrivals;
    };
    std::vector<Row> rows;
    for (double t : {1.0, 5.0}) {
        rows.push_back({"arrivals", t, t == 1.0 ? 2.0 : 8.0, mean_arrivals(base.params, base.speed, t), true});
        rows.push_back({"departures", t, t == 1.0 ? 1.0 : 4.0, mean_departures(5, base.params, base.speed, t), false});
    }
    std::uint64_t seed = 201;
    for (const Row& r : rows) {
        const bool near_paper = std::abs(r.analytic - r.paper) <= kPaperMeanWindow;
        const MobilityFlows f = estimate_mobility_flows(5, paper_at(r.t, seed++), workers());
        const EstimatorResult& e = r.arrivals ? f.arrivals : f.departures;
        const double z = e.std_error > 0 ? (e.estimate - r.analytic) / e.std_error : 0.0;
        const bool near_mc = std::abs(e.estimate - r.analytic) <= kFlowSigmas * e.std_error;
        o.pass = o.pass && near_paper && near_mc;
        o.detail += std::string(" ") + r.what + "(t=" + fmt("%g", r.t) + ")=" + fmt("%.4f", r.analytic) + " [paper "
                    + fmt("%g", r.paper) + ", mc " + fmt("%.4f", e.estimate) + ", z " + fmt("%+.2f", z) + "]";
    }
    o.detail = "within " + fmt("%g", kPaperMeanWindow) + " of paper and " + fmt("%g", kFlowSigmas) + " se of MC:"
               + o.detail;
    return o;
}

Outcome pmf_normalization()
{
    Outcome o;
    const ScenarioConfig base = reference_scenario();
    double worst_sum = 0, worst_degenerate = 0;
    for (int m : {0, 1, 5, 15})
        for (double t : {0.0, 1.0, 5.0})
            for (const auto& s : {base.speed, SpeedDistribution::uniform(2, 12)}) {
                const InterfererPmf pmf = conditional_interferer_pmf(m, base.params, s, t);
                worst_sum = std::max(worst_sum, std::abs(pmf.total() - 1.0));
            }
    worst_sum = std::max(worst_sum, std::abs(unconditional_interferer_pmf(base.params).total() - 1.0));
    NetworkParams still = base.params;
    still.p_mobile = 0;
    for (int m : {0, 1, 5, 15})
        for (const InterfererPmf& pmf : {conditional_interferer_pmf(m, still, base.speed, 3.0),
                                         conditional_interferer_pmf(m, base.params, base.speed, 0.0)})
            for (int n = 0; n <= std::max(pmf.n_max(), m); ++n)
                worst_degenerate = std::max(worst_degenerate, std::abs(pmf.at(n) - (n == m ? 1.0 : 0.0)));
    o.pass = worst_sum <= kPmfSumTol && worst_degenerate <= kDegenerateTol;
    o.detail = "max |sum-1| " + fmt("%.2e", worst_sum) + " <= " + fmt("%g", kPmfSumTol) + "; point-mass error "
               + fmt("%.2e", worst_degenerate) + " <= " + fmt("%g", kDegenerateTol);
    return o;
}

Outcome theorem2_vs_mc()
{
    Outcome o;
    double worst = 0;
    std::string worst_at;
    for (int t = 1; t <= 10; ++t) {
        const ScenarioConfig sc = paper_at(t, 300 + static_cast<std::uint64_t>(t));
        const SuccessReport a = retransmission_report(sc.params, sc.speed, t, sc.threshold);
        const JointSuccessEstimate e = estimate_joint_success(sc, workers());
        const std::pair<const char*, std::pair<double, EstimatorResult>> rows[] = {
            {"joint", {a.p_joint, e.joint}},
            {"marginal_0", {a.p_marginal_0, e.marginal_0}},
            {"marginal_t", {a.p_marginal_t, e.marginal_t}},
            {"retx", {a.p_retx_given_fail, e.retx_given_fail}},
        };
        for (const auto& [name, pair] : rows) {
            const auto& [analytic, est] = pair;
            const double se = std::hypot(est.std_error, a.quadrature_error_bound);
            const double z = std::abs(est.estimate - analytic) / se;
            if (!est.available || !(z < kTheorem2Sigmas)) {
                o.pass = false;
                o.detail += std::string(" FAIL ") + name + " t=" + std::to_string(t) + " z=" + fmt("%.2f", z) + ";";
            }
            if (z > worst) {
                worst = z;
                worst_at = std::string(name) + " t=" + std::to_string(t);
            }
        }
    }
    o.detail = "40 comparisons, max |z| " + fmt("%.2f", worst) + " (" + worst_at + ") < " + fmt("%g", kTheorem2Sigmas)
               + o.detail;
    return o;
}

Outcome independence_recovery()
{
    Outcome o;
    const ScenarioConfig base = reference_scenario();
    std::vector<SuccessReport> r;
    for (int t = 1; t <= 10; ++t) r.push_back(retransmission_report(base.params, base.speed, t, base.threshold));
    bool monotone = true;
    for (std::size_t i = 1; i < r.size(); ++i)
        monotone = monotone && r[i].p_retx_given_fail >= r[i - 1].p_retx_given_fail - kMonotoneSlack;
    const double gap1 = r.front().p_marginal_t - r.front().p_retx_given_fail;
    const double gap10 = r.back().p_marginal_t - r.back().p_retx_given_fail;
    o.pass = monotone && gap10 < gap1;
    o.detail = std::string("p_retx non-decreasing: ") + (monotone ? "yes" : "no") + " (" + fmt("%.6f", r.front().p_retx_given_fail)
               + " -> " + fmt("%.6f", r.back().p_retx_given_fail) + "); gap to marginal " + fmt("%.5f", gap1)
               + " at t=1, " + fmt("%.5f", gap10) + " at t=10";
    return o;
}

Outcome fkg()
{
    Outcome o;
    int n = 0;
    double worst = -1;
    const ScenarioConfig base = reference_scenario();
    for (int k : {1, 2, 3})
        for (double p_mobile : {0.2, 0.8, 1.0})
            for (double t : {0.5, 1.0, 5.0})
                for (double tdb : {-20.0, -10.0, 0.0})
                    for (const auto& s : {base.speed, SpeedDistribution::uniform(2, 18)}) {
                        NetworkParams p = base.params;
                        p.fading.k = k;
                        p.p_mobile = p_mobile;
                        const SuccessReport r = retransmission_report(p, s, t, db_to_linear(tdb));
                        const double excess = r.p_retx_given_fail - r.p_marginal_t;
                        worst = std::max(worst, excess);
                        o.pass = o.pass && excess <= kFkgSlack;
                        ++n;
                    }
    o.detail = std::to_string(n) + " scenarios, max (p_retx - p_marginal_t) " + fmt("%.3e", worst) + " <= "
               + fmt("%g", kFkgSlack);
    return o;
}

Outcome direction_reversal()
{
    Outcome o;
    const std::vector<double> threshold{db_to_linear(-10)};
    std::uint64_t seed = 701;
    for (int m : {5, 15}) {
        const auto r1 = estimate_conditional_success(m, paper_at(1, seed++), threshold, workers()).front();
        const auto r5 = estimate_conditional_success(m, paper_at(5, seed++), threshold, workers()).front();
        const double diff = m == 5 ? r1.estimate - r5.estimate : r5.estimate - r1.estimate;
        const double se = std::hypot(r1.std_error, r5.std_error);
        const bool ok = diff > kReversalSigmas * se;
        o.pass = o.pass && ok;
        o.detail += " m=" + std::to_string(m) + ": " + fmt("%.4f", r1.estimate) + " (t=1) vs " + fmt("%.4f", r5.estimate)
                    + " (t=5), " + (m == 5 ? "decrease " : "increase ") + fmt("%.4f", diff) + " = "
                    + fmt("%.1f", diff / se) + " se;";
    }
    o.detail = "required > " + fmt("%g", kReversalSigmas) + " se:" + o.detail;
    return o;
}

// Central difference of order (i, j) with step h, extrapolated over h, h/2, h/4.
double richardson_partial(const std::function<double(double, double)>& f, double p1, double p2, int i, int j, double h)
{
    auto binom = [](int n, int r) { return std::tgamma(n + 1.0) / (std::tgamma(r + 1.0) * std::tgamma(n - r + 1.0)); };
    auto central = [&](double step) {
        double acc = 0;
        for (int a = 0; a <= i; ++a)
            for (int b = 0; b <= j; ++b)
                acc += ((a + b) % 2 ? -1.0 : 1.0) * binom(i, a) * binom(j, b)
                       * f(p1 + (0.5 * i - a) * step, p2 + (0.5 * j - b) * step);
        return acc / std::pow(step, i + j);
    };
    const double d1 = central(h), d2 = central(h / 2), d3 = central(h / 4);
    const double r1 = (4 * d2 - d1) / 3, r2 = (4 * d3 - d2) / 3;
    return (16 * r2 - r1) / 15;
}

Outcome derivative_machinery()
{
    Outcome o;
    AnalyticOptions tight;
    tight.angular = {1e-14, 1e-14, 20000};
    tight.speed = {1e-14, 1e-14, 20000};
    tight.radial = {1e-13, 1e-14, 40000};
    double worst = 0;
    for (int k : {1, 2, 3}) {
        const ScenarioConfig sc = reference_scenario();
        NetworkParams p = sc.params;
        p.fading.k = k;
        const JetShape shape{k - 1, k - 1, -1.0, -1.0};
        const Jet2 jet = success_transform_jet(p, sc.speed, 1.0, sc.threshold, shape, Slots::Both, tight).jet;
        std::map<std::pair<double, double>, double> cache;
        std::function<double(double, double)> f = [&](double s1, double s2) {
            auto [it, fresh] = cache.try_emplace({s1, s2}, 0.0);
            if (fresh) it->second = success_transform(p, sc.speed, 1.0, sc.threshold, s1, s2, tight);
            return it->second;
        };
        for (int i = 0; i <= k - 1; ++i)
            for (int j = 0; j <= k - 1; ++j) {
                const double exact = jet(i, j) * std::tgamma(i + 1.0) * std::tgamma(j + 1.0);
                const double fd = i + j == 0 ? f(-1, -1) : richardson_partial(f, -1, -1, i, j, kFdStep);
                const double rel = std::abs(fd - exact) / std::abs(exact);
                worst = std::max(worst, rel);
                if (!(rel < kJetRelTol)) {
                    o.pass = false;
                    o.detail += " FAIL k=" + std::to_string(k) + " (" + std::to_string(i) + "," + std::to_string(j)
                                + ") rel " + fmt("%.2e", rel) + ";";
                }
            }
    }
    o.detail = "max relative error " + fmt("%.2e", worst) + " < " + fmt("%g", kJetRelTol) + " over k=1..3" + o.detail;
    return o;
}

Outcome displacement_invariance()
{
    Outcome o;
    double worst = 0;
    const ScenarioConfig sc = reference_scenario();
    for (int k : {1, 2})
        for (double t : {1.0, 5.0}) {
            NetworkParams p = sc.params;
            p.fading.k = k;
            const double m0 = marginal_success(p, sc.speed, t, sc.threshold, Instant::Initial).value;
            const double mt = marginal_success(p, sc.speed, t, sc.threshold, Instant::Later).value;
            worst = std::max(worst, std::abs(m0 - mt));
        }
    o.pass = worst < kInvarianceTol;
    o.detail = "max |P0 - Pt| " + fmt("%.2e", worst) + " < " + fmt("%g", kInvarianceTol);
    return o;
}

Outcome noise_only()
{
    Outcome o;
    ScenarioConfig sc = paper_at(1, 1001);
    sc.params.lambda = 0;
    sc.params.fading.k = 1;
    const auto& p = sc.params;
    const double closed = std::exp(-2 * sc.threshold * std::pow(p.height, p.alpha) * p.noise
                                   / (p.fading.omega * p.antenna.g_main));
    const double analytic = joint_success(p, sc.speed, 1, sc.threshold).value;
    const JointSuccessEstimate e = estimate_joint_success(sc, workers());
    const double an_err = std::abs(analytic - closed);
    const double z = e.joint.std_error > 0 ? std::abs(e.joint.estimate - closed) / e.joint.std_error : 0.0;
    const bool mc_ok = std::abs(e.joint.estimate - closed) <= kNoiseSigmas * e.joint.std_error;
    o.pass = an_err <= kNoiseAnalyticTol && mc_ok;
    o.detail = "closed form " + fmt("%.9f", closed) + "; analytic error " + fmt("%.2e", an_err) + " <= "
               + fmt("%g", kNoiseAnalyticTol) + "; MC " + fmt("%.6f", e.joint.estimate) + " (|z| " + fmt("%.2f", z) + ")";
    return o;
}

Outcome lemma1_oracle()
{
    Outcome o;
    struct Point {
        double r, x;
        SpeedDistribution speed;
    };
    const double t = 1;
    const auto fixed = SpeedDistribution::fixed(10);
    const auto uniform = SpeedDistribution::uniform(5, 15);
    std::vector<Point> grid;
    for (double r : {15.0, 25.0}) {
        // fixed v = 10: both boundaries r - vt and r + vt, the origin, and interior points
        for (double x : {0.0, r - 10, r + 10, 0.5 * r, r + 5}) grid.push_back({r, x, fixed});
        // uniform on [5, 15]: boundaries at the extreme speed
        for (double x : {0.0, r - 15, r + 15, r, r + 2}) grid.push_back({r, x, uniform});
    }
    const double tol = kLemmaSigmas / std::sqrt(static_cast<double>(kLemmaDraws));
    double worst = 0;
    std::uint64_t stream = 0;
    for (const Point& pt : grid) {
        StreamRng rng(1101, stream++);
        std::uint64_t inside = 0;
        for (std::uint64_t i = 0; i < kLemmaDraws; ++i) {
            const double v = pt.speed.quantile(rng.uniform());
            const double theta = 2 * kPi * rng.uniform();
            inside += displaced_distance(pt.x, Displacement{v, theta, t}) <= pt.r;
        }
        const double freq = static_cast<double>(inside) / static_cast<double>(kLemmaDraws);
        const double err = std::abs(freq - containment_cdf(pt.r, pt.x, pt.speed, t));
        worst = std::max(worst, err);
        if (!(err <= tol)) {
            o.pass = false;
            o.detail += " FAIL r=" + fmt("%g", pt.r) + " x=" + fmt("%g", pt.x) + " err " + fmt("%.2e", err) + ";";
        }
    }
    o.detail = std::to_string(grid.size()) + " points, max |F - freq| " + fmt("%.2e", worst) + " <= " + fmt("%.2e", tol)
               + o.detail;
    return o;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism()
{
    namespace fs = std::filesystem;
    Outcome o;
    const fs::path root = fs::temp_directory_path() / "uavtc_acceptance_determinism";
    fs::remove_all(root);
    std::ostringstream log;
    std::vector<std::string> bodies;
    for (unsigned w : {1u, 3u}) {
        cli::ExperimentSpec spec;
        spec.kind = cli::ExperimentKind::Compare;
        spec.scenario = reference_scenario();
        spec.scenario.seed = 1201;
        spec.t_list = {1, 5};
        spec.threshold_db_list = {-10, 0};
        spec.m_list = {5};
        spec.workers = w;
        spec.out_dir = root / ("workers_" + std::to_string(w));
        cli::run_and_write(spec, log);
        bodies.push_back(slurp(spec.out_dir / "results.csv"));
    }
    fs::remove_all(root);
    o.pass = bodies[0] == bodies[1] && !bodies[0].empty();
    o.detail = "compare with 1 and 3 workers: results.csv " + std::string(o.pass ? "byte-identical" : "differs") + " ("
               + std::to_string(bodies[0].size()) + " bytes)";
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"conditional interferer pmf vs Monte Carlo", theorem1_vs_mc},
        {"arrival/departure means", arrival_departure_means},
        {"pmf normalization", pmf_normalization},
        {"joint success vs Monte Carlo", theorem2_vs_mc},
        {"independence recovery", independence_recovery},
        {"FKG inequality", fkg},
        {"conditional success direction reversal", direction_reversal},
        {"derivative machinery", derivative_machinery},
        {"displacement invariance", displacement_invariance},
        {"noise-only closed form", noise_only},
        {"containment cdf vs sampling", lemma1_oracle},
        {"determinism across worker counts", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failures += !o.pass;
        std::printf("criterion %2zu %s  %s: %s [%.1fs]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
