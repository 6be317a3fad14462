#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "uavtc/analytic.hpp"
#include "uavtc/mobility.hpp"

using namespace uavtc;

namespace {

constexpr double kPi = std::numbers::pi;

// Closed-form containment for a fixed speed, written out independently.
double fixed_containment(double r, double x, double vt)
{
    if (vt <= r - x) return 1.0;
    if (vt < std::abs(x - r) || vt > x + r) return 0.0;
    const double z = (x * x + vt * vt - r * r) / (2 * x * vt);
    return std::acos(std::clamp(z, -1.0, 1.0)) / kPi;
}

double midpoint_ingress(double r_out, double vt, int n = 1000000)
{
    double acc = 0;
    const double h = r_out / n;
    for (int i = 0; i < n; ++i) {
        const double x = (i + 0.5) * h;
        acc += fixed_containment(r_out, x, vt) * 2 * x / (r_out * r_out);
    }
    return acc * h;
}

double midpoint_egress(const NetworkParams& p, double vt, int n = 1000000)
{
    const double r = p.antenna.r_out;
    double acc = 0;
    const double h = vt / n;
    for (int i = 0; i < n; ++i) {
        const double x = r + (i + 0.5) * h;
        acc += fixed_containment(r, x, vt) * x;
    }
    return 2 * kPi * p.lambda * p.p_mobile * acc * h;
}

// Survivors of the initial m are Binomial(m, q); arrivals are Poisson(A).
std::vector<double> binomial_poisson(int m, double q, double a, int n_max)
{
    std::vector<double> bin(static_cast<std::size_t>(m) + 1), out(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (int i = 0; i <= m; ++i)
        bin[static_cast<std::size_t>(i)] = std::exp(std::lgamma(m + 1.0) - std::lgamma(i + 1.0) - std::lgamma(m - i + 1.0))
                                           * std::pow(q, i) * std::pow(1 - q, m - i);
    for (int n = 0; n <= n_max; ++n)
        for (int i = 0; i <= std::min(n, m); ++i)
            out[static_cast<std::size_t>(n)] += bin[static_cast<std::size_t>(i)]
                                               * std::exp(-a + (n - i) * std::log(a) - std::lgamma(n - i + 1.0));
    return out;
}

const ScenarioConfig& paper()
{
    static const ScenarioConfig sc = reference_scenario();
    return sc;
}

} // namespace

TEST_CASE("ingress integral")
{
    const auto& p = paper().params;
    CHECK(footprint_ingress_integral(p, paper().speed, 0.0) == 1.0);
    CHECK(footprint_ingress_integral(p, SpeedDistribution::fixed(0), 3.0) == 1.0);
    for (double t : {0.5, 1.0, 2.0, 2.5, 4.0}) {
        const double oracle = midpoint_ingress(25, 10 * t);
        CHECK(footprint_ingress_integral(p, paper().speed, t) == doctest::Approx(oracle).epsilon(1e-8).scale(1e-8));
    }
    CHECK(footprint_ingress_integral(p, paper().speed, 1.0) == doctest::Approx(0.747060078).epsilon(1e-8));
    // beyond 2 r_out / v nobody can still be inside
    CHECK(footprint_ingress_integral(p, paper().speed, 5.0) == doctest::Approx(0.0).scale(1e-12));
}

TEST_CASE("egress integral (mean arrivals)")
{
    const auto& p = paper().params;
    for (double t : {1.0, 2.0, 5.0}) {
        const double oracle = midpoint_egress(p, 10 * t);
        CHECK(footprint_egress_integral(p, paper().speed, t) == doctest::Approx(oracle).epsilon(1e-8));
    }
    CHECK(mean_arrivals(p, paper().speed, 1.0) == doctest::Approx(2.0).epsilon(0.25));
    CHECK(mean_arrivals(p, paper().speed, 5.0) == doctest::Approx(8.0).epsilon(0.0625));
    NetworkParams still = p;
    still.p_mobile = 0;
    CHECK(footprint_egress_integral(still, paper().speed, 1.0) == 0.0);
    CHECK(footprint_egress_integral(p, paper().speed, 0.0) == 0.0);
}

TEST_CASE("egress integral matches a midpoint oracle for a uniform speed")
{
    const auto& p = paper().params;
    const auto u = SpeedDistribution::uniform(5, 15);
    const double t = 1.5, r = 25;
    // midpoint in x, containment_cdf itself cross-checked by sampling in the mobility tests
    const int n = 20000;
    const double hi = r + 15 * t, h = (hi - r) / n;
    double acc = 0;
    for (int i = 0; i < n; ++i) {
        const double x = r + (i + 0.5) * h;
        acc += containment_cdf(r, x, u, t) * x;
    }
    const double oracle = 2 * kPi * p.lambda * p.p_mobile * acc * h;
    CHECK(footprint_egress_integral(p, u, t) == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("mean departures")
{
    const auto& p = paper().params;
    CHECK(mean_departures(5, p, paper().speed, 1.0) == doctest::Approx(1.0117597).epsilon(1e-6));
    CHECK(mean_departures(15, p, paper().speed, 1.0) == doctest::Approx(3.0352791).epsilon(1e-6));
    CHECK(mean_departures(5, p, paper().speed, 5.0) == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(mean_departures(15, p, paper().speed, 5.0) == doctest::Approx(12.0).epsilon(1e-9));
    CHECK(mean_departures(5, p, paper().speed, 0.0) == 0.0);
}

TEST_CASE("conditional pmf degenerate identities")
{
    NetworkParams still = paper().params;
    still.p_mobile = 0;
    for (int m : {0, 3, 15}) {
        const InterfererPmf a = conditional_interferer_pmf(m, still, paper().speed, 2.0);
        const InterfererPmf b = conditional_interferer_pmf(m, paper().params, paper().speed, 0.0);
        for (int n = 0; n <= std::max(a.n_max(), b.n_max()); ++n) {
            CHECK(a.at(n) == doctest::Approx(n == m ? 1.0 : 0.0).epsilon(1e-12).scale(1e-12));
            CHECK(b.at(n) == doctest::Approx(n == m ? 1.0 : 0.0).epsilon(1e-12).scale(1e-12));
        }
    }
    NetworkParams all_mobile = paper().params;
    all_mobile.p_mobile = 1;
    const InterfererPmf z = conditional_interferer_pmf(0, all_mobile, SpeedDistribution::fixed(0), 4.0);
    CHECK(z.at(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(z.total() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("conditional pmf equals the binomial-Poisson convolution")
{
    support::Gen g(2);
    for (int trial = 0; trial < 20; ++trial) {
        NetworkParams p = paper().params;
        p.p_mobile = g.uniform(0, 1);
        p.lambda = g.uniform(1e-3, 1e-2);
        const SpeedDistribution s = g.speed();
        const double t = g.uniform(0, 4);
        const int m = g.integer(0, 20);
        const InterfererPmf pmf = conditional_interferer_pmf(m, p, s, t);
        const double stay = (1 - p.p_mobile) + p.p_mobile * footprint_ingress_integral(p, s, t);
        const double arrivals = footprint_egress_integral(p, s, t);
        const auto oracle = binomial_poisson(m, stay, arrivals, pmf.n_max());
        for (int n = 0; n <= pmf.n_max(); ++n)
            CHECK(pmf.at(n) == doctest::Approx(oracle[static_cast<std::size_t>(n)]).epsilon(1e-10).scale(1e-14));
    }
}

TEST_CASE("conditional pmf is normalized on the grid")
{
    for (int m : {0, 1, 5, 15})
        for (double t : {0.0, 1.0, 5.0})
            for (const auto& s : {paper().speed, SpeedDistribution::uniform(2, 12)}) {
                const InterfererPmf pmf = conditional_interferer_pmf(m, paper().params, s, t);
                CHECK(std::abs(pmf.total() - 1.0) <= 1e-9);
                CHECK(pmf.tail_mass < 1e-9);
                for (double v : pmf.probs) CHECK(v >= 0.0);
                const double mean = m - mean_departures(m, paper().params, s, t) + mean_arrivals(paper().params, s, t);
                CHECK(pmf.mean() == doctest::Approx(mean).epsilon(1e-8));
            }
}

TEST_CASE("paper means of the conditional pmf")
{
    const auto& p = paper().params;
    CHECK(conditional_interferer_pmf(5, p, paper().speed, 1.0).mean() == doctest::Approx(5.9748).epsilon(1e-4));
    CHECK(conditional_interferer_pmf(15, p, paper().speed, 5.0).mean() == doctest::Approx(11.0).epsilon(0.02));
}

TEST_CASE("correlation fades with the time gap")
{
    const InterfererPmf poisson = unconditional_interferer_pmf(paper().params);
    for (int m : {5, 15}) {
        double prev = 1.0;
        for (double t : {1.0, 2.0, 5.0, 10.0, 50.0}) {
            const InterfererPmf pmf = conditional_interferer_pmf(m, paper().params, paper().speed, t);
            const double tv = total_variation_distance(pmf.probs, poisson.probs);
            CHECK(tv <= prev + 1e-12);
            prev = tv;
        }
    }
}

TEST_CASE("unconditional pmf")
{
    const InterfererPmf u = unconditional_interferer_pmf(paper().params);
    CHECK(u.mean() == doctest::Approx(0.005 * kPi * 625).epsilon(1e-9));
    CHECK(u.mean() == doctest::Approx(9.817).epsilon(1e-4));
    CHECK(std::abs(u.total() - 1) <= 1e-9);
    NetworkParams empty = paper().params;
    empty.lambda = 0;
    const InterfererPmf z = unconditional_interferer_pmf(empty);
    CHECK(z.at(0) == 1.0);
    CHECK(z.total() == 1.0);
}

TEST_CASE("explicit n_max and total variation")
{
    const InterfererPmf pmf = conditional_interferer_pmf(5, paper().params, paper().speed, 1.0, 8);
    CHECK(pmf.n_max() == 8);
    CHECK(pmf.tail_mass > 0.0);
    CHECK(pmf.total() + pmf.tail_mass == doctest::Approx(1.0).epsilon(1e-12));
    const std::vector<double> a{0.5, 0.5}, b{0.5, 0.25, 0.25};
    CHECK(total_variation_distance(a, b) == doctest::Approx(0.25));
    CHECK(total_variation_distance(a, a) == 0.0);
    CHECK_THROWS(conditional_interferer_pmf(-1, paper().params, paper().speed, 1.0));
}
