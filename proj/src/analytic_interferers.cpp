#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "uavtc/analytic.hpp"
#include "uavtc/mobility.hpp"
#include "uavtc/numerics/combinatorics.hpp"

namespace uavtc {

namespace {

constexpr double kTailTolerance = 1e-9;

// Radii where F(r | x) stops being smooth in x, for every speed breakpoint.
std::vector<double> containment_kinks(double r, const SpeedDistribution& speed, double t)
{
    std::vector<double> kinks;
    for (double v : speed.breakpoints()) {
        const double vt = v * t;
        kinks.insert(kinks.end(), {r - vt, r + vt, vt - r});
    }
    return kinks;
}

// Appends pmf terms until the tail falls below tolerance / max(1, mean) or the
// cap is reached; `term(n)` returns P{N = n}.
template <class Term>
InterfererPmf accumulate_pmf(int m, double t, double mean, int cap, int n_max, Term&& term)
{
    InterfererPmf pmf;
    pmf.m = m;
    pmf.t = t;
    const double tol = kTailTolerance / std::max(1.0, mean);
    double cumulative = 0.0;
    for (int n = 0;; ++n) {
        const double pn = term(n);
        pmf.probs.push_back(pn);
        cumulative += pn;
        if (n_max >= 0) {
            if (n >= n_max) break;
        } else if (1.0 - cumulative < tol || n >= cap) {
            break;
        }
    }
    pmf.tail_mass = std::max(0.0, 1.0 - cumulative);
    return pmf;
}

} // namespace

double InterfererPmf::total() const { return std::accumulate(probs.begin(), probs.end(), 0.0); }

double InterfererPmf::mean() const
{
    double m = 0.0;
    for (std::size_t n = 0; n < probs.size(); ++n) m += static_cast<double>(n) * probs[n];
    return m;
}

double footprint_ingress_integral(const NetworkParams& params, const SpeedDistribution& speed, double t,
                                  const QuadratureSpec& spec)
{
    if (t < 0.0) throw std::invalid_argument("footprint_ingress_integral: t must be >= 0");
    const double r = params.antenna.r_out;
    if (t == 0.0 || speed.support_max() == 0.0) return 1.0;

    auto integrand = [&](double x) { return containment_cdf(r, x, speed, t) * 2.0 * x / (r * r); };
    const auto kinks = containment_kinks(r, speed, t);
    const auto pts = make_breakpoints(0.0, r, kinks);
    const double value = integrate(integrand, std::span<const double>(pts), spec).value;
    return std::clamp(value, 0.0, 1.0);
}

double footprint_egress_integral(const NetworkParams& params, const SpeedDistribution& speed, double t,
                                 const QuadratureSpec& spec)
{
    if (t < 0.0) throw std::invalid_argument("footprint_egress_integral: t must be >= 0");
    const double r = params.antenna.r_out;
    const double reach = speed.support_max() * t;
    if (reach == 0.0 || params.p_mobile == 0.0 || params.lambda == 0.0) return 0.0;

    // F(r | x) vanishes identically beyond r + v_max t.
    auto integrand = [&](double x) { return containment_cdf(r, x, speed, t) * x; };
    const auto kinks = containment_kinks(r, speed, t);
    const auto pts = make_breakpoints(r, r + reach, kinks);
    const double value = integrate(integrand, std::span<const double>(pts), spec).value;
    return 2.0 * std::numbers::pi * params.lambda * params.p_mobile * value;
}

double mean_departures(int m, const NetworkParams& params, const SpeedDistribution& speed, double t)
{
    if (m < 0) throw std::invalid_argument("mean_departures: m must be >= 0");
    if (m == 0 || params.p_mobile == 0.0) return 0.0;
    return m * params.p_mobile * (1.0 - footprint_ingress_integral(params, speed, t));
}

InterfererPmf conditional_interferer_pmf(int m, const NetworkParams& params, const SpeedDistribution& speed, double t,
                                         int n_max)
{
    if (m < 0) throw std::invalid_argument("conditional_interferer_pmf: m must be >= 0");
    const double p = params.p_mobile;
    const double ingress = footprint_ingress_integral(params, speed, t);
    const double arrivals = footprint_egress_integral(params, speed, t);

    // Each of the m initial interferers leaves with probability p (1 - ingress);
    // arrivals from outside are Poisson(arrivals).
    const double log_leave = std::log(p * (1.0 - ingress));
    const double log_stay = std::log(p * ingress + 1.0 - p);
    const double leave = p * (1.0 - ingress);
    const double stay = p * ingress + 1.0 - p;

    auto term = [&](int n) {
        double sum = 0.0;
        for (int i = 0; i <= std::min(n, m); ++i) {
            const double log_term = log_binomial(n, i) + falling_factorial_log(m, i)
                                    + (leave == 0.0 ? log_power(0.0, m - i) : (m - i) * log_leave)
                                    + (stay == 0.0 ? log_power(0.0, i) : i * log_stay)
                                    + log_power(arrivals, n - i) - arrivals - std::lgamma(n + 1.0);
            sum += std::exp(log_term);
        }
        return sum;
    };
    const double mean = m * stay + arrivals;
    const int cap = m + static_cast<int>(std::ceil(arrivals + 12.0 * std::sqrt(arrivals))) + 20;
    return accumulate_pmf(m, t, mean, cap, n_max, term);
}

InterfererPmf unconditional_interferer_pmf(const NetworkParams& params, int n_max)
{
    const double r = params.antenna.r_out;
    const double mu = params.lambda * std::numbers::pi * r * r;
    auto term = [mu](int n) { return std::exp(log_power(mu, n) - mu - std::lgamma(n + 1.0)); };
    const int cap = static_cast<int>(std::ceil(mu + 12.0 * std::sqrt(mu))) + 20;
    return accumulate_pmf(-1, 0.0, mu, cap, n_max, term);
}

double total_variation_distance(std::span<const double> a, std::span<const double> b)
{
    const std::size_t n = std::max(a.size(), b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = i < a.size() ? a[i] : 0.0;
        const double y = i < b.size() ? b[i] : 0.0;
        s += std::abs(x - y);
    }
    return 0.5 * s;
}

} // namespace uavtc
