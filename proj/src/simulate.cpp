#include "uavtc/simulate.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "uavtc/mobility.hpp"

namespace uavtc {

namespace {

UavState draw_uav(double r_lo, double r_hi, const NetworkParams& params, const SpeedDistribution& speed,
                  StreamRng& rng)
{
    // uniform on the annulus r_lo < |x| <= r_hi
    const double radius = std::sqrt(r_lo * r_lo + rng.uniform() * (r_hi * r_hi - r_lo * r_lo));
    const double psi = 2.0 * std::numbers::pi * rng.uniform();
    UavState uav;
    uav.position0 = Point{radius * std::cos(psi), radius * std::sin(psi)};
    uav.is_mobile = rng.uniform() < params.p_mobile;
    uav.speed = speed.quantile(rng.uniform());
    uav.angle = 2.0 * std::numbers::pi * rng.uniform();
    return uav;
}

std::uint64_t draw_poisson(double mean, StreamRng& rng)
{
    if (mean <= 0.0) return 0;
    std::poisson_distribution<std::uint64_t> dist(mean);
    return dist(rng);
}

} // namespace

double simulation_radius(const NetworkParams& params, const SpeedDistribution& speed, double t)
{
    return params.antenna.r_out + speed.support_max() * t;
}

NetworkRealization sample_network(const NetworkParams& params, const SpeedDistribution& speed, double t,
                                  StreamRng& rng)
{
    return sample_network_in(params, speed, t, simulation_radius(params, speed, t), rng);
}

NetworkRealization sample_network_in(const NetworkParams& params, const SpeedDistribution& speed, double t,
                                     double region_radius, StreamRng& rng)
{
    NetworkRealization net;
    net.region_radius = region_radius;
    net.t_gap = t;
    const std::uint64_t n = draw_poisson(params.lambda * std::numbers::pi * region_radius * region_radius, rng);
    net.uavs.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) net.uavs.push_back(draw_uav(0.0, region_radius, params, speed, rng));
    return net;
}

NetworkRealization sample_conditioned(int m, const NetworkParams& params, const SpeedDistribution& speed, double t,
                                      StreamRng& rng)
{
    if (m < 0) throw std::invalid_argument("sample_conditioned: m must be >= 0");
    const double r_out = params.antenna.r_out;
    const double region = simulation_radius(params, speed, t);
    NetworkRealization net;
    net.region_radius = region;
    net.t_gap = t;
    for (int i = 0; i < m; ++i) net.uavs.push_back(draw_uav(0.0, r_out, params, speed, rng));
    const double annulus = std::numbers::pi * (region * region - r_out * r_out);
    const std::uint64_t n = draw_poisson(params.lambda * annulus, rng);
    for (std::uint64_t i = 0; i < n; ++i) net.uavs.push_back(draw_uav(r_out, region, params, speed, rng));
    return net;
}

double ground_distance(const UavState& uav, Instant at, double t)
{
    const double x = std::hypot(uav.position0.x, uav.position0.y);
    if (at == Instant::Initial || !uav.is_mobile) return x;
    return displaced_distance(x, Displacement{uav.speed, uav.angle, t});
}

double path_gain(const UavState& uav, const NetworkParams& params, Instant at, double t)
{
    const double d = ground_distance(uav, at, t);
    const double g = gain_at(params.antenna, d);
    if (g == 0.0) return 0.0;
    return g * std::pow(params.height * params.height + d * d, -0.5 * params.alpha);
}

int count_in_footprint(const NetworkRealization& net, const NetworkParams& params, Instant at)
{
    int n = 0;
    for (const UavState& uav : net.uavs)
        if (ground_distance(uav, at, net.t_gap) <= params.antenna.r_out) ++n;
    return n;
}

double draw_fading(const FadingParams& fading, StreamRng& rng)
{
    std::gamma_distribution<double> dist(fading.k, fading.omega);
    return dist(rng);
}

double interference(const NetworkRealization& net, const NetworkParams& params, Instant at, StreamRng& rng)
{
    return interference(net, params, at, [&]() { return draw_fading(params.fading, rng); });
}

double sinr_from(double serving_fading, double interference_power, const NetworkParams& params)
{
    const double signal = params.antenna.g_main * serving_fading * std::pow(params.height, -params.alpha);
    const double denom = interference_power + params.noise;
    if (denom == 0.0) return std::numeric_limits<double>::infinity();
    return signal / denom;
}

double sinr(const NetworkRealization& net, const NetworkParams& params, Instant at, StreamRng& rng)
{
    const double serving = draw_fading(params.fading, rng);
    const double i = interference(net, params, at, rng);
    return sinr_from(serving, i, params);
}

} // namespace uavtc
