#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "uavtc/model.hpp"
#include "uavtc/rng.hpp"

namespace uavtc {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct UavState {
    Point position0;
    bool is_mobile = false;
    double speed = 0.0;
    double angle = 0.0;  // heading; 0 points at the typical UAV
};

// Non-serving UAVs around the typical one at the origin.
struct NetworkRealization {
    std::vector<UavState> uavs;
    double region_radius = 0.0;
    double t_gap = 0.0;
};

// r_out + v_max t: UAVs farther out are outside the footprint at both instants.
double simulation_radius(const NetworkParams& params, const SpeedDistribution& speed, double t);

NetworkRealization sample_network(const NetworkParams& params, const SpeedDistribution& speed, double t,
                                  StreamRng& rng);
// Same, over an explicit disk radius.
NetworkRealization sample_network_in(const NetworkParams& params, const SpeedDistribution& speed, double t,
                                     double region_radius, StreamRng& rng);

// Exactly m UAVs uniform in b(o, r_out) plus a PPP on the annulus out to the
// simulation radius: the network conditioned on m interferers at time 0.
NetworkRealization sample_conditioned(int m, const NetworkParams& params, const SpeedDistribution& speed, double t,
                                      StreamRng& rng);

double ground_distance(const UavState& uav, Instant at, double t);

// Sectorized gain times (h^2 + d^2)^(-alpha/2), fading excluded.
double path_gain(const UavState& uav, const NetworkParams& params, Instant at, double t);

int count_in_footprint(const NetworkRealization& net, const NetworkParams& params, Instant at);

// Sum over UAVs of fading * path gain. `draw_fading()` is called once per UAV
// with non-zero path gain, in list order.
template <class FadingSource>
double interference(const NetworkRealization& net, const NetworkParams& params, Instant at, FadingSource&& draw_fading)
{
    double total = 0.0;
    for (const UavState& uav : net.uavs) {
        const double g = path_gain(uav, params, at, net.t_gap);
        if (g > 0.0) total += draw_fading() * g;
    }
    return total;
}

// Gamma(k, omega) draw.
double draw_fading(const FadingParams& fading, StreamRng& rng);

double interference(const NetworkRealization& net, const NetworkParams& params, Instant at, StreamRng& rng);

// G_m h_o h^(-alpha) / (I + sigma^2); +inf when both I and sigma^2 are zero.
double sinr_from(double serving_fading, double interference_power, const NetworkParams& params);

// Draws the serving-link fading, then the interferers' fading, for one instant.
double sinr(const NetworkRealization& net, const NetworkParams& params, Instant at, StreamRng& rng);

} // namespace uavtc
