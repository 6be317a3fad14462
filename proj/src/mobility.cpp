#include "uavtc/mobility.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

namespace uavtc {

double displaced_distance(double x, const Displacement& d)
{
    const double vt = d.speed * d.duration;
    const double scale = x * x + vt * vt;
    double radicand = scale - 2.0 * x * vt * std::cos(d.angle);
    if (radicand < 0.0) {
        assert(-radicand < 1e-12 * scale + 1e-300);
        radicand = 0.0;
    }
    return std::sqrt(radicand);
}

double clamped_acos(double z)
{
    if (!(std::abs(z) <= 1.0 + 1e-9)) throw std::logic_error("clamped_acos: argument outside [-1, 1]");
    return std::acos(std::clamp(z, -1.0, 1.0));
}

double containment_cdf(double r, double x, const SpeedDistribution& speed, double t, const QuadratureSpec& spec)
{
    if (t < 0.0) throw std::invalid_argument("containment_cdf: t must be >= 0");
    if (!(r > 0.0)) throw std::invalid_argument("containment_cdf: r must be positive");
    if (!(x >= 0.0)) throw std::invalid_argument("containment_cdf: x must be >= 0");

    if (t == 0.0 || speed.support_max() == 0.0) return x <= r ? 1.0 : 0.0;
    // From the origin the displaced distance is exactly v t.
    if (x == 0.0) return speed.cdf(r / t);

    auto angular_fraction = [r, x, t](double v) {
        const double vt = v * t;
        return clamped_acos((x * x + vt * vt - r * r) / (2.0 * x * vt)) / std::numbers::pi;
    };
    const double v_stay = (r - x) / t;
    const double v_lo = std::abs(x - r) / t;
    const double v_hi = (x + r) / t;

    if (const auto* f = std::get_if<SpeedDistribution::Fixed>(&speed.variant())) {
        if (f->v <= v_stay) return 1.0;
        if (f->v >= v_lo && f->v <= v_hi) return angular_fraction(f->v);
        return 0.0;
    }

    const double stay = v_stay > 0.0 ? speed.cdf(v_stay) : 0.0;
    const auto crossing = integrate_against_density(speed, v_lo, v_hi, angular_fraction, {}, spec);
    return std::clamp(stay + crossing.value, 0.0, 1.0);
}

} // namespace uavtc
