#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "uavtc/model.hpp"
#include "uavtc/numerics/quadrature.hpp"

namespace uavtc {

// Straight-line motion of one UAV over [0, t]. angle = 0 points at the origin.
struct Displacement {
    double speed = 0.0;
    double angle = 0.0;
    double duration = 0.0;
};

// Ground distance from the origin after moving from distance x:
// sqrt(x^2 + v^2 t^2 - 2 x v t cos(angle)).
double displaced_distance(double x, const Displacement& d);

// arccos with the argument clamped to [-1, 1]; throws std::logic_error if it
// was off by more than 1e-9 (an internal invariant).
double clamped_acos(double z);

inline constexpr QuadratureSpec kSpeedQuadrature{1e-10, 1e-10, 2000};

// Probability that a mobile UAV starting at ground distance x is within
// distance r of the origin after time t (uniform heading, speed ~ `speed`).
double containment_cdf(double r, double x, const SpeedDistribution& speed, double t,
                       const QuadratureSpec& spec = kSpeedQuadrature);

// Integral of g(v) f_V(v) over [lo, hi] for a distribution with a density,
// split at the distribution's own breakpoints and at `kinks`.
template <class G>
auto integrate_against_density(const SpeedDistribution& speed, double lo, double hi, G&& g,
                               std::span<const double> kinks, const QuadratureSpec& spec)
{
    if (speed.is_fixed()) throw std::logic_error("integrate_against_density: fixed speed has no density");
    const double a = std::max(lo, speed.support_min());
    const double b = std::min(hi, speed.support_max());
    auto weighted = [&](double v) { return speed.pdf(v) * g(v); };
    using T = std::decay_t<decltype(weighted(a))>;
    if (!(a < b)) return Integral<T>{0.0 * g(lo), 0.0, 0};  // g(lo) only supplies the value type
    std::vector<double> cuts = speed.breakpoints();
    cuts.insert(cuts.end(), kinks.begin(), kinks.end());
    const std::vector<double> pts = make_breakpoints(a, b, cuts);
    return integrate(weighted, std::span<const double>(pts), spec);
}

} // namespace uavtc
