#pragma once

#include <cmath>
#include <cstdint>

#include "uavtc/model.hpp"
#include "uavtc/numerics/jet.hpp"
#include "uavtc/rng.hpp"

namespace support {

// Small generator for property tests; a fixed seed per test keeps failures
// reproducible.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed, 0x7e57) {}

    double uniform(double lo, double hi) { return lo + (hi - lo) * rng_.uniform(); }
    int integer(int lo, int hi) { return lo + static_cast<int>(rng_.uniform() * (hi - lo + 1)); }
    bool coin(double p = 0.5) { return rng_.uniform() < p; }

    uavtc::Jet2 jet(const uavtc::JetShape& shape, double scale)
    {
        uavtc::Jet2 a(shape);
        for (int i = 0; i <= shape.order1; ++i)
            for (int j = 0; j <= shape.order2; ++j) a(i, j) = uniform(-scale, scale);
        return a;
    }

    uavtc::SpeedDistribution speed()
    {
        switch (integer(0, 2)) {
        case 0:
            return uavtc::SpeedDistribution::fixed(uniform(0.0, 20.0));
        case 1: {
            const double lo = uniform(0.0, 10.0);
            return uavtc::SpeedDistribution::uniform(lo, lo + uniform(0.5, 15.0));
        }
        default: {
            std::vector<double> v{uniform(0.0, 3.0)};
            std::vector<double> d{uniform(0.0, 1.0)};
            const int n = integer(2, 5);
            for (int i = 0; i < n; ++i) {
                v.push_back(v.back() + uniform(0.5, 5.0));
                d.push_back(uniform(0.05, 1.0));
            }
            return uavtc::SpeedDistribution::tabulated(v, d);
        }
        }
    }

private:
    uavtc::StreamRng rng_;
};

inline double factorial(int n)
{
    return std::tgamma(n + 1.0);
}

} // namespace support
