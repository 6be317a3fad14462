#include "uavtc/numerics/combinatorics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace uavtc {

namespace {

double log_factorial(std::int64_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

} // namespace

double log_binomial(std::int64_t n, std::int64_t i)
{
    if (i < 0 || n < 0 || i > n)
        throw std::out_of_range("log_binomial: need 0 <= i <= n, got n=" + std::to_string(n) + " i=" + std::to_string(i));
    if (i == 0 || i == n) return 0.0;
    return log_factorial(n) - log_factorial(i) - log_factorial(n - i);
}

double falling_factorial_log(std::int64_t m, std::int64_t i)
{
    if (i < 0 || m < 0 || i > m)
        throw std::out_of_range("falling_factorial_log: need 0 <= i <= m, got m=" + std::to_string(m)
                                + " i=" + std::to_string(i));
    if (i == 0) return 0.0;
    return log_factorial(m) - log_factorial(m - i);
}

double log_power(double base, std::int64_t exponent)
{
    if (exponent == 0) return 0.0;
    if (base == 0.0) return -std::numeric_limits<double>::infinity();
    return static_cast<double>(exponent) * std::log(base);
}

} // namespace uavtc
