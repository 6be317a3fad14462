#pragma once

#include <cstdint>

namespace uavtc {

// ln C(n, i); requires 0 <= i <= n.
double log_binomial(std::int64_t n, std::int64_t i);
// ln(m! / (m - i)!); requires 0 <= i <= m.
double falling_factorial_log(std::int64_t m, std::int64_t i);
// ln(base^exponent) with 0^0 = 1; -inf when base == 0 < exponent.
double log_power(double base, std::int64_t exponent);

} // namespace uavtc
