#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "uavtc/numerics/jet.hpp"
#include "uavtc/numerics/quadrature.hpp"

using namespace uavtc;

namespace {

// Fine midpoint rule, the independent oracle for the arrival integral.
template <class F>
double midpoint(F f, double a, double b, int n)
{
    const double h = (b - a) / n;
    double acc = 0;
    for (int i = 0; i < n; ++i) acc += f(a + (i + 0.5) * h);
    return acc * h;
}

} // namespace

TEST_CASE("textbook integrals")
{
    const auto lin = integrate([](double x) { return x; }, 0.0, 1.0);
    CHECK(std::abs(lin.value - 0.5) <= 1e-12);
    const auto s = integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
    CHECK(std::abs(s.value - 2.0) <= 1e-10);
    const auto empty = integrate([](double x) { return x; }, 3.0, 3.0);
    CHECK(empty.value == 0.0);
}

TEST_CASE("arrival integral against a midpoint-rule oracle")
{
    auto f = [](double x) {
        const double z = std::clamp((x * x - 525.0) / (20.0 * x), -1.0, 1.0);
        return std::acos(z) / std::numbers::pi * x;
    };
    const double oracle = midpoint(f, 25.0, 35.0, 1000000);
    const auto got = integrate(f, 25.0, 35.0, QuadratureSpec{1e-10, 1e-12, 4000});
    CHECK(got.value == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(got.value == doctest::Approx(79.0437).epsilon(1e-5));
}

TEST_CASE("error estimate is conservative on smooth and pre-split integrands")
{
    struct Case {
        double (*f)(double);
        double a, b, exact;
        std::vector<double> cuts;
    };
    const std::vector<Case> cases = {
        {[](double x) { return std::exp(x); }, 0, 3, std::exp(3.0) - 1, {}},
        {[](double x) { return 1 / (1 + x * x); }, -5, 5, 2 * std::atan(5.0), {}},
        {[](double x) { return std::cos(30 * x); }, 0, 1, std::sin(30.0) / 30, {}},
        {[](double x) { return x * x * x * x * x * x * x; }, -1, 2, (256.0 - 1.0) / 8, {}},
        {[](double x) { return std::abs(x - 0.3); }, 0, 1, 0.5 * (0.09 + 0.49), {0.3}},
        {[](double x) { return x < 1.5 ? 2.0 : 0.5; }, 0, 2, 3.25, {1.5}},
        {[](double x) { return std::exp(-x * x); }, -6, 6, std::sqrt(std::numbers::pi) * std::erf(6.0), {}},
    };
    for (const auto& c : cases) {
        for (double tol : {1e-4, 1e-8, 1e-12}) {
            std::vector<double> pts = make_breakpoints(c.a, c.b, c.cuts);
            const auto r = integrate(c.f, std::span<const double>(pts), QuadratureSpec{tol, 0.0, 2000});
            CHECK(std::abs(r.value - c.exact) <= r.error + 4e-16 * std::abs(c.exact));
            CHECK(r.error <= tol);
        }
    }
}

TEST_CASE("breakpoints are sorted, deduplicated and clipped")
{
    const std::vector<double> cand = {5, -1, 2, 2, 2 + 1e-14, 10, NAN, 0};
    const auto pts = make_breakpoints(0, 6, cand);
    CHECK(pts == std::vector<double>{0, 2, 5, 6});
}

TEST_CASE("non-convergence reports the best estimate")
{
    auto wild = [](double x) { return std::sin(1.0 / x); };
    try {
        (void)integrate(wild, 1e-6, 1.0, QuadratureSpec{1e-14, 0.0, 5});
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(std::isfinite(e.best_estimate()));
        CHECK(e.error_bound() > 1e-14);
    }
}

TEST_CASE("jet integrals are coefficient-wise scalar integrals")
{
    support::Gen g(77);
    for (int trial = 0; trial < 20; ++trial) {
        const JetShape sh{g.integer(0, 3), g.integer(0, 3), -1, -1};
        const double q1 = g.uniform(0.01, 0.2), q2 = g.uniform(0.01, 0.2), kink = g.uniform(0.5, 2.5);
        const int k = g.integer(1, 4);
        auto jet_f = [&](double x) {
            const double w = (x < kink ? 1.0 : 0.25) / (1 + x * x);
            return 1.0 - pow_neg(1.0 - q1 * w * Jet2::variable1(sh), k) * pow_neg(1.0 - q2 * w * Jet2::variable2(sh), k);
        };
        const std::vector<double> cuts{kink};
        const auto pts = make_breakpoints(0.0, 3.0, cuts);
        const QuadratureSpec spec{1e-11, 0.0, 2000};
        const auto whole = integrate(jet_f, std::span<const double>(pts), spec);
        for (int i = 0; i <= sh.order1; ++i)
            for (int j = 0; j <= sh.order2; ++j) {
                auto scalar = [&](double x) { return jet_f(x)(i, j); };
                const auto part = integrate(scalar, std::span<const double>(pts), spec);
                CHECK(std::abs(whole.value(i, j) - part.value) <= 2 * 1e-11);
            }
    }
}
