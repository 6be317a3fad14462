#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace uavtc {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 2000;
};

template <class T>
struct Integral {
    T value;
    double error = 0.0;  // estimated absolute error (max-norm for jets)
    int intervals = 0;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(double best_estimate, double error_bound)
        : std::runtime_error("quadrature did not converge: estimate " + std::to_string(best_estimate) + " +/- "
                             + std::to_string(error_bound)),
          best_estimate_(best_estimate), error_bound_(error_bound)
    {
    }
    // For jet-valued integrals the constant coefficient is reported.
    double best_estimate() const { return best_estimate_; }
    double error_bound() const { return error_bound_; }

private:
    double best_estimate_;
    double error_bound_;
};

inline double quadrature_norm(double x) { return std::abs(x); }
inline double leading_value(double x) { return x; }

// Sorted, deduplicated split points strictly inside (a, b), bracketed by a and b.
inline std::vector<double> make_breakpoints(double a, double b, std::span<const double> candidates)
{
    std::vector<double> pts{a};
    std::vector<double> inner;
    const double eps = 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
    for (double c : candidates)
        if (std::isfinite(c) && c > a + eps && c < b - eps) inner.push_back(c);
    std::sort(inner.begin(), inner.end());
    for (double c : inner)
        if (c > pts.back() + eps) pts.push_back(c);
    pts.push_back(b);
    return pts;
}

namespace detail {

// Gauss-Kronrod 15/7 abscissae and weights on [-1, 1].
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

template <class T>
struct Panel {
    double a;
    double b;
    T value;
    double error;
};

template <class T, class F>
Panel<T> gk15(F& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const T fc = f(center);
    T kronrod = kWgk[7] * fc;
    T gauss = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const T f1 = f(center - dx);
        const T f2 = f(center + dx);
        const T sum = f1 + f2;
        kronrod = kronrod + kWgk[j] * sum;
        if (j % 2 == 1) gauss = gauss + kWg[j / 2] * sum;
    }
    kronrod = half * kronrod;
    gauss = half * gauss;
    // |K15 - G7| overstates the K15 error on smooth panels; kept as the estimate.
    const double err = quadrature_norm(kronrod - gauss);
    return Panel<T>{a, b, kronrod, err};
}

} // namespace detail

// Globally adaptive Gauss-Kronrod over [p0, p1] u [p1, p2] u ...; the points
// are where the integrand is known to kink or jump. Works for any value type
// closed under +, - and scalar *, with quadrature_norm() defined (double, Jet2).
template <class F>
auto integrate(F&& f, std::span<const double> points, const QuadratureSpec& spec = {})
    -> Integral<std::decay_t<std::invoke_result_t<F&, double>>>
{
    using T = std::decay_t<std::invoke_result_t<F&, double>>;
    if (points.size() < 2) throw std::invalid_argument("integrate: need at least two points");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!(points[i] >= points[i - 1])) throw std::invalid_argument("integrate: points must be non-decreasing");

    std::vector<detail::Panel<T>> heap;
    auto by_error = [](const detail::Panel<T>& x, const detail::Panel<T>& y) { return x.error < y.error; };
    std::vector<detail::Panel<T>> frozen;

    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (points[i + 1] > points[i]) heap.push_back(detail::gk15<T>(f, points[i], points[i + 1]));
    }
    if (heap.empty()) {
        const T zero = 0.0 * f(points.front());
        return Integral<T>{zero, 0.0, 0};
    }
    std::make_heap(heap.begin(), heap.end(), by_error);

    auto totals = [&]() {
        T value = heap.empty() ? frozen.front().value : heap.front().value;
        double err = 0.0;
        bool first = true;
        for (const auto* set : {&heap, &frozen}) {
            for (const auto& p : *set) {
                if (first) {
                    first = false;
                } else {
                    value = value + p.value;
                }
                err += p.error;
            }
        }
        return std::pair<T, double>{value, err};
    };

    int subdivisions = 0;
    auto [start_value, total_err] = totals();
    double total_norm = quadrature_norm(start_value);

    while (total_err > std::max(spec.abs_tol, spec.rel_tol * total_norm)) {
        if (heap.empty()) break;
        if (subdivisions >= spec.max_subdivisions) {
            auto [v, e] = totals();
            throw QuadratureError(leading_value(v), e);
        }
        std::pop_heap(heap.begin(), heap.end(), by_error);
        detail::Panel<T> worst = std::move(heap.back());
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)
            || (worst.b - worst.a) < 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mid))) {
            frozen.push_back(std::move(worst));
        } else {
            heap.push_back(detail::gk15<T>(f, worst.a, mid));
            std::push_heap(heap.begin(), heap.end(), by_error);
            heap.push_back(detail::gk15<T>(f, mid, worst.b));
            std::push_heap(heap.begin(), heap.end(), by_error);
            ++subdivisions;
        }
        auto [v, e] = totals();
        total_norm = quadrature_norm(v);
        total_err = e;
    }

    auto [value, err] = totals();
    if (err > std::max(spec.abs_tol, spec.rel_tol * quadrature_norm(value))) throw QuadratureError(leading_value(value), err);
    return Integral<T>{value, err, static_cast<int>(heap.size() + frozen.size())};
}

template <class F>
auto integrate(F&& f, double a, double b, const QuadratureSpec& spec = {})
{
    if (!(a <= b)) throw std::invalid_argument("integrate: require a <= b");
    const std::array<double, 2> pts{a, b};
    return integrate(std::forward<F>(f), std::span<const double>(pts), spec);
}

} // namespace uavtc
