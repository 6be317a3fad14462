#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>

#include "uavtc/analytic.hpp"
#include "uavtc/mobility.hpp"

namespace uavtc {

namespace {

// Everything the radial integrand needs for one (params, speed, t, T, shape).
class ExponentIntegrand {
public:
    // Every moving UAV has the same speed v here; spread in speed is handled by
    // the caller, which averages exponents over v.
    ExponentIntegrand(const NetworkParams& params, double v, double t, double threshold, const JetShape& shape,
                      Slots slots, const AnalyticOptions& options)
        : params_(params), speed_(v), t_(t), threshold_(threshold), shape_(shape), options_(options),
          use_initial_(slots != Slots::Later), use_later_(slots != Slots::Initial),
          mobile_(use_later_ && params.p_mobile > 0.0 && t > 0.0 && v > 0.0),
          one_(Jet2::constant(shape, 1.0)), s1_(Jet2::variable1(shape)), s2_(Jet2::variable2(shape))
    {
    }

    // Beyond this radius no UAV is in the footprint at either instant.
    double outer_radius() const
    {
        return params_.antenna.r_out + (mobile_ ? speed_ * t_ : 0.0);
    }

    std::vector<double> radial_kinks() const
    {
        const AntennaPattern& ant = params_.antenna;
        std::vector<double> kinks{ant.r_in, ant.r_out};
        if (mobile_) {
            const double vt = speed_ * t_;
            for (double r : {ant.r_in, ant.r_out}) kinks.insert(kinks.end(), {std::abs(r - vt), r + vt});
        }
        return kinks;
    }

    // [1 - A(x; s1) B(x; s2)] x
    Jet2 operator()(double x) const
    {
        const Jet2 initial = use_initial_ ? fading_factor(s1_, x * x) : one_;
        Jet2 later = one_;
        if (use_later_) {
            const Jet2 fixed_part = fading_factor(s2_, x * x);
            if (mobile_) {
                const double p = params_.p_mobile;
                later = p * heading_average(x, speed_) + (1.0 - p) * fixed_part;
            } else {
                later = fixed_part;
            }
        }
        return (1.0 - initial * later) * x;
    }

private:
    // (1 - s (T / G_m) (h^2 / (h^2 + d^2))^(alpha/2) g(d))^(-k) for a UAV at squared ground distance d2.
    Jet2 fading_factor(const Jet2& s, double d2) const
    {
        const double g = gain_at_squared(params_.antenna, d2);
        if (g == 0.0) return one_;
        const double h2 = params_.height * params_.height;
        const double q = threshold_ / params_.antenna.g_main * std::pow(h2 / (h2 + d2), 0.5 * params_.alpha) * g;
        const Jet2 base = 1.0 - q * s;
        if (!(base.value() > 0.0)) throw JetError("fading factor base is not positive");
        return pow_neg(base, params_.fading.k);
    }

    // (1 / pi) int_0^pi factor(d(phi)) dphi; the heading integral over [0, 2 pi]
    // folded onto [0, pi] by the cos symmetry.
    Jet2 heading_average(double x, double v) const
    {
        const double vt = v * t_;
        if (x == 0.0 || vt == 0.0) {
            const double d = x + vt;
            return fading_factor(s2_, d * d);
        }
        const double base = x * x + vt * vt;
        const double cross = 2.0 * x * vt;
        std::vector<double> cuts;
        for (double r : {params_.antenna.r_in, params_.antenna.r_out}) {
            const double c = (base - r * r) / cross;
            if (c > -1.0 && c < 1.0) cuts.push_back(std::acos(c));
        }
        const auto pts = make_breakpoints(0.0, std::numbers::pi, cuts);
        auto integrand = [&](double phi) { return fading_factor(s2_, base - cross * std::cos(phi)); };

        Jet2 total(shape_);
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const double a = pts[i];
            const double b = pts[i + 1];
            const double mid_d2 = base - cross * std::cos(0.5 * (a + b));
            if (gain_at_squared(params_.antenna, mid_d2) == 0.0) {
                total += (b - a) * one_;
            } else {
                total += integrate(integrand, a, b, options_.angular).value;
            }
        }
        return (1.0 / std::numbers::pi) * total;
    }

    const NetworkParams& params_;
    double speed_;
    double t_;
    double threshold_;
    JetShape shape_;
    const AnalyticOptions& options_;
    bool use_initial_;
    bool use_later_;
    bool mobile_;
    Jet2 one_;
    Jet2 s1_;
    Jet2 s2_;
};

// T h^alpha / (Omega G_m)
double transform_scale(const NetworkParams& params, double threshold)
{
    return threshold * std::pow(params.height, params.alpha) / (params.fading.omega * params.antenna.g_main);
}

JetShape slot_shape(int k, Slots slots)
{
    switch (slots) {
    case Slots::Initial: return JetShape{k - 1, 0, -1.0, 0.0};
    case Slots::Later: return JetShape{0, k - 1, 0.0, -1.0};
    case Slots::Both: break;
    }
    return JetShape{k - 1, k - 1, -1.0, -1.0};
}

SuccessProbability success_from_jet(const LaplaceExponent& transform, const char* what)
{
    double value = transform.jet.coefficient_sum();
    double abs_sum = 0.0;
    for (int i = 0; i <= transform.jet.order1(); ++i)
        for (int j = 0; j <= transform.jet.order2(); ++j) abs_sum += std::abs(transform.jet(i, j));
    const double n_coeffs = (transform.jet.order1() + 1.0) * (transform.jet.order2() + 1.0);
    const double bound = abs_sum * n_coeffs * transform.error;

    if (!std::isfinite(value)) throw NumericalError(std::string(what) + ": non-finite success probability");
    const double clamped = std::clamp(value, 0.0, 1.0);
    if (std::abs(clamped - value) > 1e-9)
        std::cerr << "warning: " << what << " = " << value << " outside [0, 1]; clamped\n";
    return SuccessProbability{clamped, bound};
}

void check_inputs(const NetworkParams& params, double t, double threshold)
{
    if (t < 0.0) throw std::invalid_argument("t must be >= 0");
    if (!(threshold >= 0.0)) throw std::invalid_argument("threshold must be >= 0");
    if (params.fading.k < 1 || params.fading.k > kMaxFadingShape) throw std::invalid_argument("k must be in 1..8");
}

LaplaceExponent exponent_at_speed(const NetworkParams& params, double v, double t, double threshold,
                                  const JetShape& shape, Slots slots, const AnalyticOptions& options)
{
    const ExponentIntegrand integrand(params, v, t, threshold, shape, slots, options);
    const auto pts = make_breakpoints(0.0, integrand.outer_radius(), integrand.radial_kinks());
    const auto result = integrate(integrand, std::span<const double>(pts), options.radial);

    const double scale = -2.0 * std::numbers::pi * params.lambda;
    Jet2 jet = scale * result.value;
    if (!jet.all_finite()) throw NumericalError("laplace exponent has non-finite coefficients");
    return LaplaceExponent{jet, std::abs(scale) * result.error};
}

} // namespace

LaplaceExponent laplace_exponent(const NetworkParams& params, const SpeedDistribution& speed, double t,
                                 double threshold, const JetShape& shape, Slots slots, const AnalyticOptions& options)
{
    check_inputs(params, t, threshold);
    if (params.lambda == 0.0 || threshold == 0.0) return LaplaceExponent{Jet2(shape), 0.0};

    const bool spread = slots != Slots::Initial && params.p_mobile > 0.0 && t > 0.0 && !speed.is_fixed()
                        && speed.support_max() > 0.0;
    if (!spread) {
        const double v = speed.is_fixed() ? std::get<SpeedDistribution::Fixed>(speed.variant()).v : 0.0;
        return exponent_at_speed(params, v, t, threshold, shape, slots, options);
    }

    // The exponent is linear in the law of the moving UAVs, so it splits into
    // a static part and a speed average of fixed-speed exponents. Averaging
    // outside the radial integral keeps every inner integrand's kinks exact.
    NetworkParams moving = params;
    moving.p_mobile = 1.0;
    NetworkParams still = params;
    still.p_mobile = 0.0;
    double inner_error = 0.0;
    auto at_speed = [&](double v) {
        const LaplaceExponent e = exponent_at_speed(moving, v, t, threshold, shape, slots, options);
        inner_error = std::max(inner_error, e.error);
        return e.jet;
    };
    // fixed-speed exponents bend where displaced kinks cross the footprint edges
    std::vector<double> kinks;
    const double r_in = params.antenna.r_in, r_out = params.antenna.r_out;
    for (double d : {2.0 * r_in, 2.0 * r_out, r_out - r_in, r_out + r_in}) kinks.push_back(d / t);
    const auto avg = integrate_against_density(speed, speed.support_min(), speed.support_max(), at_speed,
                                               std::span<const double>(kinks), options.speed);

    const double p = params.p_mobile;
    LaplaceExponent out{p * avg.value, p * (avg.error + inner_error)};
    if (p < 1.0) {
        const LaplaceExponent fixed_part = exponent_at_speed(still, 0.0, t, threshold, shape, slots, options);
        out.jet += (1.0 - p) * fixed_part.jet;
        out.error += (1.0 - p) * fixed_part.error;
    }
    if (!out.jet.all_finite()) throw NumericalError("laplace exponent has non-finite coefficients");
    return out;
}

Jet2 laplace_exponent_jet(const NetworkParams& params, const SpeedDistribution& speed, double t, double threshold,
                          const AnalyticOptions& options)
{
    return laplace_exponent(params, speed, t, threshold, slot_shape(params.fading.k, Slots::Both), Slots::Both,
                            options)
        .jet;
}

LaplaceExponent success_transform_jet(const NetworkParams& params, const SpeedDistribution& speed, double t,
                                      double threshold, const JetShape& shape, Slots slots,
                                      const AnalyticOptions& options)
{
    const LaplaceExponent exponent = laplace_exponent(params, speed, t, threshold, shape, slots, options);
    const double noise_scale = transform_scale(params, threshold) * params.noise;

    Jet2 noise_arg(shape);
    if (slots != Slots::Later) noise_arg += Jet2::variable1(shape);
    if (slots != Slots::Initial) noise_arg += Jet2::variable2(shape);
    const Jet2 noise = noise_scale == 0.0 ? Jet2::constant(shape, 1.0) : exp(noise_scale * noise_arg);

    Jet2 f = noise * exp(exponent.jet);
    if (!f.all_finite()) throw NumericalError("success transform has non-finite coefficients");
    return LaplaceExponent{f, exponent.error};
}

double success_transform(const NetworkParams& params, const SpeedDistribution& speed, double t, double threshold,
                         double s1, double s2, const AnalyticOptions& options)
{
    const JetShape shape{0, 0, s1, s2};
    return success_transform_jet(params, speed, t, threshold, shape, Slots::Both, options).jet.value();
}

SuccessProbability joint_success(const NetworkParams& params, const SpeedDistribution& speed, double t,
                                 double threshold, const AnalyticOptions& options)
{
    const JetShape shape = slot_shape(params.fading.k, Slots::Both);
    return success_from_jet(success_transform_jet(params, speed, t, threshold, shape, Slots::Both, options),
                            "joint success");
}

SuccessProbability marginal_success(const NetworkParams& params, const SpeedDistribution& speed, double t,
                                    double threshold, Instant which, const AnalyticOptions& options)
{
    const Slots slots = which == Instant::Initial ? Slots::Initial : Slots::Later;
    const JetShape shape = slot_shape(params.fading.k, slots);
    return success_from_jet(success_transform_jet(params, speed, t, threshold, shape, slots, options),
                            "marginal success");
}

SuccessReport retransmission_report(const NetworkParams& params, const SpeedDistribution& speed, double t,
                                    double threshold, const AnalyticOptions& options)
{
    const SuccessProbability p0 = marginal_success(params, speed, t, threshold, Instant::Initial, options);
    if (1.0 - p0.value < 1e-12) throw NumericalError("failure event has vanishing probability");
    const SuccessProbability pt = marginal_success(params, speed, t, threshold, Instant::Later, options);
    const SuccessProbability pj = joint_success(params, speed, t, threshold, options);

    SuccessReport r;
    r.p_joint = pj.value;
    r.p_marginal_0 = p0.value;
    r.p_marginal_t = pt.value;
    r.p_retx_given_fail = std::clamp((pt.value - pj.value) / (1.0 - p0.value), 0.0, 1.0);
    r.p_independent_joint = p0.value * pt.value;
    r.quadrature_error_bound = pj.error_bound + p0.error_bound + pt.error_bound;
    return r;
}

} // namespace uavtc
