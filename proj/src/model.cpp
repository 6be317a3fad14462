#include "uavtc/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace uavtc {

namespace {

std::string join_issues(const std::vector<std::string>& issues)
{
    std::ostringstream os;
    os << "invalid configuration: ";
    for (std::size_t i = 0; i < issues.size(); ++i) {
        if (i) os << "; ";
        os << issues[i];
    }
    return os.str();
}

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Mass of segment [s0, s1] under a linear density d0 -> d1, up to s0 + u.
double segment_mass(double d0, double d1, double width, double u)
{
    return d0 * u + 0.5 * (d1 - d0) * u * u / width;
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues))
{
}

SpeedDistribution SpeedDistribution::fixed(double v)
{
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError({"speed: fixed speed must be finite and >= 0"});
    return SpeedDistribution(Fixed{v});
}

SpeedDistribution SpeedDistribution::uniform(double v_min, double v_max)
{
    std::vector<std::string> issues;
    if (!(v_min >= 0.0)) issues.push_back("speed: v_min must be >= 0");
    if (!(v_max > v_min) || !std::isfinite(v_max)) issues.push_back("speed: v_max must exceed v_min and be finite");
    if (!issues.empty()) throw ConfigError(std::move(issues));
    return SpeedDistribution(Uniform{v_min, v_max});
}

SpeedDistribution SpeedDistribution::tabulated(std::vector<double> speeds, std::vector<double> densities)
{
    std::vector<std::string> issues;
    if (speeds.size() != densities.size()) issues.push_back("speed: table speeds and densities differ in length");
    if (speeds.size() < 2) issues.push_back("speed: table needs at least two nodes");
    if (issues.empty()) {
        for (std::size_t i = 0; i < speeds.size(); ++i) {
            if (!(speeds[i] >= 0.0) || !std::isfinite(speeds[i])) {
                issues.push_back("speed: table speeds must be finite and >= 0");
                break;
            }
            if (i > 0 && !(speeds[i] > speeds[i - 1])) {
                issues.push_back("speed: table speeds must be strictly increasing");
                break;
            }
        }
        if (std::any_of(densities.begin(), densities.end(), [](double d) { return !(d >= 0.0) || !std::isfinite(d); }))
            issues.push_back("speed: table densities must be finite and >= 0");
    }
    if (issues.empty()) {
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < speeds.size(); ++i)
            total += 0.5 * (densities[i] + densities[i + 1]) * (speeds[i + 1] - speeds[i]);
        if (!(total > 0.0)) {
            issues.push_back("speed: table density has zero mass");
        } else if (std::abs(total - 1.0) > 1e-12) {
            // already-normalized tables are kept bit-for-bit so serialization round-trips
            for (double& d : densities) d /= total;
        }
    }
    if (!issues.empty()) throw ConfigError(std::move(issues));
    return SpeedDistribution(Tabulated{std::move(speeds), std::move(densities)});
}

double SpeedDistribution::cdf(double v) const
{
    return std::visit(
        Overloaded{
            [v](const Fixed& f) { return v >= f.v ? 1.0 : 0.0; },
            [v](const Uniform& u) { return std::clamp((v - u.v_min) / (u.v_max - u.v_min), 0.0, 1.0); },
            [v](const Tabulated& tab) {
                const auto& s = tab.speeds;
                const auto& d = tab.densities;
                if (v <= s.front()) return 0.0;
                if (v >= s.back()) return 1.0;
                double acc = 0.0;
                for (std::size_t i = 0; i + 1 < s.size(); ++i) {
                    const double w = s[i + 1] - s[i];
                    if (v < s[i + 1]) return std::min(1.0, acc + segment_mass(d[i], d[i + 1], w, v - s[i]));
                    acc += 0.5 * (d[i] + d[i + 1]) * w;
                }
                return 1.0;
            },
        },
        dist_);
}

double SpeedDistribution::pdf(double v) const
{
    return std::visit(
        Overloaded{
            [](const Fixed&) { return 0.0; },
            [v](const Uniform& u) { return (v >= u.v_min && v <= u.v_max) ? 1.0 / (u.v_max - u.v_min) : 0.0; },
            [v](const Tabulated& tab) {
                const auto& s = tab.speeds;
                const auto& d = tab.densities;
                if (v < s.front() || v > s.back()) return 0.0;
                auto it = std::upper_bound(s.begin(), s.end(), v);
                std::size_t i = it == s.end() ? s.size() - 2 : static_cast<std::size_t>(it - s.begin()) - 1;
                const double frac = (v - s[i]) / (s[i + 1] - s[i]);
                return d[i] + frac * (d[i + 1] - d[i]);
            },
        },
        dist_);
}

double SpeedDistribution::support_min() const
{
    return std::visit(Overloaded{
                          [](const Fixed& f) { return f.v; },
                          [](const Uniform& u) { return u.v_min; },
                          [](const Tabulated& t) { return t.speeds.front(); },
                      },
                      dist_);
}

double SpeedDistribution::support_max() const
{
    return std::visit(Overloaded{
                          [](const Fixed& f) { return f.v; },
                          [](const Uniform& u) { return u.v_max; },
                          [](const Tabulated& t) { return t.speeds.back(); },
                      },
                      dist_);
}

std::vector<double> SpeedDistribution::breakpoints() const
{
    return std::visit(Overloaded{
                          [](const Fixed& f) { return std::vector<double>{f.v}; },
                          [](const Uniform& u) { return std::vector<double>{u.v_min, u.v_max}; },
                          [](const Tabulated& t) { return t.speeds; },
                      },
                      dist_);
}

double SpeedDistribution::quantile(double u) const
{
    return std::visit(
        Overloaded{
            [](const Fixed& f) { return f.v; },
            [u](const Uniform& un) { return un.v_min + u * (un.v_max - un.v_min); },
            [u](const Tabulated& tab) {
                const auto& s = tab.speeds;
                const auto& d = tab.densities;
                double acc = 0.0;
                for (std::size_t i = 0; i + 1 < s.size(); ++i) {
                    const double w = s[i + 1] - s[i];
                    const double mass = 0.5 * (d[i] + d[i + 1]) * w;
                    if (mass > 0.0 && u < acc + mass) {
                        // Solve d0*x + (d1-d0)/(2w) x^2 = rem for x in [0, w].
                        const double rem = u - acc;
                        const double slope = (d[i + 1] - d[i]) / w;
                        const double disc = std::max(0.0, d[i] * d[i] + 2.0 * slope * rem);
                        const double x = 2.0 * rem / (d[i] + std::sqrt(disc));
                        return std::clamp(s[i] + x, s[i], s[i + 1]);
                    }
                    acc += mass;
                }
                return s.back();
            },
        },
        dist_);
}

double SpeedDistribution::mean() const
{
    return std::visit(Overloaded{
                          [](const Fixed& f) { return f.v; },
                          [](const Uniform& u) { return 0.5 * (u.v_min + u.v_max); },
                          [](const Tabulated& tab) {
                              const auto& s = tab.speeds;
                              const auto& d = tab.densities;
                              double m = 0.0;
                              for (std::size_t i = 0; i + 1 < s.size(); ++i) {
                                  const double w = s[i + 1] - s[i];
                                  const double delta = d[i + 1] - d[i];
                                  m += s[i] * (d[i] * w + 0.5 * delta * w) + 0.5 * d[i] * w * w + delta * w * w / 3.0;
                              }
                              return m;
                          },
                      },
                      dist_);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

ValidatedScenario validate(const ScenarioConfig& config)
{
    std::vector<std::string> issues;
    ScenarioConfig out = config;
    NetworkParams& p = out.params;

    auto check = [&issues](bool ok, const char* message) {
        if (!ok) issues.emplace_back(message);
    };

    check(p.lambda > 0.0 && std::isfinite(p.lambda), "lambda must be positive");
    check(p.p_mobile >= 0.0 && p.p_mobile <= 1.0, "p_mobile must lie in [0, 1]");
    check(p.height > 0.0 && std::isfinite(p.height), "height must be positive");
    check(p.alpha > 2.0 && std::isfinite(p.alpha), "alpha must exceed 2");
    check(p.noise >= 0.0 && std::isfinite(p.noise), "noise must be >= 0");
    check(p.fading.k >= 1 && p.fading.k <= kMaxFadingShape, "k must be an integer in 1..8");
    check(p.fading.omega > 0.0 && std::isfinite(p.fading.omega), "omega must be positive");
    check(p.antenna.g_side >= 0.0, "g_side must be >= 0");
    check(p.antenna.g_main > p.antenna.g_side && std::isfinite(p.antenna.g_main), "g_main must exceed g_side");

    if (config.antenna_angles) {
        const AntennaAngles& a = *config.antenna_angles;
        const bool angles_ok = a.theta_m_deg > 0.0 && a.theta_m_deg < a.theta_s_deg && a.theta_s_deg < 90.0;
        check(angles_ok, "theta_m_deg must satisfy 0 < theta_m_deg < theta_s_deg < 90");
        if (angles_ok && p.height > 0.0) {
            constexpr double deg = std::numbers::pi / 180.0;
            const double r_in = p.height * std::tan(a.theta_m_deg * deg);
            const double r_out = p.height * std::tan(a.theta_s_deg * deg);
            const bool radii_given = p.antenna.r_in != 0.0 || p.antenna.r_out != 0.0;
            if (radii_given) {
                auto close = [](double x, double y) {
                    return std::abs(x - y) <= 1e-9 * std::max(std::abs(x), std::abs(y));
                };
                check(close(p.antenna.r_in, r_in) && close(p.antenna.r_out, r_out),
                      "r_in/r_out conflict with theta_m_deg/theta_s_deg");
            } else {
                p.antenna.r_in = r_in;
                p.antenna.r_out = r_out;
            }
        }
        out.antenna_angles.reset();
    }
    check(p.antenna.r_in > 0.0, "r_in must be positive");
    check(p.antenna.r_in < p.antenna.r_out && std::isfinite(p.antenna.r_out), "r_in must be < r_out");

    check(out.t_gap >= 0.0 && std::isfinite(out.t_gap), "t_gap must be >= 0");
    check(out.threshold > 0.0 && std::isfinite(out.threshold), "threshold must be positive");
    check(!out.m_initial || *out.m_initial >= 0, "m_initial must be >= 0");
    check(out.replications >= 1, "replications must be >= 1");

    if (!issues.empty()) throw ConfigError(std::move(issues));
    return ValidatedScenario(std::move(out));
}

ScenarioConfig reference_scenario()
{
    ScenarioConfig c;
    c.params.lambda = 0.005;
    c.params.p_mobile = 0.8;
    c.params.height = 50.0;
    c.params.alpha = 4.0;
    c.params.noise = 1e-10;
    c.params.fading = FadingParams{2, 0.5};
    c.params.antenna = AntennaPattern{2.0, 0.5, 15.0, 25.0};
    c.speed = SpeedDistribution::fixed(10.0);
    c.t_gap = 1.0;
    c.threshold = db_to_linear(-10.0);
    c.replications = 100000;
    c.seed = 1;
    return c;
}

} // namespace uavtc
