#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace uavtc {

// Nakagami fading power: gamma(k, omega), mean k * omega.
struct FadingParams {
    int k = 1;
    double omega = 1.0;

    double mean() const { return k * omega; }
    bool operator==(const FadingParams&) const = default;
};

// Sectorized antenna seen from the ground: main lobe inside r_in, side lobe
// out to r_out, nothing beyond.
struct AntennaPattern {
    double g_main = 1.0;
    double g_side = 0.0;
    double r_in = 0.0;   // h * tan(theta_m)
    double r_out = 0.0;  // h * tan(theta_s)

    bool operator==(const AntennaPattern&) const = default;
};

// Boundaries are inclusive: d == r_in is main lobe, d == r_out is side lobe.
inline double gain_at(const AntennaPattern& antenna, double ground_distance)
{
    if (ground_distance <= antenna.r_in) return antenna.g_main;
    if (ground_distance <= antenna.r_out) return antenna.g_side;
    return 0.0;
}

// Same lookup on a squared ground distance.
inline double gain_at_squared(const AntennaPattern& antenna, double distance_sq)
{
    if (distance_sq <= antenna.r_in * antenna.r_in) return antenna.g_main;
    if (distance_sq <= antenna.r_out * antenna.r_out) return antenna.g_side;
    return 0.0;
}

// The two observation times: 0 and t.
enum class Instant { Initial, Later };

struct NetworkParams {
    double lambda = 0.0;    // UAV density [1/m^2]
    double p_mobile = 0.0;  // probability that a non-serving UAV moves
    double height = 0.0;    // common altitude [m]
    double alpha = 4.0;     // path-loss exponent
    double noise = 0.0;     // thermal noise power [W]
    FadingParams fading;
    AntennaPattern antenna;

    bool operator==(const NetworkParams&) const = default;
};

// Distribution of the speed of a mobile UAV.
class SpeedDistribution {
public:
    struct Fixed {
        double v = 0.0;
        bool operator==(const Fixed&) const = default;
    };
    struct Uniform {
        double v_min = 0.0;
        double v_max = 0.0;
        bool operator==(const Uniform&) const = default;
    };
    // Piecewise-linear pdf through (speed, density) nodes.
    struct Tabulated {
        std::vector<double> speeds;
        std::vector<double> densities;
        bool operator==(const Tabulated&) const = default;
    };
    using Variant = std::variant<Fixed, Uniform, Tabulated>;

    SpeedDistribution() : dist_(Fixed{0.0}) {}

    static SpeedDistribution fixed(double v);
    static SpeedDistribution uniform(double v_min, double v_max);
    // Densities are renormalized so the table integrates to one.
    static SpeedDistribution tabulated(std::vector<double> speeds, std::vector<double> densities);

    const Variant& variant() const { return dist_; }
    bool is_fixed() const { return std::holds_alternative<Fixed>(dist_); }

    // F_V(v); for Fixed this is the step 1{v >= v0}.
    double cdf(double v) const;
    // f_V(v); zero for Fixed (the point mass has no density).
    double pdf(double v) const;
    double support_min() const;
    double support_max() const;
    // Speeds where the density is not smooth (support ends, table nodes).
    std::vector<double> breakpoints() const;
    // Inverse CDF for u in [0, 1).
    double quantile(double u) const;
    double mean() const;

    bool operator==(const SpeedDistribution&) const = default;

private:
    explicit SpeedDistribution(Variant v) : dist_(std::move(v)) {}
    Variant dist_;
};

struct AntennaAngles {
    double theta_m_deg = 0.0;
    double theta_s_deg = 0.0;
    bool operator==(const AntennaAngles&) const = default;
};

struct ScenarioConfig {
    NetworkParams params;
    SpeedDistribution speed;
    double t_gap = 1.0;
    double threshold = 0.1;  // linear SINR threshold
    std::optional<int> m_initial;
    std::uint64_t replications = 100000;
    std::uint64_t seed = 1;
    // When present, r_in/r_out are derived from these (or checked against them).
    std::optional<AntennaAngles> antenna_angles;

    bool operator==(const ScenarioConfig&) const = default;
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> issues);
    const std::vector<std::string>& issues() const { return issues_; }

private:
    std::vector<std::string> issues_;
};

// A ScenarioConfig whose invariants have been checked; antenna angles have been
// folded into radii.
class ValidatedScenario {
public:
    const ScenarioConfig& config() const { return config_; }
    const NetworkParams& params() const { return config_.params; }
    const SpeedDistribution& speed() const { return config_.speed; }
    double t_gap() const { return config_.t_gap; }
    double threshold() const { return config_.threshold; }

    bool operator==(const ValidatedScenario&) const = default;

private:
    friend ValidatedScenario validate(const ScenarioConfig& config);
    explicit ValidatedScenario(ScenarioConfig c) : config_(std::move(c)) {}
    ScenarioConfig config_;
};

inline constexpr int kMaxFadingShape = 8;

// Throws ConfigError listing every violated invariant.
ValidatedScenario validate(const ScenarioConfig& config);

double db_to_linear(double db);
double linear_to_db(double linear);

// Parameter set used for the published figures (Fixed speed 10 m/s, t = 1, T = -10 dB).
ScenarioConfig reference_scenario();

} // namespace uavtc
