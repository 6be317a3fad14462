#include "uavtc/config_io.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace uavtc {

using nlohmann::json;

namespace {

const std::set<std::string> kTopLevelKeys = {
    "lambda", "p_mobile", "height", "alpha", "noise", "k", "omega", "g_main", "g_side",
    "r_in", "r_out", "theta_m_deg", "theta_s_deg", "speed", "t_gap", "threshold_db",
    "threshold", "m_initial", "replications", "seed",
};

class Reader {
public:
    explicit Reader(std::vector<std::string>& issues) : issues_(issues) {}

    std::optional<double> number(const json& obj, const std::string& key, bool required, const std::string& where = "")
    {
        auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) issues_.push_back(where + key + " is required");
            return std::nullopt;
        }
        if (!it->is_number()) {
            issues_.push_back(where + key + " must be a number");
            return std::nullopt;
        }
        return it->get<double>();
    }

    // Integers may be written as 2 or 2.0; 2.5 is rejected.
    std::optional<std::int64_t> integer(const json& obj, const std::string& key, bool required, const char* message)
    {
        auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) issues_.push_back(key + " is required");
            return std::nullopt;
        }
        if (it->is_number_integer()) return it->get<std::int64_t>();
        if (it->is_number_float()) {
            const double v = it->get<double>();
            if (std::isfinite(v) && std::floor(v) == v && std::abs(v) < 9e15) return static_cast<std::int64_t>(v);
        }
        issues_.push_back(message);
        return std::nullopt;
    }

    std::optional<std::uint64_t> unsigned_integer(const json& obj, const std::string& key, const char* message)
    {
        auto it = obj.find(key);
        if (it == obj.end()) return std::nullopt;
        if (it->is_number_unsigned()) return it->get<std::uint64_t>();
        if (it->is_number_integer() && it->get<std::int64_t>() >= 0) return it->get<std::uint64_t>();
        issues_.push_back(message);
        return std::nullopt;
    }

private:
    std::vector<std::string>& issues_;
};

std::optional<SpeedDistribution> parse_speed(const json& node, std::vector<std::string>& issues)
{
    if (!node.is_object()) {
        issues.push_back("speed must be an object");
        return std::nullopt;
    }
    auto kind_it = node.find("kind");
    if (kind_it == node.end() || !kind_it->is_string()) {
        issues.push_back("speed.kind must be one of fixed, uniform, tabulated");
        return std::nullopt;
    }
    const std::string kind = kind_it->get<std::string>();
    std::set<std::string> allowed{"kind"};
    Reader rd(issues);
    std::optional<SpeedDistribution> out;
    const std::size_t before = issues.size();
    try {
        if (kind == "fixed") {
            allowed.insert("v");
            auto v = rd.number(node, "v", true, "speed.");
            if (v) out = SpeedDistribution::fixed(*v);
        } else if (kind == "uniform") {
            allowed.insert({"v_min", "v_max"});
            auto lo = rd.number(node, "v_min", true, "speed.");
            auto hi = rd.number(node, "v_max", true, "speed.");
            if (lo && hi) out = SpeedDistribution::uniform(*lo, *hi);
        } else if (kind == "tabulated") {
            allowed.insert("table");
            auto t = node.find("table");
            if (t == node.end() || !t->is_array()) {
                issues.push_back("speed.table must be an array of [speed, density] pairs");
            } else {
                std::vector<double> speeds, dens;
                bool ok = true;
                for (const auto& row : *t) {
                    if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
                        ok = false;
                        break;
                    }
                    speeds.push_back(row[0].get<double>());
                    dens.push_back(row[1].get<double>());
                }
                if (!ok)
                    issues.push_back("speed.table must be an array of [speed, density] pairs");
                else
                    out = SpeedDistribution::tabulated(std::move(speeds), std::move(dens));
            }
        } else {
            issues.push_back("speed.kind must be one of fixed, uniform, tabulated");
        }
    } catch (const ConfigError& e) {
        issues.insert(issues.end(), e.issues().begin(), e.issues().end());
        out.reset();
    }
    for (auto it = node.begin(); it != node.end(); ++it)
        if (!allowed.count(it.key())) issues.push_back("unknown key speed." + it.key());
    if (issues.size() != before) out.reset();
    return out;
}

} // namespace

ScenarioConfig parse_scenario(const json& doc)
{
    if (!doc.is_object()) throw ConfigError({"configuration must be a JSON object"});

    std::vector<std::string> issues;
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (!kTopLevelKeys.count(it.key())) issues.push_back("unknown key " + it.key());

    Reader rd(issues);
    ScenarioConfig c;
    NetworkParams& p = c.params;

    auto assign = [](double& dst, std::optional<double> v) {
        if (v) dst = *v;
    };
    assign(p.lambda, rd.number(doc, "lambda", true));
    assign(p.p_mobile, rd.number(doc, "p_mobile", true));
    assign(p.height, rd.number(doc, "height", true));
    assign(p.alpha, rd.number(doc, "alpha", true));
    assign(p.noise, rd.number(doc, "noise", true));
    if (auto k = rd.integer(doc, "k", true, "k must be an integer in 1..8")) p.fading.k = static_cast<int>(*k);
    assign(p.fading.omega, rd.number(doc, "omega", true));
    assign(p.antenna.g_main, rd.number(doc, "g_main", true));
    assign(p.antenna.g_side, rd.number(doc, "g_side", true));

    const bool has_radii = doc.contains("r_in") || doc.contains("r_out");
    const bool has_angles = doc.contains("theta_m_deg") || doc.contains("theta_s_deg");
    if (!has_radii && !has_angles) issues.emplace_back("either r_in/r_out or theta_m_deg/theta_s_deg is required");
    if (has_radii) {
        assign(p.antenna.r_in, rd.number(doc, "r_in", true));
        assign(p.antenna.r_out, rd.number(doc, "r_out", true));
    }
    if (has_angles) {
        AntennaAngles a;
        assign(a.theta_m_deg, rd.number(doc, "theta_m_deg", true));
        assign(a.theta_s_deg, rd.number(doc, "theta_s_deg", true));
        c.antenna_angles = a;
    }

    if (auto it = doc.find("speed"); it != doc.end()) {
        if (auto s = parse_speed(*it, issues)) c.speed = std::move(*s);
    } else {
        issues.emplace_back("speed is required");
    }

    assign(c.t_gap, rd.number(doc, "t_gap", false));

    const bool has_db = doc.contains("threshold_db");
    const bool has_lin = doc.contains("threshold");
    if (has_db && has_lin) {
        issues.emplace_back("give only one of threshold_db and threshold");
    } else if (has_db) {
        if (auto db = rd.number(doc, "threshold_db", true)) c.threshold = db_to_linear(*db);
    } else if (has_lin) {
        assign(c.threshold, rd.number(doc, "threshold", true));
    } else {
        issues.emplace_back("threshold_db is required");
    }

    if (auto m = rd.integer(doc, "m_initial", false, "m_initial must be a non-negative integer")) {
        if (*m < 0)
            issues.emplace_back("m_initial must be >= 0");
        else
            c.m_initial = static_cast<int>(*m);
    }
    if (auto n = rd.unsigned_integer(doc, "replications", "replications must be a positive integer")) c.replications = *n;
    if (auto s = rd.unsigned_integer(doc, "seed", "seed must be an unsigned 64-bit integer")) c.seed = *s;

    if (!issues.empty()) throw ConfigError(std::move(issues));
    return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file " + path.string()});
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("config is not valid JSON: ") + e.what()});
    }
    return parse_scenario(doc);
}

json to_json(const ScenarioConfig& c)
{
    const NetworkParams& p = c.params;
    json doc = {
        {"lambda", p.lambda},
        {"p_mobile", p.p_mobile},
        {"height", p.height},
        {"alpha", p.alpha},
        {"noise", p.noise},
        {"k", p.fading.k},
        {"omega", p.fading.omega},
        {"g_main", p.antenna.g_main},
        {"g_side", p.antenna.g_side},
        {"t_gap", c.t_gap},
        {"threshold", c.threshold},
        {"replications", c.replications},
        {"seed", c.seed},
    };
    if (c.antenna_angles) {
        doc["theta_m_deg"] = c.antenna_angles->theta_m_deg;
        doc["theta_s_deg"] = c.antenna_angles->theta_s_deg;
    }
    if (!c.antenna_angles || p.antenna.r_in != 0.0 || p.antenna.r_out != 0.0) {
        doc["r_in"] = p.antenna.r_in;
        doc["r_out"] = p.antenna.r_out;
    }
    if (c.m_initial) doc["m_initial"] = *c.m_initial;

    std::visit(
        [&doc](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, SpeedDistribution::Fixed>) {
                doc["speed"] = {{"kind", "fixed"}, {"v", d.v}};
            } else if constexpr (std::is_same_v<T, SpeedDistribution::Uniform>) {
                doc["speed"] = {{"kind", "uniform"}, {"v_min", d.v_min}, {"v_max", d.v_max}};
            } else {
                json table = json::array();
                for (std::size_t i = 0; i < d.speeds.size(); ++i) table.push_back({d.speeds[i], d.densities[i]});
                doc["speed"] = {{"kind", "tabulated"}, {"table", table}};
            }
        },
        c.speed.variant());
    return doc;
}

} // namespace uavtc
