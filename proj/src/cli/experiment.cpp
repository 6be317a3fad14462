#include "uavtc/cli/experiment.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <limits>

#include "uavtc/analytic.hpp"
#include "uavtc/cli/plotdata.hpp"
#include "uavtc/config_io.hpp"
#include "uavtc/estimators.hpp"
#include "uavtc/rng.hpp"

#ifndef UAVTC_VERSION
#define UAVTC_VERSION "0.1.0"
#endif

namespace uavtc::cli {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct KindName {
    ExperimentKind kind;
    std::string_view name;
};

constexpr KindName kKindNames[] = {
    {ExperimentKind::InterfererPmf, "interferer-pmf"},
    {ExperimentKind::ConditionalSuccess, "conditional-success"},
    {ExperimentKind::Retransmission, "retransmission"},
    {ExperimentKind::JointSuccess, "joint-success"},
    {ExperimentKind::Compare, "compare"},
};

// Each grid point gets its own seed so points are statistically independent
// while the whole run stays a function of the base seed.
std::uint64_t point_seed(std::uint64_t base, std::uint64_t index)
{
    std::uint64_t state = base ^ (0xD1B54A32D192ED03ULL * (index + 1));
    return splitmix64(state);
}

ScenarioConfig at_point(const ScenarioConfig& base, double t, std::uint64_t index)
{
    ScenarioConfig sc = base;
    sc.t_gap = t;
    sc.seed = point_seed(base.seed, index);
    return sc;
}

std::string num(double v)
{
    return format_number(v);
}

std::string num(long long v)
{
    return format_number(v);
}

// Analytic joint/marginal/conditional values; the conditional is NaN when the
// failure event has vanishing probability.
SuccessReport analytic_point(const ScenarioConfig& sc, double t, double threshold)
{
    const auto& P = sc.params;
    SuccessReport r;
    const auto joint = joint_success(P, sc.speed, t, threshold);
    const auto m0 = marginal_success(P, sc.speed, t, threshold, Instant::Initial);
    const auto mt = marginal_success(P, sc.speed, t, threshold, Instant::Later);
    r.p_joint = joint.value;
    r.p_marginal_0 = m0.value;
    r.p_marginal_t = mt.value;
    r.p_independent_joint = m0.value * mt.value;
    r.quadrature_error_bound = joint.error_bound + m0.error_bound + mt.error_bound;
    r.p_retx_given_fail = 1.0 - m0.value < 1e-12 ? kNan : (mt.value - joint.value) / (1.0 - m0.value);
    return r;
}

double value_or_nan(const EstimatorResult& e)
{
    return e.available ? e.estimate : kNan;
}

double se_or_nan(const EstimatorResult& e)
{
    return e.available ? e.std_error : kNan;
}

Table run_interferer_pmf(const ExperimentSpec& spec, MonteCarloOptions mc, std::ostream& log)
{
    Table table;
    table.columns = {"m", "t", "n", "p_analytic", "p_mc", "p_poisson_independent"};
    const ScenarioConfig& base = spec.scenario;
    const InterfererPmf poisson = unconditional_interferer_pmf(base.params);
    std::uint64_t index = 0;
    for (int m : spec.m_list) {
        for (double t : spec.t_list) {
            const ScenarioConfig sc = at_point(base, t, index++);
            const InterfererPmf analytic = conditional_interferer_pmf(m, sc.params, sc.speed, t);
            const EmpiricalPmf empirical = estimate_conditional_pmf(m, sc, mc);
            const double tv = total_variation_distance(analytic.probs, empirical.probs);
            const int n_top = std::max(analytic.n_max(), static_cast<int>(empirical.probs.size()) - 1);
            for (int n = 0; n <= n_top; ++n) {
                const double p_mc = n < static_cast<int>(empirical.probs.size())
                                        ? empirical.probs[static_cast<std::size_t>(n)]
                                        : 0.0;
                table.add_row({num(static_cast<long long>(m)), num(t), num(static_cast<long long>(n)),
                               num(analytic.at(n)), num(p_mc), num(poisson.at(n))});
            }
            log << "interferer-pmf m=" << m << " t=" << t << " mean_analytic=" << analytic.mean()
                << " mean_mc=" << empirical.mean() << " tv=" << tv << '\n';
        }
    }
    return table;
}

Table run_conditional_success(const ExperimentSpec& spec, MonteCarloOptions mc, std::ostream& log)
{
    Table table;
    table.columns = {"m", "t", "threshold_db", "p_mc", "se"};
    std::vector<double> thresholds;
    for (double db : spec.threshold_db_list) thresholds.push_back(db_to_linear(db));
    std::uint64_t index = 0;
    for (int m : spec.m_list) {
        for (double t : spec.t_list) {
            const ScenarioConfig sc = at_point(spec.scenario, t, index++);
            const auto results = estimate_conditional_success(m, sc, thresholds, mc);
            for (std::size_t i = 0; i < thresholds.size(); ++i)
                table.add_row({num(static_cast<long long>(m)), num(t), num(spec.threshold_db_list[i]),
                               num(results[i].estimate), num(results[i].std_error)});
            log << "conditional-success m=" << m << " t=" << t << " thresholds=" << thresholds.size() << '\n';
        }
    }
    return table;
}

Table run_retransmission(const ExperimentSpec& spec, MonteCarloOptions mc, std::ostream& log)
{
    Table table;
    table.columns = {"t", "p_retx_analytic", "p_retx_mc", "se", "p_marginal_independent"};
    const double threshold = db_to_linear(spec.threshold_db_list.front());
    std::uint64_t index = 0;
    for (double t : spec.t_list) {
        ScenarioConfig sc = at_point(spec.scenario, t, index++);
        sc.threshold = threshold;
        // a vanishing failure probability is a numerical failure here
        const SuccessReport a = retransmission_report(sc.params, sc.speed, t, threshold);
        const JointSuccessEstimate e = estimate_joint_success(sc, mc);
        table.add_row({num(t), num(a.p_retx_given_fail), num(value_or_nan(e.retx_given_fail)),
                       num(se_or_nan(e.retx_given_fail)), num(a.p_marginal_t)});
        log << "retransmission t=" << t << " analytic=" << a.p_retx_given_fail
            << " mc=" << value_or_nan(e.retx_given_fail) << '\n';
    }
    return table;
}

Table run_joint_success(const ExperimentSpec& spec, MonteCarloOptions mc, std::ostream& log)
{
    Table table;
    table.columns = {"t",
                     "threshold_db",
                     "p_joint_analytic",
                     "p_joint_mc",
                     "se_joint",
                     "p_marginal_0_analytic",
                     "p_marginal_0_mc",
                     "se_marginal_0",
                     "p_marginal_t_analytic",
                     "p_marginal_t_mc",
                     "se_marginal_t",
                     "p_independent_joint"};
    std::uint64_t index = 0;
    for (double t : spec.t_list) {
        for (double db : spec.threshold_db_list) {
            ScenarioConfig sc = at_point(spec.scenario, t, index++);
            sc.threshold = db_to_linear(db);
            const SuccessReport a = analytic_point(sc, t, sc.threshold);
            const JointSuccessEstimate e = estimate_joint_success(sc, mc);
            table.add_row({num(t), num(db), num(a.p_joint), num(e.joint.estimate), num(e.joint.std_error),
                           num(a.p_marginal_0), num(e.marginal_0.estimate), num(e.marginal_0.std_error),
                           num(a.p_marginal_t), num(e.marginal_t.estimate), num(e.marginal_t.std_error),
                           num(a.p_independent_joint)});
            log << "joint-success t=" << t << " threshold_db=" << db << " analytic=" << a.p_joint
                << " mc=" << e.joint.estimate << '\n';
        }
    }
    return table;
}

Table run_compare(const ExperimentSpec& spec, MonteCarloOptions mc, std::ostream& log, double& max_abs_z)
{
    Table table;
    table.columns = {"t", "threshold_db", "quantity", "analytic", "mc", "se", "z"};
    max_abs_z = 0.0;
    std::uint64_t index = 0;
    for (double t : spec.t_list) {
        for (double db : spec.threshold_db_list) {
            ScenarioConfig sc = at_point(spec.scenario, t, index++);
            sc.threshold = db_to_linear(db);
            const SuccessReport a = analytic_point(sc, t, sc.threshold);
            const JointSuccessEstimate e = estimate_joint_success(sc, mc);
            const std::pair<const char*, std::pair<double, const EstimatorResult*>> rows[] = {
                {"joint", {a.p_joint, &e.joint}},
                {"marginal_0", {a.p_marginal_0, &e.marginal_0}},
                {"marginal_t", {a.p_marginal_t, &e.marginal_t}},
                {"retx_given_fail", {a.p_retx_given_fail, &e.retx_given_fail}},
            };
            for (const auto& [name, pair] : rows) {
                const auto& [analytic, est] = pair;
                const double value = value_or_nan(*est);
                const double se = se_or_nan(*est);
                // no z-score without spread
                const double z = (se > 0.0 && !std::isnan(analytic)) ? (value - analytic) / se : kNan;
                if (!std::isnan(z)) max_abs_z = std::max(max_abs_z, std::abs(z));
                table.add_row({num(t), num(db), name, num(analytic), num(value), num(se), num(z)});
            }
            log << "compare t=" << t << " threshold_db=" << db << '\n';
        }
    }
    return table;
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CsvError("cannot open " + path.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw CsvError("write to " + path.string() + " failed");
}

} // namespace

std::string_view kind_name(ExperimentKind kind)
{
    for (const auto& k : kKindNames)
        if (k.kind == kind) return k.name;
    return "unknown";
}

std::optional<ExperimentKind> parse_kind(std::string_view name)
{
    for (const auto& k : kKindNames)
        if (k.name == name) return k.kind;
    return std::nullopt;
}

std::vector<double> default_t_list(ExperimentKind kind, const ScenarioConfig& scenario)
{
    switch (kind) {
    case ExperimentKind::InterfererPmf:
    case ExperimentKind::ConditionalSuccess:
        return {1.0, 5.0};
    case ExperimentKind::Retransmission: {
        std::vector<double> ts;
        for (int t = 1; t <= 10; ++t) ts.push_back(t);
        return ts;
    }
    case ExperimentKind::JointSuccess:
    case ExperimentKind::Compare:
        break;
    }
    return {scenario.t_gap};
}

std::vector<double> default_threshold_db_list(ExperimentKind kind, const ScenarioConfig& scenario)
{
    if (kind == ExperimentKind::ConditionalSuccess) {
        std::vector<double> dbs;
        for (int db = -20; db <= 10; db += 2) dbs.push_back(db);
        return dbs;
    }
    return {linear_to_db(scenario.threshold)};
}

std::vector<int> default_m_list(const ScenarioConfig& scenario)
{
    if (scenario.m_initial) return {*scenario.m_initial};
    return {5, 15};
}

void check_spec(const ExperimentSpec& spec)
{
    std::vector<std::string> issues;
    try {
        (void)validate(spec.scenario);
    } catch (const ConfigError& e) {
        issues = e.issues();
    }
    const bool uses_m = spec.kind == ExperimentKind::InterfererPmf || spec.kind == ExperimentKind::ConditionalSuccess;
    if (spec.t_list.empty()) issues.push_back("sweep over t is empty");
    if (spec.threshold_db_list.empty()) issues.push_back("sweep over threshold_db is empty");
    if (uses_m && spec.m_list.empty()) issues.push_back("sweep over m is empty");
    for (double t : spec.t_list)
        if (!(t >= 0.0) || !std::isfinite(t)) issues.push_back("sweep value t=" + num(t) + " must be finite and >= 0");
    for (double db : spec.threshold_db_list)
        if (!std::isfinite(db)) issues.push_back("sweep value threshold_db must be finite");
    for (int m : spec.m_list)
        if (m < 0) issues.push_back("sweep value m=" + std::to_string(m) + " must be >= 0");
    if (spec.kind == ExperimentKind::Retransmission && spec.threshold_db_list.size() > 1)
        issues.push_back("retransmission takes a single threshold");
    if (spec.scenario.replications < 1) issues.push_back("replications must be >= 1");
    if (spec.workers < 1) issues.push_back("workers must be >= 1");
    if (!issues.empty()) throw ConfigError(std::move(issues));
}

ExperimentOutput run_experiment(const ExperimentSpec& spec, std::ostream& log)
{
    check_spec(spec);
    // run on the normalized scenario (angles folded into radii)
    ExperimentSpec normalized = spec;
    normalized.scenario = validate(spec.scenario).config();

    const auto started = utc_timestamp();
    const auto t0 = std::chrono::steady_clock::now();
    const MonteCarloOptions mc{spec.workers};

    ExperimentOutput out;
    double max_abs_z = kNan;
    switch (spec.kind) {
    case ExperimentKind::InterfererPmf:
        out.results = run_interferer_pmf(normalized, mc, log);
        break;
    case ExperimentKind::ConditionalSuccess:
        out.results = run_conditional_success(normalized, mc, log);
        break;
    case ExperimentKind::Retransmission:
        out.results = run_retransmission(normalized, mc, log);
        break;
    case ExperimentKind::JointSuccess:
        out.results = run_joint_success(normalized, mc, log);
        break;
    case ExperimentKind::Compare:
        out.results = run_compare(normalized, mc, log, max_abs_z);
        break;
    }
    out.plotdata = emit_plotdata(out.results);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    nlohmann::json& s = out.summary;
    s["version"] = version_string();
    s["experiment"] = std::string(kind_name(spec.kind));
    s["seed"] = spec.scenario.seed;
    s["replications"] = spec.scenario.replications;
    s["workers"] = spec.workers;
    s["started_utc"] = started;
    s["wall_time_s"] = wall;
    s["scenario"] = to_json(spec.scenario);
    s["sweep"] = {{"t", spec.t_list}, {"threshold_db", spec.threshold_db_list}, {"m", spec.m_list}};
    s["rows"] = out.results.rows.size();
    if (spec.kind == ExperimentKind::Compare) s["max_abs_z"] = max_abs_z;
    return out;
}

ExperimentOutput run_and_write(const ExperimentSpec& spec, std::ostream& log)
{
    ExperimentOutput out = run_experiment(spec, log);

    namespace fs = std::filesystem;
    const fs::path dir = spec.out_dir;
    bool created_dir = false;
    std::vector<fs::path> written;
    try {
        if (!fs::exists(dir)) created_dir = fs::create_directories(dir);
        const fs::path results = dir / "results.csv";
        const fs::path plot = dir / "plotdata.csv";
        const fs::path summary = dir / "summary.json";
        written.push_back(results);
        write_csv(results, out.results);
        written.push_back(plot);
        write_csv(plot, out.plotdata);
        written.push_back(summary);
        write_text(summary, out.summary.dump(2) + "\n");
    } catch (...) {
        std::error_code ec;
        for (const auto& p : written)
            if (fs::is_regular_file(p, ec)) fs::remove(p, ec);
        if (created_dir) fs::remove(dir, ec);  // only succeeds if empty
        throw;
    }
    return out;
}

int exit_code_for_current_exception(std::ostream& err)
{
    try {
        throw;
    } catch (const ConfigError& e) {
        err << "invalid configuration:\n";
        for (const auto& issue : e.issues()) err << "  " << issue << '\n';
        return kExitInvalid;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const QuadratureError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const JetError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const CsvError& e) {
        err << "malformed input: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        err << "invalid argument: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

std::string version_string()
{
    return UAVTC_VERSION;
}

} // namespace uavtc::cli
