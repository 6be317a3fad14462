#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uavtc/cli/experiment.hpp"
#include "uavtc/cli/plotdata.hpp"
#include "uavtc/config_io.hpp"
#include "uavtc/estimators.hpp"

using namespace uavtc;
using namespace uavtc::cli;

namespace {

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> replications;
    std::optional<unsigned> workers;
    std::string out = ".";
    std::optional<std::string> sweep_t;
    std::optional<std::string> sweep_tdb;
    std::optional<std::string> m;
};

template <class T>
std::vector<T> parse_list(const std::string& text, const char* flag)
{
    std::vector<T> values;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        std::string token = text.substr(pos, comma - pos);
        token.erase(0, token.find_first_not_of(" \t"));
        token.erase(token.find_last_not_of(" \t") + 1);
        T v{};
        const char* end = token.data() + token.size();
        auto [ptr, ec] = std::from_chars(token.data(), end, v);
        if (token.empty() || ec != std::errc() || ptr != end)
            throw ConfigError({std::string(flag) + ": cannot parse '" + token + "'"});
        values.push_back(v);
        pos = comma + 1;
    }
    return values;
}

void add_common(CLI::App* sub, Flags& f)
{
    sub->add_option("--config", f.config, "scenario JSON file (default: reference scenario)");
    sub->add_option("--seed", f.seed, "base RNG seed");
    sub->add_option("--replications", f.replications, "Monte Carlo replications per grid point");
    sub->add_option("--workers", f.workers, "worker threads (default: UAVTC_WORKERS or hardware)");
    sub->add_option("--out", f.out, "output directory");
    sub->add_option("--sweep-t", f.sweep_t, "comma list of time gaps [s]");
    sub->add_option("--sweep-tdb", f.sweep_tdb, "comma list of SINR thresholds [dB]");
    sub->add_option("--m", f.m, "comma list of time-0 interferer counts");
}

ScenarioConfig load(const Flags& f)
{
    ScenarioConfig sc = f.config.empty() ? reference_scenario() : load_scenario(f.config);
    if (f.seed) sc.seed = *f.seed;
    if (f.replications) sc.replications = *f.replications;
    return sc;
}

ExperimentSpec build_spec(ExperimentKind kind, const Flags& f)
{
    ExperimentSpec spec;
    spec.kind = kind;
    spec.scenario = load(f);
    spec.t_list = f.sweep_t ? parse_list<double>(*f.sweep_t, "--sweep-t") : default_t_list(kind, spec.scenario);
    spec.threshold_db_list = f.sweep_tdb ? parse_list<double>(*f.sweep_tdb, "--sweep-tdb")
                                         : default_threshold_db_list(kind, spec.scenario);
    spec.m_list = f.m ? parse_list<int>(*f.m, "--m") : default_m_list(spec.scenario);
    spec.out_dir = f.out;
    spec.workers = f.workers ? *f.workers : default_worker_count();
    return spec;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Temporal correlation of interference and success in UAV networks"};
    app.set_version_flag("--version", version_string());
    app.require_subcommand(1);

    Flags flags;
    std::vector<std::pair<CLI::App*, ExperimentKind>> experiments;
    for (ExperimentKind kind : {ExperimentKind::InterfererPmf, ExperimentKind::ConditionalSuccess,
                                ExperimentKind::Retransmission, ExperimentKind::JointSuccess, ExperimentKind::Compare}) {
        static const char* help[] = {
            "conditional pmf of the interferer count at time t, analytic and simulated",
            "simulated success at time t given m interferers at time 0",
            "success after a failure, analytic and simulated",
            "joint and marginal success, analytic and simulated",
            "analytic vs Monte Carlo with z-scores",
        };
        auto* sub = app.add_subcommand(std::string(kind_name(kind)), help[static_cast<int>(kind)]);
        add_common(sub, flags);
        experiments.emplace_back(sub, kind);
    }

    auto* validate_cmd = app.add_subcommand("validate-config", "check a scenario file and print it normalized");
    validate_cmd->add_option("--config", flags.config, "scenario JSON file")->required();

    std::string plot_in;
    std::string plot_out;
    auto* plot_cmd = app.add_subcommand("plotdata", "convert results.csv to long-format series,x,y,se");
    plot_cmd->add_option("results", plot_in, "results.csv")->required();
    plot_cmd->add_option("-o,--output", plot_out, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (validate_cmd->parsed()) {
            const ValidatedScenario v = validate(load_scenario(flags.config));
            std::cout << to_json(v.config()).dump(2) << '\n';
            return kExitOk;
        }
        if (plot_cmd->parsed()) {
            std::ifstream in(plot_in, std::ios::binary);
            if (!in) throw CsvError("cannot open " + plot_in);
            const Table table = emit_plotdata(in);
            if (plot_out.empty()) {
                write_csv(std::cout, table);
            } else {
                write_csv(std::filesystem::path(plot_out), table);
            }
            return kExitOk;
        }
        for (const auto& [sub, kind] : experiments) {
            if (!sub->parsed()) continue;
            const ExperimentSpec spec = build_spec(kind, flags);
            run_and_write(spec, std::cerr);
            std::cerr << "wrote " << (spec.out_dir / "results.csv").string() << '\n';
            return kExitOk;
        }
    } catch (...) {
        return exit_code_for_current_exception(std::cerr);
    }
    return kExitFailure;
}
