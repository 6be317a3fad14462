#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "uavtc/cli/csv.hpp"
#include "uavtc/model.hpp"

namespace uavtc::cli {

enum class ExperimentKind { InterfererPmf, ConditionalSuccess, Retransmission, JointSuccess, Compare };

std::string_view kind_name(ExperimentKind kind);
std::optional<ExperimentKind> parse_kind(std::string_view name);

struct ExperimentSpec {
    ScenarioConfig scenario;
    ExperimentKind kind = ExperimentKind::Compare;
    std::vector<double> t_list;
    std::vector<double> threshold_db_list;
    std::vector<int> m_list;
    std::filesystem::path out_dir = ".";
    unsigned workers = 1;
};

// Sweep lists used when the user gives none:
//   interferer-pmf       m = {m_initial} or {5, 15}, t = {1, 5}
//   conditional-success  m as above, t = {1, 5}, T = -20..10 dB step 2
//   retransmission       t = 1..10, T = scenario threshold
//   joint-success        t = scenario t_gap, T = scenario threshold
//   compare              as joint-success
std::vector<double> default_t_list(ExperimentKind kind, const ScenarioConfig& scenario);
std::vector<double> default_threshold_db_list(ExperimentKind kind, const ScenarioConfig& scenario);
std::vector<int> default_m_list(const ScenarioConfig& scenario);

// Validates the scenario and the sweep lists; throws ConfigError.
void check_spec(const ExperimentSpec& spec);

struct ExperimentOutput {
    Table results;
    Table plotdata;
    nlohmann::json summary;
};

// Runs the whole grid in memory. `log` receives one line per grid point.
ExperimentOutput run_experiment(const ExperimentSpec& spec, std::ostream& log);

// run_experiment, then writes results.csv, plotdata.csv and summary.json into
// spec.out_dir. On any failure the files written so far are removed and the
// exception propagates.
ExperimentOutput run_and_write(const ExperimentSpec& spec, std::ostream& log);

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNumerical = 3;

// Maps the exception currently being handled to an exit code, printing a
// message to `err`.
int exit_code_for_current_exception(std::ostream& err);

std::string version_string();

} // namespace uavtc::cli
