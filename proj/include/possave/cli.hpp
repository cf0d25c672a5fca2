#pragma once

#include "possave/analysis.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace possave::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int {
    exit_ok = 0,
    exit_verification_failed = 1,
    exit_config_error = 2,
    exit_solver_failure = 3,
    exit_mean_mismatch = 4,
};

/// Every numeric default in one place. All of them are echoed under
/// `config_effective.numerics` in each report.
struct Defaults {
    static constexpr std::size_t nodes = QuadratureRule::default_nodes;
    static constexpr double tol_s = 1e-12;
    static constexpr double tol_f = 1e-10;
    static constexpr int max_iter = 200;
    static constexpr double tie_band = 1e-9;
    static constexpr double product_band = 1e-12;
    static constexpr double saving_band = 1e-9;
    static constexpr double mean_tolerance = 1e-9;
    static constexpr double weighting_exponent = 1.0;
    static constexpr std::size_t mc_samples = 200000;
    static constexpr std::uint64_t seed = 12345;
};

struct SweepSpec {
    std::string variable;  ///< gamma | spread | y0 | R
    double from;
    double to;
    int steps;

    std::vector<double> grid() const;
};

/// A parsed and validated run configuration. `effective` is the input with
/// every default filled in; parsing it again yields the same RunConfig.
struct RunConfig {
    Json effective;

    double y0;
    Utility utility;
    WeightingFunction weighting;
    std::optional<double> R;
    std::optional<FuzzyNumber> fuzzy;
    std::optional<RandomReturn> distribution;
    std::optional<ModelKind> model;
    std::optional<SweepSpec> sweep;

    QuadratureRule rule;
    AnalysisSettings settings;
    std::size_t mc_samples;
    std::uint64_t seed;

    /// Effective mean return: explicit R, else E_f(A) or M(R̃).
    double mean_return() const;
    SavingProblem problem(ModelKind kind) const;
};

/// Throws ConfigError (or InvalidParameter from the domain types) on any malformed field.
RunConfig parse_config(const nlohmann::json& input);
RunConfig parse_config(const Json& effective);
RunConfig parse_config_text(const std::string& text);

/// Copy of the effective config with one sweep variable set to `value`.
Json with_parameter(const RunConfig& config, const std::string& variable, double value);

Json cmd_solve(const RunConfig& config);
Json cmd_compare(const RunConfig& config);
Json report_to_json(const ComparisonReport& report, const RunConfig& config);

/// Fixed CSV header of the sweep table.
const std::vector<std::string>& sweep_columns();

struct SweepTable {
    Json effective;
    std::string variable;
    std::vector<double> values;
    std::vector<ComparisonReport> reports;
    std::vector<Json> row_configs;
};

SweepTable run_sweep(const RunConfig& config);
std::string sweep_to_csv(const SweepTable& table);
Json sweep_to_json(const SweepTable& table);

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

struct VerifyOutcome {
    Json summary;
    std::vector<CheckResult> checks;
    bool passed() const;
};

VerifyOutcome cmd_verify(const RunConfig& config);

/// Full command-line entry point. Primary output goes to `out` unless
/// `--out` names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace possave::cli
