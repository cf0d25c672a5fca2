#include "possave/cli.hpp"
#include "possave/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

namespace possave::cli {

namespace {

Json predicate_json(const std::string& outcome, double lhs, double rhs) {
    return Json{{"outcome", outcome}, {"lhs", lhs}, {"rhs", rhs}};
}

Json solve_json(const SolveResult& r) {
    return Json{{"s_opt", r.s_opt},
                {"foc_residual", r.foc_residual},
                {"iterations", r.iterations},
                {"bracket", Json::array({r.bracket.lower, r.bracket.upper})},
                {"converged", r.converged}};
}

ComparisonReport compare_report(const RunConfig& c) {
    if (!c.R) throw ConfigError("config field 'R': is required for compare (or use 'example')");
    if (!c.fuzzy) throw ConfigError("config field 'fuzzy': is required for compare (or use 'example')");
    if (!c.distribution) throw ConfigError("config field 'distribution': is required for compare (or use 'example')");
    return build_report(c.y0, c.utility, *c.R, *c.distribution, c.weighting, *c.fuzzy, c.rule, c.settings);
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Runs task(i) for i in [0, n) on a small worker pool; rethrows the
// lowest-index failure so errors are independent of scheduling.
template <class Task>
void parallel_for(std::size_t n, Task&& task) {
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                task(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace

Json report_to_json(const ComparisonReport& r, const RunConfig& config) {
    Json out;
    out["config_effective"] = config.effective;
    out["solutions"] = Json{{"s_star", r.s_star}, {"s1_star", r.s1_star}, {"s_dstar", r.s_dstar}};
    out["precautionary"] = Json{{"prob", r.prec_prob}, {"poss", r.prec_poss}, {"cross", r.prec_cross}};
    out["signs"] = Json{{"prob", to_string(r.sign_prob)}, {"poss", to_string(r.sign_poss)}, {"cross", to_string(r.sign_cross)}};
    out["indicators"] = Json{{"R", r.R},
                             {"mean_poss", r.mean_poss},
                             {"mean_prob", r.mean_prob},
                             {"var_poss", r.var_poss},
                             {"var_prob", r.var_prob},
                             {"rp_at_Rs_star", r.rp_at_Rs_star},
                             {"rp_at_Rs1_star", r.rp_at_Rs1_star}};
    out["predicates"] =
        Json{{"rs_condition", predicate_json(to_string(r.rs_condition.outcome), r.rs_condition.lhs, r.rs_condition.rhs)},
             {"prop45", predicate_json(to_string(r.cross_condition.outcome), r.cross_condition.lhs, r.cross_condition.rhs)},
             {"corollary47", predicate_json(to_string(r.cross_classification.outcome), r.cross_classification.lhs,
                                            r.cross_classification.rhs)}};
    out["consistency"] = Json{{"rs_condition_vs_poss", agrees(r.sign_poss, r.rs_condition.outcome)},
                              {"rs_condition_vs_prob", agrees(r.sign_prob, r.rs_condition.outcome)},
                              {"prop45_vs_cross", agrees(r.sign_cross, r.cross_condition.outcome)},
                              {"corollary47_vs_cross", agrees(r.sign_cross, r.cross_classification.outcome)}};
    out["diagnostics"] = Json{{"approx_wprime_at_s_star", r.approx_wprime_at_s_star},
                              {"exact_wprime_at_s_star", r.exact_wprime_at_s_star},
                              {"approx_wprime_at_s1_star", r.approx_wprime_at_s1_star},
                              {"exact_wprime_at_s1_star", r.exact_wprime_at_s1_star}};
    out["solver"] = Json{{"certain", solve_json(r.certain)},
                         {"probabilistic", solve_json(r.probabilistic)},
                         {"possibilistic", solve_json(r.possibilistic)}};
    return out;
}

Json cmd_solve(const RunConfig& config) {
    if (!config.model) throw ConfigError("config field 'model': is required for solve");
    const SavingProblem problem = config.problem(*config.model);
    const SolveResult r = solve_optimum(problem, config.settings.solve);
    Json solution = solve_json(r);
    solution["total_utility"] = total_utility(problem, r.s_opt);
    return Json{{"config_effective", config.effective},
                {"model", to_string(*config.model)},
                {"feasible_interval", Json::array({problem.feasible_interval().lower, problem.feasible_interval().upper})},
                {"solution", solution}};
}

Json cmd_compare(const RunConfig& config) { return report_to_json(compare_report(config), config); }

const std::vector<std::string>& sweep_columns() {
    static const std::vector<std::string> columns{
        "variable",  "value",     "gamma",         "spread",         "y0",           "R",
        "s_star",    "s1_star",   "s_dstar",       "prec_prob",      "prec_poss",    "prec_cross",
        "sign_prob", "sign_poss", "sign_cross",    "var_poss",       "var_prob",     "rp_at_Rs_star",
        "rp_at_Rs1_star", "rs_condition", "prop45", "corollary47"};
    return columns;
}

SweepTable run_sweep(const RunConfig& config) {
    if (!config.sweep) throw ConfigError("config field 'sweep': is required for sweep");
    SweepTable table;
    table.effective = config.effective;
    table.variable = config.sweep->variable;
    table.values = config.sweep->grid();

    std::vector<RunConfig> points;
    for (double v : table.values) {
        table.row_configs.push_back(with_parameter(config, table.variable, v));
        points.push_back(parse_config(table.row_configs.back()));
    }
    std::vector<std::optional<ComparisonReport>> reports(points.size());
    parallel_for(points.size(), [&](std::size_t i) { reports[i] = compare_report(points[i]); });
    for (auto& r : reports) table.reports.push_back(std::move(*r));
    return table;
}

std::string sweep_to_csv(const SweepTable& table) {
    std::ostringstream out;
    const auto& cols = sweep_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (std::size_t i = 0; i < table.reports.size(); ++i) {
        const ComparisonReport& r = table.reports[i];
        const Json& cfg = table.row_configs[i];
        std::string gamma;
        if (cfg["utility"]["kind"] == "crra") gamma = format_number(cfg["utility"]["gamma"].get<double>());
        else if (cfg["utility"]["kind"] == "log") gamma = "1";
        std::string spread;
        if (cfg.contains("example"))
            spread = format_number(cfg["example"]["d"].get<double>() - cfg["example"]["c"].get<double>());
        const std::vector<std::string> cells{table.variable,
                                             format_number(table.values[i]),
                                             gamma,
                                             spread,
                                             format_number(cfg["y0"].get<double>()),
                                             format_number(r.R),
                                             format_number(r.s_star),
                                             format_number(r.s1_star),
                                             format_number(r.s_dstar),
                                             format_number(r.prec_prob),
                                             format_number(r.prec_poss),
                                             format_number(r.prec_cross),
                                             to_string(r.sign_prob),
                                             to_string(r.sign_poss),
                                             to_string(r.sign_cross),
                                             format_number(r.var_poss),
                                             format_number(r.var_prob),
                                             format_number(r.rp_at_Rs_star),
                                             format_number(r.rp_at_Rs1_star),
                                             to_string(r.rs_condition.outcome),
                                             to_string(r.cross_condition.outcome),
                                             to_string(r.cross_classification.outcome)};
        for (std::size_t k = 0; k < cells.size(); ++k) out << (k ? "," : "") << cells[k];
        out << '\n';
    }
    return out.str();
}

Json sweep_to_json(const SweepTable& table) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < table.reports.size(); ++i) {
        const RunConfig point = parse_config(table.row_configs[i]);
        Json row = report_to_json(table.reports[i], point);
        Json entry{{"value", table.values[i]}};
        for (auto& [k, v] : row.items()) entry[k] = v;
        rows.push_back(std::move(entry));
    }
    return Json{{"config_effective", table.effective}, {"variable", table.variable}, {"rows", rows}};
}

bool VerifyOutcome::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

std::vector<double> interior_grid(const Interval& bracket, int n) {
    std::vector<double> out;
    for (int k = 0; k < n; ++k) out.push_back(bracket.lower + bracket.width() * (k + 0.5) / n);
    return out;
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(a)); }

CheckResult check_degeneracy(const RunConfig& c, double R) {
    const auto certain = SavingProblem::certain(c.y0, c.utility, R, c.rule);
    const auto poss = SavingProblem::possibilistic(c.y0, c.utility, c.weighting, FuzzyNumber::crisp_point(R), c.rule);
    const auto prob = SavingProblem::probabilistic(c.y0, c.utility, RandomReturn::point(R), c.rule);
    constexpr double tol = 1e-12;
    for (double s : interior_grid(certain.solver_bracket(), 20)) {
        for (const SavingProblem* p : {&poss, &prob}) {
            if (!close(total_utility(certain, s), total_utility(*p, s), tol) || !close(foc(certain, s), foc(*p, s), tol) ||
                !close(foc_derivative(certain, s), foc_derivative(*p, s), tol)) {
                return {"degeneracy_collapse", false,
                        to_string(p->kind()) + " model with a degenerate return differs from the certain model at s=" +
                            format_number(s)};
            }
        }
    }
    const double s0 = solve_optimum(certain, c.settings.solve).s_opt;
    const double s1 = solve_optimum(prob, c.settings.solve).s_opt;
    const double s2 = solve_optimum(poss, c.settings.solve).s_opt;
    if (std::abs(s0 - s1) > tol || std::abs(s0 - s2) > tol)
        return {"degeneracy_collapse", false, "degenerate optima differ from the certain optimum"};
    return {"degeneracy_collapse", true, "20 grid points and optima agree to 1e-12"};
}

CheckResult check_concavity(const std::vector<SavingProblem>& problems) {
    for (const auto& p : problems) {
        const auto grid = interior_grid(p.solver_bracket(), 100);
        double prev = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const double d2 = foc_derivative(p, grid[k]);
            if (!(d2 < 0.0))
                return {"concavity", false, to_string(p.kind()) + " total utility not concave at s=" + format_number(grid[k])};
            const double f = foc(p, grid[k]);
            if (k > 0 && !(f < prev))
                return {"concavity", false, to_string(p.kind()) + " foc not decreasing at s=" + format_number(grid[k])};
            prev = f;
        }
    }
    return {"concavity", true, "foc' < 0 and foc decreasing on 100 grid points per model"};
}

CheckResult check_residuals(const std::vector<SavingProblem>& problems, const ComparisonReport& r, double tol_f) {
    const SolveResult* solves[] = {&r.certain, &r.probabilistic, &r.possibilistic};
    for (std::size_t k = 0; k < problems.size(); ++k) {
        const SolveResult& s = *solves[k];
        const double residual = foc(problems[k], s.s_opt);
        if (!s.converged || std::abs(residual) > tol_f)
            return {"foc_residual", false, to_string(problems[k].kind()) + " residual " + format_number(residual)};
        const double best = total_utility(problems[k], s.s_opt);
        // Differences below the rounding noise of a 64-term sum carry no information
        // (CRRA values near gamma = 1 are of order 1/|1 - gamma|).
        const double noise = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(best);
        for (double delta : {1e-6, 1e-4}) {
            for (double sp : {s.s_opt - delta, s.s_opt + delta}) {
                if (problems[k].feasible_interval().contains(sp) && total_utility(problems[k], sp) > best + noise)
                    return {"foc_residual", false, to_string(problems[k].kind()) + " optimum beaten at s=" + format_number(sp)};
            }
        }
    }
    return {"foc_residual", true, "all optima converged with |foc| <= tol_f and beat s_opt +/- {1e-6, 1e-4}"};
}

CheckResult check_predicates(const ComparisonReport& r) {
    if (!agrees(r.sign_poss, r.rs_condition.outcome))
        return {"predicate_vs_direct_sign", false, "sign of s** - s* contradicts the relative prudence condition"};
    if (!agrees(r.sign_prob, r.rs_condition.outcome))
        return {"predicate_vs_direct_sign", false, "sign of s1* - s* contradicts the relative prudence condition"};
    if (!agrees(r.sign_cross, r.cross_condition.outcome))
        return {"predicate_vs_direct_sign", false, "sign of s** - s1* contradicts the cross-saving condition"};
    if (!agrees(r.sign_cross, r.cross_classification.outcome))
        return {"predicate_vs_direct_sign", false, "sign of s** - s1* contradicts the cross-saving classification"};
    return {"predicate_vs_direct_sign", true,
            "signs " + to_string(r.sign_poss) + "/" + to_string(r.sign_prob) + "/" + to_string(r.sign_cross) +
                " vs predicates " + to_string(r.rs_condition.outcome) + "/" + to_string(r.cross_condition.outcome) +
                "/" + to_string(r.cross_classification.outcome)};
}

CheckResult check_monte_carlo(const RunConfig& c, const ComparisonReport& r) {
    const Utility& u = c.utility;
    const double s = r.s1_star;
    auto g = [&](double x) { return x * u.d1(s * x); };
    const double quad = expect(*c.distribution, g, c.rule);
    const MonteCarloEstimate mc = monte_carlo_expect(*c.distribution, g, c.mc_samples, c.seed);
    const double gap = std::abs(quad - mc.mean);
    const bool ok = gap <= 4.0 * mc.standard_error + 1e-12;
    return {"monte_carlo_expectation", ok,
            "|quadrature - monte carlo| = " + format_number(gap) + ", 4 SE = " + format_number(4.0 * mc.standard_error) +
                " (seed " + std::to_string(c.seed) + ")"};
}

} // namespace

VerifyOutcome cmd_verify(const RunConfig& config) {
    const ComparisonReport report = compare_report(config);
    const std::vector<SavingProblem> problems{config.problem(ModelKind::certain), config.problem(ModelKind::probabilistic),
                                              config.problem(ModelKind::possibilistic)};
    VerifyOutcome out;
    out.checks.push_back(check_degeneracy(config, *config.R));
    out.checks.push_back(check_concavity(problems));
    out.checks.push_back(check_residuals(problems, report, config.settings.solve.tol_f));
    out.checks.push_back(check_predicates(report));
    out.checks.push_back(check_monte_carlo(config, report));

    Json checks = Json::array();
    std::optional<std::string> first_failure;
    for (const auto& c : out.checks) {
        checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        if (!c.passed && !first_failure) first_failure = c.name;
    }
    out.summary = Json{{"config_effective", config.effective},
                       {"checks", checks},
                       {"passed", !first_failure.has_value()},
                       {"first_failure", first_failure ? Json(*first_failure) : Json(nullptr)},
                       {"report", report_to_json(report, config)}};
    out.summary["report"].erase("config_effective");
    return out;
}

} // namespace possave::cli
