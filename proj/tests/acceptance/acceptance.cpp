// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "possave/analysis.hpp"
#include "possave/cli.hpp"

#include "oracles.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

using namespace possave;

namespace {

// Pinned tolerances.
constexpr double tol_mean = 1e-12;
constexpr double tol_var = 1e-10;
constexpr double tol_rp = 1e-12;
constexpr double saving_band = 1e-9;
constexpr double tol_closed_form = 1e-10;
constexpr double tol_quadratic = 1e-10;
constexpr double min_shrink = 4.0;
constexpr double tol_linearity = 1e-9;
constexpr double tol_degenerate = 1e-12;
constexpr double tol_fd = 1e-6;
constexpr double tol_nodes = 1e-10;

const std::vector<double> gamma_grid{0.5, 0.8, 1.5, 2.0, 3.0};

/// Collects failures for one criterion.
class Criterion {
public:
    explicit Criterion(std::string title) : title_(std::move(title)) {}

    void require(bool ok, const std::string& what) {
        ++checks_;
        if (!ok && first_.empty()) first_ = what;
        failed_ += ok ? 0 : 1;
    }

    bool report(int index) const {
        if (failed_ == 0)
            std::printf("PASS %2d %s (%d checks)\n", index, title_.c_str(), checks_);
        else
            std::printf("FAIL %2d %s (%d of %d checks failed; first: %s)\n", index, title_.c_str(), failed_, checks_,
                        first_.c_str());
        return failed_ == 0;
    }

private:
    std::string title_;
    std::string first_;
    int checks_ = 0;
    int failed_ = 0;
};

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

ComparisonReport interval_report(double gamma, double c, double d, const QuadratureRule& rule) {
    return build_report(1.0, Utility::crra_or_log(gamma), 0.5 * (c + d), RandomReturn::uniform(c, d),
                        WeightingFunction::linear(), FuzzyNumber::crisp_interval(c, d), rule);
}

Sign expected_sign(double gamma) { return gamma > 1.0 ? Sign::positive : Sign::negative; }

Criterion interval_indicators() {
    Criterion c("interval example indicators: mean 1.1, Var_f = (c-d)^2/4, D^2 = (c-d)^2/12");
    const QuadratureRule q(64);
    const auto f = WeightingFunction::linear();
    const auto a = FuzzyNumber::crisp_interval(1.0, 1.2);
    const auto x = RandomReturn::uniform(1.0, 1.2);
    const double ef = possibilistic_mean(f, a, q);
    c.require(std::abs(ef - 1.1) <= tol_mean, "E_f(A) = " + num(ef));
    c.require(std::abs(mean(x) - 1.1) <= tol_mean, "M = " + num(mean(x)));
    c.require(std::abs(possibilistic_variance(f, a, q) - 0.01) <= tol_var, "Var_f(A)");
    c.require(std::abs(variance(x) - 0.04 / 12.0) <= tol_var, "D^2");
    // Independent Simpson evaluation of the level-set integral.
    const double simpson_var = oracle::level_integral([](double v) { return (v - 1.1) * (v - 1.1); },
                                                      [](double) { return 1.0; }, [](double) { return 1.2; },
                                                      [](double t) { return 2.0 * t; });
    c.require(std::abs(simpson_var - 0.01) <= tol_var, "Simpson oracle Var_f(A)");
    return c;
}

Criterion crra_prudence() {
    Criterion c("CRRA relative prudence is gamma + 1 at every x");
    for (double g : {0.5, 2.0, 3.0})
        for (double x : {0.5, 1.0, 2.0, 10.0}) {
            const double rp = relative_prudence(Utility::crra(g), x);
            c.require(std::abs(rp - (g + 1.0)) <= tol_rp, "gamma " + num(g) + " x " + num(x) + " RP " + num(rp));
        }
    return c;
}

Criterion fuzzy_sign() {
    Criterion c("fuzzy precautionary saving sign(s** - s*) = sign(gamma - 1)");
    const QuadratureRule q(64);
    for (double g : gamma_grid)
        for (double spread : {0.02, 0.1}) {
            const auto r = interval_report(g, 1.1 - spread / 2, 1.1 + spread / 2, q);
            const std::string tag = "gamma " + num(g) + " spread " + num(spread);
            if (std::abs(r.prec_poss) > saving_band) c.require(r.sign_poss == expected_sign(g), tag);
        }
    for (double g : {1.0, 1.0 + 1e-12, 1.0 - 1e-12}) {
        const auto r = interval_report(g, 1.05, 1.15, q);
        c.require(std::abs(r.prec_poss) <= saving_band, "gamma near 1: |s** - s*| = " + num(r.prec_poss));
    }
    return c;
}

Criterion random_sign() {
    Criterion c("random precautionary saving sign(s1* - s*) = sign(gamma - 1) at small spread");
    const QuadratureRule q(64);
    for (double g : gamma_grid)
        for (double spread : {0.02, 0.1}) {
            const auto r = interval_report(g, 1.1 - spread / 2, 1.1 + spread / 2, q);
            if (std::abs(r.prec_prob) > saving_band)
                c.require(r.sign_prob == expected_sign(g), "gamma " + num(g) + " spread " + num(spread));
        }
    return c;
}

Criterion cross_sign() {
    Criterion c("cross saving sign(s** - s1*) matches the product condition and the classification");
    const QuadratureRule q(64);
    for (double g : gamma_grid)
        for (double spread : {0.02, 0.05, 0.1}) {
            const auto r = interval_report(g, 1.1 - spread / 2, 1.1 + spread / 2, q);
            const std::string tag = "gamma " + num(g) + " spread " + num(spread);
            c.require(std::abs(r.var_poss - 3.0 * r.var_prob) <= tol_var, tag + " variance ratio");
            if (std::abs(r.prec_cross) <= saving_band) continue;
            c.require(agrees(r.sign_cross, r.cross_condition.outcome), tag + " product condition");
            c.require(agrees(r.sign_cross, r.cross_classification.outcome), tag + " classification");
            c.require(r.cross_classification.outcome != Classification::indeterminate, tag + " decided");
            // Extra cross saving exactly when gamma > 1 in this geometry.
            c.require(r.sign_cross == expected_sign(g), tag + " direct sign");
        }
    return c;
}

Criterion closed_forms() {
    Criterion c("certain-model optima: CRRA closed form and log utility y0/2");
    for (double g : {0.5, 0.8, 2.0, 3.0, 5.0})
        for (double R : {0.9, 1.1, 1.5})
            for (double y0 : {1.0, 2.0}) {
                const double expected = y0 / (1.0 + std::pow(R, (g - 1.0) / g));
                const auto s = solve_optimum(SavingProblem::certain(y0, Utility::crra(g), R));
                c.require(std::abs(s.s_opt - expected) <= tol_closed_form,
                          "gamma " + num(g) + " R " + num(R) + " y0 " + num(y0));
            }
    for (double R : {0.8, 1.1, 2.0})
        for (double y0 : {1.0, 3.0}) {
            const auto s = solve_optimum(SavingProblem::certain(y0, Utility::log(), R));
            c.require(std::abs(s.s_opt - y0 / 2.0) <= tol_closed_form, "log R " + num(R));
        }
    return c;
}

Criterion approximation_quality() {
    Criterion c("second-order approximations: exact on quadratics, error shrinks >= 4x when spread halves");
    const QuadratureRule q(64);
    oracle::Gen gen(41);
    const std::vector<FuzzyNumber> shapes{FuzzyNumber::crisp_interval(1.0, 1.2), FuzzyNumber::triangular(1.1, 0.05, 0.15),
                                          FuzzyNumber::trapezoidal(1.0, 1.1, 0.2, 0.05)};
    const std::vector<RandomReturn> laws{RandomReturn::uniform(1.0, 1.2),
                                         RandomReturn::discrete({{0.9, 0.25}, {1.1, 0.5}, {1.4, 0.25}})};
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = quadratic_polynomial(gen.uniform(-2, 2), gen.uniform(-2, 2), gen.uniform(-2, 2));
        for (const auto& f : {WeightingFunction::uniform(), WeightingFunction::linear(), WeightingFunction::power(2.5)})
            for (const auto& a : shapes)
                c.require(std::abs(approx_expected_utility(f, a, p, q) - possibilistic_expected_utility(f, a, p, q)) <=
                              tol_quadratic,
                          "fuzzy quadratic");
        for (const auto& x : laws)
            c.require(std::abs(approx_expect(x, p) - expect(x, p, q)) <= tol_quadratic, "random quadratic");
    }
    const Utility u = Utility::crra(2.0);
    const auto f = WeightingFunction::linear();
    double previous = 0.0;
    for (double spread : {0.2, 0.1, 0.05, 0.025}) {
        const auto a = FuzzyNumber::triangular(1.1, spread, spread);
        const double err = std::abs(possibilistic_expected_utility(f, a, u, q) - approx_expected_utility(f, a, u.as_smooth(), q));
        if (previous > 0.0) c.require(previous / err >= min_shrink, "spread " + num(spread) + " ratio " + num(previous / err));
        previous = err;
    }
    previous = 0.0;
    const SmoothFunction smooth = u.as_smooth();
    for (double spread : {0.2, 0.1, 0.05, 0.025}) {
        const auto x = RandomReturn::uniform(1.1 - spread, 1.1 + spread);
        const double err = std::abs(expect(x, [&](double v) { return u(v); }, q) - approx_expect(x, smooth));
        if (previous > 0.0) c.require(previous / err >= min_shrink, "random spread " + num(spread));
        previous = err;
    }
    return c;
}

Criterion linearity_and_degeneracy() {
    Criterion c("linearity of E_f over 100 random cases; crisp/one-atom risks collapse to the certain model");
    const QuadratureRule q(64);
    oracle::Gen gen(2718);
    const std::vector<std::function<double(double)>> basis{
        [](double v) { return v; },           [](double v) { return v * v * v; }, [](double v) { return std::log(v); },
        [](double v) { return std::exp(-v); }, [](double v) { return std::sqrt(v); }, [](double v) { return 1.0 / v; }};
    for (int trial = 0; trial < 100; ++trial) {
        const double a = gen.uniform(-5, 5);
        const double b = gen.uniform(-5, 5);
        const auto& g = basis[gen.integer(0, 5)];
        const auto& h = basis[gen.integer(0, 5)];
        const double peak = gen.uniform(0.5, 2.0);
        FuzzyNumber A = FuzzyNumber::crisp_point(peak);
        switch (gen.integer(0, 2)) {
        case 0: A = FuzzyNumber::triangular(peak, gen.uniform(0, 0.4), gen.uniform(0, 0.4)); break;
        case 1: A = FuzzyNumber::crisp_interval(peak - gen.uniform(0.01, 0.4), peak + gen.uniform(0.01, 0.4)); break;
        default: A = FuzzyNumber::trapezoidal(peak, peak + gen.uniform(0, 0.3), gen.uniform(0, 0.4), gen.uniform(0, 0.4));
        }
        const auto f = gen.integer(0, 1) ? WeightingFunction::power(gen.uniform(0, 3)) : WeightingFunction::uniform();
        const double lhs = possibilistic_expected_utility(f, A, [&](double v) { return a * g(v) + b * h(v); }, q);
        const double rhs = a * possibilistic_expected_utility(f, A, g, q) + b * possibilistic_expected_utility(f, A, h, q);
        c.require(std::abs(lhs - rhs) < tol_linearity, "trial " + std::to_string(trial));
    }
    const auto close = [](double x, double y) { return std::abs(x - y) <= tol_degenerate * std::max(1.0, std::abs(x)); };
    for (const Utility& u : {Utility::crra(0.5), Utility::crra(2.0), Utility::log(), Utility::cara(1.0),
                             Utility::quadratic(0.4)}) {
        const auto cp = SavingProblem::certain(1.0, u, 1.1);
        const auto pp = SavingProblem::probabilistic(1.0, u, RandomReturn::point(1.1));
        const auto wp = SavingProblem::possibilistic(1.0, u, WeightingFunction::linear(), FuzzyNumber::crisp_point(1.1));
        const Interval b = cp.solver_bracket();
        for (int i = 0; i < 20; ++i) {
            const double s = b.lower + (b.upper - b.lower) * (i + 0.5) / 20.0;
            for (const auto* other : {&pp, &wp}) {
                c.require(close(total_utility(cp, s), total_utility(*other, s)), u.name() + " value");
                c.require(close(foc(cp, s), foc(*other, s)), u.name() + " foc");
                c.require(close(foc_derivative(cp, s), foc_derivative(*other, s)), u.name() + " foc derivative");
            }
        }
        const double s0 = solve_optimum(cp).s_opt;
        c.require(std::abs(solve_optimum(pp).s_opt - s0) <= tol_degenerate, u.name() + " random optimum");
        c.require(std::abs(solve_optimum(wp).s_opt - s0) <= tol_degenerate, u.name() + " fuzzy optimum");
    }
    return c;
}

Criterion numerical_hygiene() {
    Criterion c("analytic derivatives match finite differences; 64 and 128 nodes agree");
    for (const Utility& u : {Utility::crra(0.5), Utility::crra(2.0), Utility::crra(3.0), Utility::log(),
                             Utility::cara(1.5), Utility::quadratic(0.4)})
        for (double x : {0.3, 0.8, 1.5})
            for (int k = 0; k < 3; ++k) {
                const double analytic = u.eval(x, k + 1);
                const double fd = oracle::central_difference5([&](double y) { return u.eval(y, k); }, x, 1e-3);
                c.require(analytic == 0.0 ? std::abs(fd) <= 1e-8 : oracle::rel_close(analytic, fd, tol_fd),
                          u.name() + " order " + std::to_string(k + 1));
            }
    const QuadratureRule q64(64);
    const QuadratureRule q128(128);
    for (const Utility& u : {Utility::crra(0.5), Utility::crra(3.0), Utility::quadratic(0.4)}) {
        const std::vector<SavingProblem> problems{
            SavingProblem::certain(1.0, u, 1.1),
            SavingProblem::probabilistic(1.0, u, RandomReturn::uniform(1.0, 1.2), q64),
            SavingProblem::possibilistic(1.0, u, WeightingFunction::linear(), FuzzyNumber::triangular(1.1, 0.1, 0.05), q64),
            SavingProblem::possibilistic(1.0, u, WeightingFunction::power(0.5), FuzzyNumber::crisp_interval(1.0, 1.2), q64)};
        for (const auto& p : problems)
            for (double s : {0.25, 0.5, 0.75}) {
                const double h = 1e-3 * std::min(s, 1.0 - s);
                const double fd1 = oracle::central_difference5([&](double v) { return total_utility(p, v); }, s, h);
                const double fd2 = oracle::central_difference5([&](double v) { return foc(p, v); }, s, h);
                const double scale = std::max(std::abs(foc(p, s)), u.d1(1.0 - s));
                c.require(std::abs(foc(p, s) - fd1) <= tol_fd * scale, u.name() + " foc");
                c.require(oracle::rel_close(foc_derivative(p, s), fd2, tol_fd), u.name() + " foc derivative");
            }
    }
    for (const auto& f : {WeightingFunction::uniform(), WeightingFunction::linear(), WeightingFunction::power(0.5),
                          WeightingFunction::power(2.5)})
        for (const auto& a : {FuzzyNumber::crisp_interval(1.0, 1.2), FuzzyNumber::triangular(1.1, 0.1, 0.05),
                              FuzzyNumber::trapezoidal(1.0, 1.15, 0.1, 0.2)}) {
            const Utility u = Utility::crra(3.0);
            auto g = [&](double v) { return v * u.d1(0.5 * v); };
            c.require(std::abs(possibilistic_mean(f, a, q64) - possibilistic_mean(f, a, q128)) <= tol_nodes, "mean");
            c.require(std::abs(possibilistic_variance(f, a, q64) - possibilistic_variance(f, a, q128)) <= tol_nodes,
                      "variance");
            c.require(std::abs(possibilistic_expected_utility(f, a, g, q64) -
                               possibilistic_expected_utility(f, a, g, q128)) <= tol_nodes,
                      "marginal utility");
        }
    const auto r64 = interval_report(3.0, 1.0, 1.2, q64);
    const auto r128 = interval_report(3.0, 1.0, 1.2, q128);
    c.require(std::abs(r64.s_dstar - r128.s_dstar) <= tol_nodes, "fuzzy optimum");
    c.require(std::abs(r64.s1_star - r128.s1_star) <= tol_nodes, "random optimum");
    return c;
}

Criterion cli_determinism() {
    Criterion c("CLI compare is byte-identical across runs and verify exits 0 on the interval example");
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / ("possave_acceptance_" + std::to_string(::getpid()) + ".json");
    std::ofstream(path) << R"({"y0": 1.0, "utility": {"kind": "crra", "gamma": 3.0},
        "weighting": {"kind": "power", "p": 1.0}, "example": {"c": 1.0, "d": 1.2}})";
    const auto run = [&](const std::string& command) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run({command, "--config", path.string()}, out, err);
        return std::make_pair(code, out.str());
    };
    const auto first = run("compare");
    const auto second = run("compare");
    c.require(first.first == 0, "compare exit code " + std::to_string(first.first));
    c.require(!first.second.empty() && first.second == second.second, "compare output differs");
    const auto verify = run("verify");
    c.require(verify.first == 0, "verify exit code " + std::to_string(verify.first));
    fs::remove(path);
    return c;
}

} // namespace

int main() {
    const std::vector<std::function<Criterion()>> suite{interval_indicators, crra_prudence,        fuzzy_sign,
                                                        random_sign,         cross_sign,           closed_forms,
                                                        approximation_quality, linearity_and_degeneracy,
                                                        numerical_hygiene,   cli_determinism};
    int failures = 0;
    for (std::size_t i = 0; i < suite.size(); ++i) {
        try {
            failures += suite[i]().report(static_cast<int>(i + 1)) ? 0 : 1;
        } catch (const std::exception& e) {
            std::printf("FAIL %2zu threw: %s\n", i + 1, e.what());
            ++failures;
        }
    }
    std::printf("%zu of %zu criteria passed\n", suite.size() - failures, suite.size());
    return failures == 0 ? 0 : 1;
}
