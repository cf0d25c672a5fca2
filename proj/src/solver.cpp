#include "possave/solver.hpp"

#include <cmath>
#include <sstream>

namespace possave {

SolveResult find_decreasing_root(const std::function<double(double)>& f, const std::function<double(double)>& df,
                                 Interval bracket, const SolveOptions& options) {
    double lo = bracket.lower;
    double hi = bracket.upper;
    if (!(lo < hi)) throw InvalidParameter("root bracket must satisfy lower < upper");

    const double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo == 0.0) return {lo, 0.0, 0, {lo, hi}, true};
    if (f_hi == 0.0) return {hi, 0.0, 0, {lo, hi}, true};
    if (f_lo < 0.0 || f_hi > 0.0) {
        std::ostringstream msg;
        msg.precision(17);
        const bool lower = f_lo < 0.0;
        msg << "first-order condition has constant sign on [" << lo << ", " << hi << "] (f(lo)=" << f_lo
            << ", f(hi)=" << f_hi << "); optimum lies at the " << (lower ? "lower" : "upper") << " boundary";
        throw NoInteriorOptimum(lower ? NoInteriorOptimum::Direction::lower : NoInteriorOptimum::Direction::upper,
                                msg.str());
    }

    double x = 0.5 * (lo + hi);
    double fx = f(x);
    double step = hi - lo;
    double prev_step = step;

    for (int iter = 1; iter <= options.max_iter; ++iter) {
        if (fx == 0.0) return {x, fx, iter, {x, x}, true};
        if (fx > 0.0) lo = x;
        else hi = x;

        if (std::abs(fx) <= options.tol_f && (std::abs(step) <= options.tol_s || hi - lo <= options.tol_s))
            return {x, fx, iter, {lo, hi}, true};

        const double slope = df(x);
        const double newton = (slope < 0.0 && std::isfinite(slope)) ? x - fx / slope : lo - 1.0;
        const double before = prev_step;
        prev_step = step;
        if (newton > lo && newton < hi && std::abs(newton - x) < 0.5 * std::abs(before)) {
            step = newton - x;
            x = newton;
        } else {
            const double mid = 0.5 * (lo + hi);
            step = mid - x;
            x = mid;
        }
        if (x <= lo || x >= hi) {
            // Bracket exhausted at floating-point resolution.
            const double fl = f(lo);
            const double fh = f(hi);
            const bool take_lo = std::abs(fl) <= std::abs(fh);
            const double xs = take_lo ? lo : hi;
            const double fs = take_lo ? fl : fh;
            return {xs, fs, iter, {lo, hi}, std::abs(fs) <= options.tol_f};
        }
        fx = f(x);
    }

    std::ostringstream msg;
    msg.precision(17);
    msg << "root finder did not converge in " << options.max_iter << " iterations; best bracket [" << lo << ", "
        << hi << "]";
    throw NonConvergence(lo, hi, msg.str());
}

SolveResult solve_optimum(const SavingProblem& problem, const SolveOptions& options) {
    const Interval bracket = options.bracket.value_or(problem.solver_bracket());
    const Interval feasible = problem.feasible_interval();
    if (!(bracket.lower >= feasible.lower && bracket.upper <= feasible.upper))
        throw DomainError("solver bracket must lie inside the feasible interval");
    return find_decreasing_root([&](double s) { return foc(problem, s); },
                                [&](double s) { return foc_derivative(problem, s); }, bracket, options);
}

} // namespace possave
