#pragma once

#include "possave/models.hpp"

#include <functional>
#include <optional>

namespace possave {

struct SolveOptions {
    double tol_s = 1e-12;
    double tol_f = 1e-10;
    int max_iter = 200;
    /// Overrides the default bracket (the margin-shrunk feasible interval).
    std::optional<Interval> bracket;
};

struct SolveResult {
    double s_opt = 0.0;
    double foc_residual = 0.0;
    int iterations = 0;
    /// Final bracket known to contain the root.
    Interval bracket{};
    bool converged = false;
};

/// Root of a strictly decreasing function on [lo, hi], by bisection with
/// Newton steps accepted only while they stay inside the bracket and
/// contract faster than bisection would.
///
/// Throws NoInteriorOptimum when f has constant sign on the bracket and
/// NonConvergence when max_iter is exhausted.
SolveResult find_decreasing_root(const std::function<double(double)>& f, const std::function<double(double)>& df,
                                 Interval bracket, const SolveOptions& options = {});

/// Unique maximiser of the strictly concave total utility of `problem`.
SolveResult solve_optimum(const SavingProblem& problem, const SolveOptions& options = {});

} // namespace possave
