#pragma once

#include "possave/models.hpp"
#include "possave/solver.hpp"

#include <string>

namespace possave {

/// Outcome of a weak/strict inequality evaluated with a tie band.
enum class Condition { holds, fails, boundary };

enum class Classification { extra_saving, no_extra_saving, indeterminate };

enum class Sign { positive, negative, indeterminate };

std::string to_string(Condition c);
std::string to_string(Classification c);
std::string to_string(Sign s);

/// Sign of x, with |x| ≤ band reported as indeterminate.
Sign sign_with_band(double x, double band);

struct ConditionResult {
    Condition outcome;
    double lhs;
    double rhs;
};

struct ClassificationResult {
    Classification outcome;
    double lhs;
    double rhs;
};

/// Tolerances shared by every predicate; echoed into reports.
struct AnalysisSettings {
    SolveOptions solve{};
    /// |RP − 2| at or below this is a tie.
    double prudence_band = 1e-9;
    /// |[2u'' + x·u'''](Var_f(A) − D²(R̃))| and |Var_f(A) − D²(R̃)| at or below this are ties.
    double product_band = 1e-12;
    /// Differences of optimal savings at or below this carry no sign.
    double saving_band = 1e-9;
    /// Allowed disagreement between E_f(A), M(R̃) and R.
    double mean_tolerance = 1e-9;
};

/// Relative prudence at R·s compared with 2: holds when RP > 2, fails when RP < 2.
ConditionResult relative_prudence_condition(const Utility& u, double R, double s, double band = 1e-9);

/// Sign of [2u''(sR) + R·s·u'''(sR)]·[Var_f(A) − D²(R̃)]: holds when positive, i.e. when
/// moving from the random to the fuzzy return raises optimal saving.
ConditionResult cross_saving_condition(const Utility& u, double R, double s, double var_poss, double var_prob,
                                       double band = 1e-12);

/// Extra saving from the random to the fuzzy model when RP(R·s) and the
/// variance gap are on the same side of 2 and 0 respectively; no extra saving
/// when they are on opposite sides; indeterminate when either sits in its band.
ClassificationResult classify_cross_saving(const Utility& u, double R, double s, double var_poss, double var_prob,
                                           double prudence_band = 1e-9, double variance_band = 1e-12);

/// Second-order estimate of the fuzzy-model FOC at a point s that solves
/// another model's FOC: (var/2)·s·[2u''(sR) + R·s·u'''(sR)].
///
/// Pass Var_f(A) with s = s* to estimate W'(s*), or Var_f(A) − D²(R̃) with
/// s = s₁* to estimate W'(s₁*).
double approx_foc_at(const Utility& u, double R, double s, double var);

struct ComparisonReport {
    double R = 0.0;
    double s_star = 0.0;
    double s1_star = 0.0;
    double s_dstar = 0.0;
    double prec_prob = 0.0;   ///< s₁* − s*
    double prec_poss = 0.0;   ///< s** − s*
    double prec_cross = 0.0;  ///< s** − s₁*
    double rp_at_Rs_star = 0.0;
    double rp_at_Rs1_star = 0.0;
    double var_poss = 0.0;
    double var_prob = 0.0;
    double mean_poss = 0.0;
    double mean_prob = 0.0;

    ConditionResult rs_condition{};
    ConditionResult cross_condition{};
    ClassificationResult cross_classification{};

    /// Second-order estimates of W' at s* and s₁* next to the exact values.
    double approx_wprime_at_s_star = 0.0;
    double exact_wprime_at_s_star = 0.0;
    double approx_wprime_at_s1_star = 0.0;
    double exact_wprime_at_s1_star = 0.0;

    Sign sign_prob = Sign::indeterminate;
    Sign sign_poss = Sign::indeterminate;
    Sign sign_cross = Sign::indeterminate;

    SolveResult certain{};
    SolveResult probabilistic{};
    SolveResult possibilistic{};
};

/// Solves the certain, probabilistic and possibilistic problems sharing y₀,
/// u and mean return R, then evaluates every predicate next to the directly
/// solved signs. Throws MeanMismatch when E_f(A), M(R̃) and R disagree.
ComparisonReport build_report(double y0, const Utility& u, double R, const RandomReturn& x, const WeightingFunction& f,
                              const FuzzyNumber& a, const QuadratureRule& rule,
                              const AnalysisSettings& settings = {});

/// Whether a directly solved sign agrees with a predicate outcome. Undecided
/// pairs (indeterminate sign or boundary outcome) count as agreeing.
bool agrees(Sign direct, Condition predicted);
bool agrees(Sign direct, Classification predicted);

} // namespace possave
