#include "possave/analysis.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace possave {

std::string to_string(Condition c) {
    switch (c) {
    case Condition::holds: return "holds";
    case Condition::fails: return "fails";
    default: return "boundary";
    }
}

std::string to_string(Classification c) {
    switch (c) {
    case Classification::extra_saving: return "extra_saving";
    case Classification::no_extra_saving: return "no_extra_saving";
    default: return "indeterminate";
    }
}

std::string to_string(Sign s) {
    switch (s) {
    case Sign::positive: return "positive";
    case Sign::negative: return "negative";
    default: return "indeterminate";
    }
}

Sign sign_with_band(double x, double band) {
    if (x > band) return Sign::positive;
    if (x < -band) return Sign::negative;
    return Sign::indeterminate;
}

namespace {

Condition condition_from(Sign s) {
    switch (s) {
    case Sign::positive: return Condition::holds;
    case Sign::negative: return Condition::fails;
    default: return Condition::boundary;
    }
}

// 2u''(x) + x·u'''(x); positive exactly when RP(x) > 2.
double prudence_factor(const Utility& u, double x) { return 2.0 * u.d2(x) + x * u.d3(x); }

double exact_or_nan(const SavingProblem& p, double s) {
    return p.feasible_interval().contains(s) ? foc(p, s) : std::numeric_limits<double>::quiet_NaN();
}

} // namespace

ConditionResult relative_prudence_condition(const Utility& u, double R, double s, double band) {
    const double rp = relative_prudence(u, R * s);
    return {condition_from(sign_with_band(rp - 2.0, band)), rp, 2.0};
}

ConditionResult cross_saving_condition(const Utility& u, double R, double s, double var_poss, double var_prob,
                                       double band) {
    const double product = prudence_factor(u, R * s) * (var_poss - var_prob);
    return {condition_from(sign_with_band(product, band)), product, 0.0};
}

ClassificationResult classify_cross_saving(const Utility& u, double R, double s, double var_poss, double var_prob,
                                           double prudence_band, double variance_band) {
    const double rp = relative_prudence(u, R * s);
    const Sign prudence = sign_with_band(rp - 2.0, prudence_band);
    const Sign gap = sign_with_band(var_poss - var_prob, variance_band);
    Classification c = Classification::indeterminate;
    if (prudence != Sign::indeterminate && gap != Sign::indeterminate)
        c = prudence == gap ? Classification::extra_saving : Classification::no_extra_saving;
    return {c, rp, 2.0};
}

double approx_foc_at(const Utility& u, double R, double s, double var) {
    if (var == 0.0) return 0.0;
    return 0.5 * var * s * prudence_factor(u, s * R);
}

bool agrees(Sign direct, Condition predicted) {
    if (direct == Sign::indeterminate || predicted == Condition::boundary) return true;
    return (direct == Sign::positive) == (predicted == Condition::holds);
}

bool agrees(Sign direct, Classification predicted) {
    if (direct == Sign::indeterminate || predicted == Classification::indeterminate) return true;
    return (direct == Sign::positive) == (predicted == Classification::extra_saving);
}

ComparisonReport build_report(double y0, const Utility& u, double R, const RandomReturn& x, const WeightingFunction& f,
                              const FuzzyNumber& a, const QuadratureRule& rule, const AnalysisSettings& settings) {
    ComparisonReport r;
    r.R = R;
    r.mean_poss = possibilistic_mean(f, a, rule);
    r.mean_prob = mean(x);
    const double tol = settings.mean_tolerance;
    if (std::abs(r.mean_poss - R) > tol || std::abs(r.mean_prob - R) > tol || std::abs(r.mean_poss - r.mean_prob) > tol) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "mean returns disagree: R=" << R << ", E_f(A)=" << r.mean_poss << ", M(X)=" << r.mean_prob
            << " (tolerance " << tol << ")";
        throw MeanMismatch(msg.str());
    }
    r.var_poss = possibilistic_variance(f, a, rule);
    r.var_prob = variance(x);

    const auto possibilistic_problem = SavingProblem::possibilistic(y0, u, f, a, rule);
    r.certain = solve_optimum(SavingProblem::certain(y0, u, R, rule), settings.solve);
    r.probabilistic = solve_optimum(SavingProblem::probabilistic(y0, u, x, rule), settings.solve);
    r.possibilistic = solve_optimum(possibilistic_problem, settings.solve);

    r.s_star = r.certain.s_opt;
    r.s1_star = r.probabilistic.s_opt;
    r.s_dstar = r.possibilistic.s_opt;
    r.prec_prob = r.s1_star - r.s_star;
    r.prec_poss = r.s_dstar - r.s_star;
    r.prec_cross = r.s_dstar - r.s1_star;
    r.sign_prob = sign_with_band(r.prec_prob, settings.saving_band);
    r.sign_poss = sign_with_band(r.prec_poss, settings.saving_band);
    r.sign_cross = sign_with_band(r.prec_cross, settings.saving_band);

    r.approx_wprime_at_s_star = approx_foc_at(u, R, r.s_star, r.var_poss);
    r.exact_wprime_at_s_star = exact_or_nan(possibilistic_problem, r.s_star);
    r.approx_wprime_at_s1_star = approx_foc_at(u, R, r.s1_star, r.var_poss - r.var_prob);
    r.exact_wprime_at_s1_star = exact_or_nan(possibilistic_problem, r.s1_star);

    r.rp_at_Rs_star = relative_prudence(u, R * r.s_star);
    r.rp_at_Rs1_star = relative_prudence(u, R * r.s1_star);
    r.rs_condition = relative_prudence_condition(u, R, r.s_star, settings.prudence_band);
    r.cross_condition = cross_saving_condition(u, R, r.s1_star, r.var_poss, r.var_prob, settings.product_band);
    r.cross_classification = classify_cross_saving(u, R, r.s1_star, r.var_poss, r.var_prob, settings.prudence_band,
                                                   settings.product_band);
    return r;
}

} // namespace possave
