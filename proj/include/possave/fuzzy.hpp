#pragma once

#include "possave/errors.hpp"
#include "possave/quadrature.hpp"
#include "possave/smooth_function.hpp"

#include <cmath>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace possave {

/// Density on [0,1] weighting the level sets of a fuzzy number.
///
/// The power family f(t) = (p+1)·t^p is non-negative, non-decreasing and
/// integrates to one for every p ≥ 0; p = 1 gives f(t) = 2t. The uniform
/// kind is f ≡ 1.
class WeightingFunction {
public:
    enum class Kind { uniform, power };

    static WeightingFunction uniform() { return WeightingFunction(Kind::uniform, 0.0); }
    static WeightingFunction power(double exponent);
    /// f(t) = 2t
    static WeightingFunction linear() { return power(1.0); }

    Kind kind() const noexcept { return kind_; }
    double exponent() const noexcept { return exponent_; }

    double operator()(double t) const;

    /// False for non-integer exponents, where t^p has unbounded derivatives at 0.
    bool smooth_at_zero() const noexcept;

private:
    WeightingFunction(Kind kind, double exponent) : kind_(kind), exponent_(exponent) {}

    Kind kind_;
    double exponent_;
};

/// The γ-level set [a₁(γ), a₂(γ)] of a fuzzy number.
struct LevelSet {
    double lower;
    double upper;
};

struct CrispPoint {
    double value;
};

struct CrispInterval {
    double lower;
    double upper;
};

struct Triangular {
    double peak;
    double left_spread;
    double right_spread;
};

struct Trapezoidal {
    double core_lower;
    double core_upper;
    double left_spread;
    double right_spread;
};

struct SampledLevel {
    double gamma;
    double lower;
    double upper;
};

/// Endpoint table interpolated linearly in γ. Rows must start at γ = 0 and end at γ = 1.
struct Sampled {
    std::vector<SampledLevel> levels;
};

using FuzzyShape = std::variant<CrispPoint, CrispInterval, Triangular, Trapezoidal, Sampled>;

/// A fuzzy number described by its family of level sets.
///
/// Construction validates the level-set invariants: a₁ non-decreasing,
/// a₂ non-increasing and a₁ ≤ a₂ on [0,1]. Sampled tables tolerate
/// violations up to 1e-9.
class FuzzyNumber {
public:
    static constexpr double sampled_tolerance = 1e-9;

    explicit FuzzyNumber(FuzzyShape shape);

    static FuzzyNumber crisp_point(double value) { return FuzzyNumber(CrispPoint{value}); }
    static FuzzyNumber crisp_interval(double lower, double upper) {
        return FuzzyNumber(CrispInterval{lower, upper});
    }
    static FuzzyNumber triangular(double peak, double left_spread, double right_spread) {
        return FuzzyNumber(Triangular{peak, left_spread, right_spread});
    }
    static FuzzyNumber trapezoidal(double core_lower, double core_upper, double left_spread,
                                   double right_spread) {
        return FuzzyNumber(Trapezoidal{core_lower, core_upper, left_spread, right_spread});
    }
    static FuzzyNumber sampled(std::vector<SampledLevel> levels) { return FuzzyNumber(Sampled{std::move(levels)}); }

    const FuzzyShape& shape() const noexcept { return shape_; }
    double shift() const noexcept { return shift_; }
    std::string shape_name() const;

    /// Throws DomainError for γ outside [0,1].
    LevelSet level_set(double gamma) const;

    /// The γ = 0 level set, i.e. the closure of the support.
    LevelSet support() const { return level_set(0.0); }

    /// A + t for a crisp t, realised as a shift of every level set.
    FuzzyNumber shifted(double offset) const;

    bool is_crisp_point() const noexcept { return std::holds_alternative<CrispPoint>(shape_); }

    /// Points of [0,1] between which the level-set endpoints are smooth in γ.
    std::span<const double> breakpoints() const noexcept { return breakpoints_; }

private:
    FuzzyShape shape_;
    double shift_ = 0.0;
    std::vector<double> breakpoints_;
};

namespace detail {

[[noreturn]] void throw_evaluation_error(const FuzzyNumber& a, const std::string& cause);

} // namespace detail

/// E_f(u(A)) = ½∫₀¹ [u(a₁(γ)) + u(a₂(γ))] f(γ) dγ, integrated with `rule` on
/// every smooth piece of the level-set family.
///
/// For weights that are not smooth at γ = 0 the first piece [0, b] is mapped
/// through γ = b·τ⁸, which turns f(γ)dγ into a density vanishing to order ≥ 7.
template <class U>
double possibilistic_expected_utility(const WeightingFunction& f, const FuzzyNumber& a, U&& u,
                                      const QuadratureRule& rule) {
    auto integrand = [&](double gamma) {
        const LevelSet ls = a.level_set(gamma);
        return (u(ls.lower) + u(ls.upper)) * f(gamma);
    };
    double total = 0.0;
    try {
        const auto breaks = a.breakpoints();
        for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
            const double lo = breaks[k];
            const double hi = breaks[k + 1];
            if (k == 0 && !f.smooth_at_zero()) {
                constexpr int m = 8;
                total += rule.integrate([&](double tau) {
                    const double tau_m1 = std::pow(tau, m - 1);
                    return integrand(hi * tau_m1 * tau) * hi * m * tau_m1;
                });
            } else {
                total += rule.integrate(integrand, lo, hi);
            }
        }
    } catch (const DomainError& e) {
        detail::throw_evaluation_error(a, e.what());
    }
    total *= 0.5;
    if (!std::isfinite(total)) detail::throw_evaluation_error(a, "integrand is not finite");
    return total;
}

/// E_f(A), computed through the same path as E_f(u(A)) with u the identity.
double possibilistic_mean(const WeightingFunction& f, const FuzzyNumber& a, const QuadratureRule& rule);

/// Var_f(A) = E_f((A − E_f(A))²).
double possibilistic_variance(const WeightingFunction& f, const FuzzyNumber& a, const QuadratureRule& rule);

/// u(E_f(A)) + ½·u''(E_f(A))·Var_f(A). Throws CapabilityError when u'' is missing.
double approx_expected_utility(const WeightingFunction& f, const FuzzyNumber& a, const SmoothFunction& u,
                               const QuadratureRule& rule);

} // namespace possave
