#pragma once

#include "possave/smooth_function.hpp"

#include <limits>
#include <string>
#include <variant>

namespace possave {

/// Open interval (lower, upper); either end may be infinite.
struct Interval {
    double lower;
    double upper;

    bool contains(double x) const noexcept { return x > lower && x < upper; }
    double width() const noexcept { return upper - lower; }
};

/// u(x) = x^{1−γ}/(1−γ), γ > 0, γ ≠ 1.
struct Crra {
    double gamma;
};

/// u(x) = ln x, the γ → 1 member of the CRRA family.
struct LogUtility {};

/// u(x) = −e^{−ax}/a
struct Cara {
    double a;
};

/// u(x) = x − b·x²/2, increasing only on x < 1/b.
struct QuadraticUtility {
    double b;
};

using UtilityKind = std::variant<Crra, LogUtility, Cara, QuadraticUtility>;

/// Strictly increasing, strictly concave utility with closed-form
/// derivatives up to third order.
class Utility {
public:
    explicit Utility(UtilityKind kind);

    static Utility crra(double gamma) { return Utility(Crra{gamma}); }
    /// CRRA with γ = 1 mapped onto the logarithm.
    static Utility crra_or_log(double gamma);
    static Utility log() { return Utility(LogUtility{}); }
    static Utility cara(double a) { return Utility(Cara{a}); }
    static Utility quadratic(double b) { return Utility(QuadraticUtility{b}); }

    const UtilityKind& kind() const noexcept { return kind_; }
    std::string name() const;

    /// Open interval on which u is defined with u' > 0 and u'' < 0.
    Interval domain() const noexcept;
    bool in_domain(double x) const noexcept { return domain().contains(x); }

    /// u⁽ᵏ⁾(x) for k ∈ {0,1,2,3}. Throws DomainError outside domain().
    double eval(double x, int order) const;

    double operator()(double x) const { return eval(x, 0); }
    double d1(double x) const { return eval(x, 1); }
    double d2(double x) const { return eval(x, 2); }
    double d3(double x) const { return eval(x, 3); }

    SmoothFunction as_smooth() const;

private:
    UtilityKind kind_;
};

/// Kimball's index −u'''(x)/u''(x). Throws SingularityError when u''(x) = 0.
double absolute_prudence(const Utility& u, double x);

/// −x·u'''(x)/u''(x)
double relative_prudence(const Utility& u, double x);

} // namespace possave
