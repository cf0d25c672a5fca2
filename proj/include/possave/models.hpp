#pragma once

#include "possave/fuzzy.hpp"
#include "possave/quadrature.hpp"
#include "possave/stochastic.hpp"
#include "possave/utility.hpp"

#include <string>
#include <variant>

namespace possave {

/// Known gross return R.
struct CertainRisk {
    double R;
};

/// Random gross return R̃.
struct ProbabilisticRisk {
    RandomReturn X;
};

/// Fuzzy gross return A, weighted by f.
struct PossibilisticRisk {
    WeightingFunction f;
    FuzzyNumber A;
};

using Risk = std::variant<CertainRisk, ProbabilisticRisk, PossibilisticRisk>;

enum class ModelKind { certain, probabilistic, possibilistic };

std::string to_string(ModelKind kind);

/// Two-period saving problem: consume y₀ − s today and s·x tomorrow,
/// where x is the (certain, random or fuzzy) gross return on saving.
class SavingProblem {
public:
    /// Relative margin by which the solver bracket is pulled in from the feasible boundary.
    static constexpr double domain_margin = 1e-9;

    SavingProblem(double y0, Utility u, Risk risk, QuadratureRule rule = QuadratureRule{});

    static SavingProblem certain(double y0, Utility u, double R, QuadratureRule rule = QuadratureRule{}) {
        return SavingProblem(y0, std::move(u), CertainRisk{R}, std::move(rule));
    }
    static SavingProblem probabilistic(double y0, Utility u, RandomReturn x, QuadratureRule rule = QuadratureRule{}) {
        return SavingProblem(y0, std::move(u), ProbabilisticRisk{std::move(x)}, std::move(rule));
    }
    static SavingProblem possibilistic(double y0, Utility u, WeightingFunction f, FuzzyNumber a,
                                       QuadratureRule rule = QuadratureRule{}) {
        return SavingProblem(y0, std::move(u), PossibilisticRisk{f, std::move(a)}, std::move(rule));
    }

    double y0() const noexcept { return y0_; }
    const Utility& utility() const noexcept { return u_; }
    const Risk& risk() const noexcept { return risk_; }
    const QuadratureRule& quadrature() const noexcept { return rule_; }
    ModelKind kind() const noexcept { return static_cast<ModelKind>(risk_.index()); }

    /// Closed hull of the possible gross returns.
    LevelSet return_support() const noexcept { return support_; }

    /// Open set of savings s for which y₀ − s and every s·x lie in u's domain.
    Interval feasible_interval() const noexcept { return feasible_; }

    /// feasible_interval() shrunk by domain_margin at both ends.
    Interval solver_bracket() const noexcept;

    /// Expectation of g over the second-period return, using the model's own expectation operator.
    template <class G>
    double expect_return(G&& g) const;

private:
    double y0_;
    Utility u_;
    Risk risk_;
    QuadratureRule rule_;
    LevelSet support_{};
    Interval feasible_{};
};

template <class G>
double SavingProblem::expect_return(G&& g) const {
    switch (kind()) {
    case ModelKind::certain: return g(std::get<CertainRisk>(risk_).R);
    case ModelKind::probabilistic: return expect(std::get<ProbabilisticRisk>(risk_).X, g, rule_);
    default: {
        const auto& p = std::get<PossibilisticRisk>(risk_);
        return possibilistic_expected_utility(p.f, p.A, g, rule_);
    }
    }
}

/// U(s), V(s) or W(s): u(y₀ − s) plus the expected utility of s·x.
double total_utility(const SavingProblem& p, double s);

/// First derivative of total_utility: −u'(y₀ − s) + E[x·u'(s·x)].
double foc(const SavingProblem& p, double s);

/// Second derivative of total_utility: u''(y₀ − s) + E[x²·u''(s·x)].
double foc_derivative(const SavingProblem& p, double s);

} // namespace possave
