#pragma once

#include "possave/errors.hpp"
#include "possave/fuzzy.hpp"
#include "possave/quadrature.hpp"
#include "possave/smooth_function.hpp"

#include <cmath>
#include <variant>
#include <vector>

namespace possave {

struct UniformReturn {
    double lower;
    double upper;
};

struct Atom {
    double value;
    double probability;
};

struct DiscreteReturn {
    std::vector<Atom> atoms;
};

/// A random gross return R̃ = 1 + r̃ with support in (0, ∞).
class RandomReturn {
public:
    static constexpr double probability_tolerance = 1e-12;

    explicit RandomReturn(std::variant<UniformReturn, DiscreteReturn> law);

    static RandomReturn uniform(double lower, double upper) { return RandomReturn(UniformReturn{lower, upper}); }
    static RandomReturn discrete(std::vector<Atom> atoms) { return RandomReturn(DiscreteReturn{std::move(atoms)}); }
    /// Degenerate distribution concentrated at `value`.
    static RandomReturn point(double value) { return discrete({{value, 1.0}}); }

    const std::variant<UniformReturn, DiscreteReturn>& law() const noexcept { return law_; }
    std::string kind_name() const;

    /// Smallest closed interval containing the support.
    LevelSet support() const noexcept { return support_; }

private:
    std::variant<UniformReturn, DiscreteReturn> law_;
    LevelSet support_{};
};

/// M(R̃) in closed form.
double mean(const RandomReturn& x);

/// D²(R̃) in closed form.
double variance(const RandomReturn& x);

/// M[g(R̃)]: exact weighted sum for discrete laws, Gauss–Legendre on [c,d] for the uniform law.
template <class G>
double expect(const RandomReturn& x, G&& g, const QuadratureRule& rule) {
    double out = 0.0;
    try {
        if (const auto* u = std::get_if<UniformReturn>(&x.law())) {
            out = rule.integrate(g, u->lower, u->upper) / (u->upper - u->lower);
        } else {
            for (const Atom& a : std::get<DiscreteReturn>(x.law()).atoms) out += a.probability * g(a.value);
        }
    } catch (const DomainError& e) {
        throw EvaluationError(std::string("cannot evaluate integrand over the return distribution: ") + e.what());
    }
    if (!std::isfinite(out)) throw EvaluationError("expectation over the return distribution is not finite");
    return out;
}

/// g(M) + ½·g''(M)·D², the second-order Taylor approximation of M[g(R̃)].
double approx_expect(const RandomReturn& x, const SmoothFunction& g);

} // namespace possave
