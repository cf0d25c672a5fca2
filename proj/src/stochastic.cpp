#include "possave/stochastic.hpp"

#include <algorithm>
#include <sstream>

namespace possave {

RandomReturn::RandomReturn(std::variant<UniformReturn, DiscreteReturn> law) : law_(std::move(law)) {
    if (const auto* u = std::get_if<UniformReturn>(&law_)) {
        if (!std::isfinite(u->lower) || !std::isfinite(u->upper) || !(u->lower < u->upper))
            throw InvalidParameter("uniform return requires finite lower < upper");
        support_ = {u->lower, u->upper};
    } else {
        const auto& atoms = std::get<DiscreteReturn>(law_).atoms;
        if (atoms.empty()) throw InvalidParameter("discrete return needs at least one atom");
        double total = 0.0;
        support_ = {atoms.front().value, atoms.front().value};
        for (const Atom& a : atoms) {
            if (!std::isfinite(a.value)) throw InvalidParameter("atom values must be finite");
            if (!std::isfinite(a.probability) || a.probability < 0.0)
                throw InvalidParameter("atom probabilities must be >= 0");
            total += a.probability;
            support_.lower = std::min(support_.lower, a.value);
            support_.upper = std::max(support_.upper, a.value);
        }
        if (std::abs(total - 1.0) > probability_tolerance) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "atom probabilities sum to " << total << ", expected 1";
            throw InvalidParameter(msg.str());
        }
    }
    if (!(support_.lower > 0.0)) throw InvalidParameter("return support must lie in (0, inf)");
}

std::string RandomReturn::kind_name() const {
    return std::holds_alternative<UniformReturn>(law_) ? "uniform" : "discrete";
}

double mean(const RandomReturn& x) {
    if (const auto* u = std::get_if<UniformReturn>(&x.law())) return 0.5 * (u->lower + u->upper);
    double m = 0.0;
    for (const Atom& a : std::get<DiscreteReturn>(x.law()).atoms) m += a.probability * a.value;
    return m;
}

double variance(const RandomReturn& x) {
    if (const auto* u = std::get_if<UniformReturn>(&x.law())) {
        const double w = u->upper - u->lower;
        return w * w / 12.0;
    }
    const double m = mean(x);
    double v = 0.0;
    for (const Atom& a : std::get<DiscreteReturn>(x.law()).atoms) {
        const double d = a.value - m;
        v += a.probability * d * d;
    }
    return v;
}

double approx_expect(const RandomReturn& x, const SmoothFunction& g) {
    if (!g.has_second_derivative()) throw CapabilityError("approximation needs the second derivative of g");
    const double m = mean(x);
    return g(m) + 0.5 * g.d2(m) * variance(x);
}

} // namespace possave
