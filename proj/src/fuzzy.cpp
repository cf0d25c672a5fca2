#include "possave/fuzzy.hpp"

#include <algorithm>
#include <sstream>

namespace possave {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw InvalidParameter(std::string(what) + " must be finite");
}

void validate(const CrispPoint& p) { require_finite(p.value, "crisp point"); }

void validate(const CrispInterval& c) {
    require_finite(c.lower, "interval lower bound");
    require_finite(c.upper, "interval upper bound");
    if (!(c.lower < c.upper)) throw InvalidParameter("crisp interval requires lower < upper");
}

void validate(const Triangular& t) {
    require_finite(t.peak, "triangular peak");
    require_finite(t.left_spread, "left spread");
    require_finite(t.right_spread, "right spread");
    if (t.left_spread < 0.0 || t.right_spread < 0.0) throw InvalidParameter("triangular spreads must be >= 0");
}

void validate(const Trapezoidal& t) {
    require_finite(t.core_lower, "core lower bound");
    require_finite(t.core_upper, "core upper bound");
    require_finite(t.left_spread, "left spread");
    require_finite(t.right_spread, "right spread");
    if (t.core_lower > t.core_upper) throw InvalidParameter("trapezoidal core requires lower <= upper");
    if (t.left_spread < 0.0 || t.right_spread < 0.0) throw InvalidParameter("trapezoidal spreads must be >= 0");
}

void validate(const Sampled& s) {
    const auto& rows = s.levels;
    if (rows.size() < 2) throw InvalidParameter("sampled fuzzy number needs at least two rows");
    if (rows.front().gamma != 0.0 || rows.back().gamma != 1.0)
        throw InvalidParameter("sampled fuzzy number must start at gamma=0 and end at gamma=1");
    constexpr double tol = FuzzyNumber::sampled_tolerance;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        require_finite(r.gamma, "sampled gamma");
        require_finite(r.lower, "sampled lower endpoint");
        require_finite(r.upper, "sampled upper endpoint");
        if (r.lower > r.upper + tol) {
            std::ostringstream msg;
            msg << "sampled level set at gamma=" << r.gamma << " has lower > upper";
            throw InvalidParameter(msg.str());
        }
        if (i == 0) continue;
        const auto& prev = rows[i - 1];
        if (!(r.gamma > prev.gamma)) throw InvalidParameter("sampled gammas must be strictly increasing");
        if (r.lower < prev.lower - tol) throw InvalidParameter("sampled lower endpoint must be non-decreasing in gamma");
        if (r.upper > prev.upper + tol) throw InvalidParameter("sampled upper endpoint must be non-increasing in gamma");
    }
}

LevelSet evaluate(const CrispPoint& p, double) { return {p.value, p.value}; }
LevelSet evaluate(const CrispInterval& c, double) { return {c.lower, c.upper}; }

LevelSet evaluate(const Triangular& t, double gamma) {
    const double slack = 1.0 - gamma;
    return {t.peak - slack * t.left_spread, t.peak + slack * t.right_spread};
}

LevelSet evaluate(const Trapezoidal& t, double gamma) {
    const double slack = 1.0 - gamma;
    return {t.core_lower - slack * t.left_spread, t.core_upper + slack * t.right_spread};
}

LevelSet evaluate(const Sampled& s, double gamma) {
    const auto& rows = s.levels;
    auto hi = std::upper_bound(rows.begin(), rows.end(), gamma,
                               [](double g, const SampledLevel& r) { return g < r.gamma; });
    if (hi == rows.end()) return {rows.back().lower, rows.back().upper};
    auto lo = std::prev(hi);
    const double w = (gamma - lo->gamma) / (hi->gamma - lo->gamma);
    return {lo->lower + w * (hi->lower - lo->lower), lo->upper + w * (hi->upper - lo->upper)};
}

} // namespace

WeightingFunction WeightingFunction::power(double exponent) {
    if (!std::isfinite(exponent) || exponent < 0.0)
        throw InvalidParameter("weighting exponent must be finite and >= 0");
    return WeightingFunction(Kind::power, exponent);
}

double WeightingFunction::operator()(double t) const {
    if (kind_ == Kind::uniform) return 1.0;
    if (exponent_ == 0.0) return 1.0;
    if (exponent_ == 1.0) return 2.0 * t;
    return (exponent_ + 1.0) * std::pow(t, exponent_);
}

bool WeightingFunction::smooth_at_zero() const noexcept {
    return kind_ == Kind::uniform || exponent_ == std::floor(exponent_);
}

FuzzyNumber::FuzzyNumber(FuzzyShape shape) : shape_(std::move(shape)) {
    std::visit([](const auto& s) { validate(s); }, shape_);
    if (const auto* s = std::get_if<Sampled>(&shape_)) {
        for (const auto& r : s->levels) breakpoints_.push_back(r.gamma);
    } else {
        breakpoints_ = {0.0, 1.0};
    }
}

std::string FuzzyNumber::shape_name() const {
    return std::visit(overloaded{[](const CrispPoint&) { return "crisp_point"; },
                                 [](const CrispInterval&) { return "crisp_interval"; },
                                 [](const Triangular&) { return "triangular"; },
                                 [](const Trapezoidal&) { return "trapezoidal"; },
                                 [](const Sampled&) { return "sampled"; }},
                      shape_);
}

LevelSet FuzzyNumber::level_set(double gamma) const {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        std::ostringstream msg;
        msg << "level " << gamma << " outside [0,1]";
        throw DomainError(msg.str());
    }
    LevelSet ls = std::visit([gamma](const auto& s) { return evaluate(s, gamma); }, shape_);
    if (shift_ != 0.0) {
        ls.lower += shift_;
        ls.upper += shift_;
    }
    return ls;
}

FuzzyNumber FuzzyNumber::shifted(double offset) const {
    if (!std::isfinite(offset)) throw InvalidParameter("shift must be finite");
    FuzzyNumber out = *this;
    out.shift_ += offset;
    return out;
}

namespace detail {

void throw_evaluation_error(const FuzzyNumber& a, const std::string& cause) {
    const LevelSet s = a.support();
    std::ostringstream msg;
    msg << "cannot evaluate integrand over support [" << s.lower << ", " << s.upper << "] of "
        << a.shape_name() << " fuzzy number: " << cause;
    throw EvaluationError(msg.str());
}

} // namespace detail

double possibilistic_mean(const WeightingFunction& f, const FuzzyNumber& a, const QuadratureRule& rule) {
    return possibilistic_expected_utility(f, a, [](double x) { return x; }, rule);
}

double possibilistic_variance(const WeightingFunction& f, const FuzzyNumber& a, const QuadratureRule& rule) {
    const double mean = possibilistic_mean(f, a, rule);
    return possibilistic_expected_utility(
        f, a,
        [mean](double x) {
            const double d = x - mean;
            return d * d;
        },
        rule);
}

double approx_expected_utility(const WeightingFunction& f, const FuzzyNumber& a, const SmoothFunction& u,
                               const QuadratureRule& rule) {
    if (!u.has_second_derivative()) throw CapabilityError("approximation needs the second derivative of u");
    const double mean = possibilistic_mean(f, a, rule);
    const double var = possibilistic_variance(f, a, rule);
    return u(mean) + 0.5 * u.d2(mean) * var;
}

} // namespace possave
