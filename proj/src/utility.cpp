#include "possave/utility.hpp"

#include <cmath>
#include <sstream>

namespace possave {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

void validate(const Crra& c) {
    if (!std::isfinite(c.gamma) || c.gamma <= 0.0) throw InvalidParameter("CRRA gamma must be > 0");
    if (c.gamma == 1.0) throw InvalidParameter("CRRA gamma = 1 is the log utility");
}
void validate(const LogUtility&) {}
void validate(const Cara& c) {
    if (!std::isfinite(c.a) || c.a <= 0.0) throw InvalidParameter("CARA coefficient must be > 0");
}
void validate(const QuadraticUtility& q) {
    if (!std::isfinite(q.b) || q.b <= 0.0) throw InvalidParameter("quadratic coefficient must be > 0");
}

Interval domain_of(const Crra&) { return {0.0, inf}; }
Interval domain_of(const LogUtility&) { return {0.0, inf}; }
Interval domain_of(const Cara&) { return {-inf, inf}; }
Interval domain_of(const QuadraticUtility& q) { return {-inf, 1.0 / q.b}; }

double derivative(const Crra& c, double x, int order) {
    const double g = c.gamma;
    switch (order) {
    case 0: return std::pow(x, 1.0 - g) / (1.0 - g);
    case 1: return std::pow(x, -g);
    case 2: return -g * std::pow(x, -g - 1.0);
    default: return g * (g + 1.0) * std::pow(x, -g - 2.0);
    }
}

double derivative(const LogUtility&, double x, int order) {
    switch (order) {
    case 0: return std::log(x);
    case 1: return 1.0 / x;
    case 2: return -1.0 / (x * x);
    default: return 2.0 / (x * x * x);
    }
}

double derivative(const Cara& c, double x, int order) {
    const double e = std::exp(-c.a * x);
    switch (order) {
    case 0: return -e / c.a;
    case 1: return e;
    case 2: return -c.a * e;
    default: return c.a * c.a * e;
    }
}

double derivative(const QuadraticUtility& q, double x, int order) {
    switch (order) {
    case 0: return x - 0.5 * q.b * x * x;
    case 1: return 1.0 - q.b * x;
    case 2: return -q.b;
    default: return 0.0;
    }
}

} // namespace

Utility::Utility(UtilityKind kind) : kind_(kind) {
    std::visit([](const auto& k) { validate(k); }, kind_);
}

Utility Utility::crra_or_log(double gamma) {
    if (gamma == 1.0) return log();
    return crra(gamma);
}

std::string Utility::name() const {
    std::ostringstream out;
    out.precision(17);
    if (const auto* c = std::get_if<Crra>(&kind_)) out << "crra(gamma=" << c->gamma << ")";
    else if (std::holds_alternative<LogUtility>(kind_)) out << "log";
    else if (const auto* a = std::get_if<Cara>(&kind_)) out << "cara(a=" << a->a << ")";
    else out << "quadratic(b=" << std::get<QuadraticUtility>(kind_).b << ")";
    return out.str();
}

Interval Utility::domain() const noexcept {
    return std::visit([](const auto& k) { return domain_of(k); }, kind_);
}

double Utility::eval(double x, int order) const {
    if (order < 0 || order > 3) throw InvalidParameter("derivative order must be 0..3");
    if (!in_domain(x)) {
        std::ostringstream msg;
        msg << name() << " is undefined at x=" << x;
        throw DomainError(msg.str());
    }
    return std::visit([x, order](const auto& k) { return derivative(k, x, order); }, kind_);
}

SmoothFunction Utility::as_smooth() const {
    return {[u = *this](double x) { return u.eval(x, 0); }, [u = *this](double x) { return u.eval(x, 2); }};
}

double absolute_prudence(const Utility& u, double x) {
    const double second = u.d2(x);
    if (second == 0.0) {
        std::ostringstream msg;
        msg << "prudence undefined: u''(" << x << ") = 0 for " << u.name();
        throw SingularityError(msg.str());
    }
    return -u.d3(x) / second;
}

double relative_prudence(const Utility& u, double x) { return x * absolute_prudence(u, x); }

} // namespace possave
