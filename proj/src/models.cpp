#include "possave/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace possave {

std::string to_string(ModelKind kind) {
    switch (kind) {
    case ModelKind::certain: return "certain";
    case ModelKind::probabilistic: return "probabilistic";
    default: return "possibilistic";
    }
}

namespace {

LevelSet support_of(const Risk& risk) {
    if (const auto* c = std::get_if<CertainRisk>(&risk)) return {c->R, c->R};
    if (const auto* p = std::get_if<ProbabilisticRisk>(&risk)) return p->X.support();
    return std::get<PossibilisticRisk>(risk).A.support();
}

void require_feasible(const SavingProblem& p, double s) {
    if (!p.feasible_interval().contains(s)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "saving s=" << s << " outside feasible interval (" << p.feasible_interval().lower << ", "
            << p.feasible_interval().upper << ")";
        throw DomainError(msg.str());
    }
}

} // namespace

SavingProblem::SavingProblem(double y0, Utility u, Risk risk, QuadratureRule rule)
    : y0_(y0), u_(std::move(u)), risk_(std::move(risk)), rule_(std::move(rule)) {
    if (!std::isfinite(y0_) || y0_ <= 0.0) throw InvalidParameter("first-period income y0 must be > 0");
    if (const auto* c = std::get_if<CertainRisk>(&risk_); c && !(std::isfinite(c->R) && c->R > 0.0))
        throw InvalidParameter("certain return R must be > 0");
    support_ = support_of(risk_);
    if (!(support_.lower > 0.0)) throw InvalidParameter("return support must lie in (0, inf)");

    // 0 < s < y0, y0 - s in dom(u), s*x in dom(u) for x in [xmin, xmax]; x > 0.
    const Interval dom = u_.domain();
    double lo = std::max(0.0, y0_ - dom.upper);
    double hi = std::min(y0_, y0_ - dom.lower);
    if (dom.lower > 0.0) lo = std::max(lo, dom.lower / support_.lower);
    if (std::isfinite(dom.upper)) hi = std::min(hi, dom.upper / support_.upper);
    if (!(lo < hi)) {
        std::ostringstream msg;
        msg << "no feasible saving level for " << u_.name() << " with y0=" << y0_;
        throw InvalidParameter(msg.str());
    }
    feasible_ = {lo, hi};
}

Interval SavingProblem::solver_bracket() const noexcept {
    const double margin = domain_margin * feasible_.width();
    return {feasible_.lower + margin, feasible_.upper - margin};
}

double total_utility(const SavingProblem& p, double s) {
    require_feasible(p, s);
    const Utility& u = p.utility();
    return u(p.y0() - s) + p.expect_return([&](double x) { return u(s * x); });
}

double foc(const SavingProblem& p, double s) {
    require_feasible(p, s);
    const Utility& u = p.utility();
    return -u.d1(p.y0() - s) + p.expect_return([&](double x) { return x * u.d1(s * x); });
}

double foc_derivative(const SavingProblem& p, double s) {
    require_feasible(p, s);
    const Utility& u = p.utility();
    return u.d2(p.y0() - s) + p.expect_return([&](double x) { return x * x * u.d2(s * x); });
}

} // namespace possave
