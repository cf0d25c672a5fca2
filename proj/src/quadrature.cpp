#include "possave/quadrature.hpp"

#include "possave/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace possave {

namespace {

struct LegendreEval {
    double value;
    double derivative;
};

// Three-term recurrence for P_n and P_n' on [-1,1].
LegendreEval legendre(std::size_t n, double x) {
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
    }
    const double dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

} // namespace

QuadratureRule::QuadratureRule(std::size_t nodes) : nodes_(nodes), weights_(nodes) {
    if (nodes < 2) throw InvalidParameter("quadrature needs at least 2 nodes, got " + std::to_string(nodes));

    const std::size_t n = nodes;
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        LegendreEval p{};
        for (int iter = 0; iter < 100; ++iter) {
            p = legendre(n, x);
            const double dx = p.value / p.derivative;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        p = legendre(n, x);
        const double w = 2.0 / ((1.0 - x * x) * p.derivative * p.derivative);

        // x is the i-th largest root; map [-1,1] -> [0,1] and halve the weight.
        nodes_[i] = 0.5 * (1.0 - x);
        nodes_[n - 1 - i] = 0.5 * (1.0 + x);
        weights_[i] = 0.5 * w;
        weights_[n - 1 - i] = 0.5 * w;
    }
}

} // namespace possave
