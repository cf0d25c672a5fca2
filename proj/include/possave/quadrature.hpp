#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace possave {

/// Gauss–Legendre rule mapped to [0,1]. Weights sum to one and the rule is
/// exact for polynomials of degree ≤ 2N−1.
class QuadratureRule {
public:
    static constexpr std::size_t default_nodes = 64;

    explicit QuadratureRule(std::size_t nodes = default_nodes);

    std::size_t size() const noexcept { return nodes_.size(); }
    std::span<const double> nodes() const noexcept { return nodes_; }
    std::span<const double> weights() const noexcept { return weights_; }

    /// ∫₀¹ g(t) dt.
    template <class G>
    double integrate(G&& g) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i) acc += weights_[i] * g(nodes_[i]);
        return acc;
    }

    /// ∫ₐᵇ g(x) dx by affine change of variable.
    template <class G>
    double integrate(G&& g, double a, double b) const {
        const double width = b - a;
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i) acc += weights_[i] * g(a + width * nodes_[i]);
        return width * acc;
    }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

} // namespace possave
