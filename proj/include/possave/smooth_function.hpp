#pragma once

#include "possave/errors.hpp"

#include <functional>
#include <utility>

namespace possave {

/// A real function together with an optional closed-form second derivative,
/// as needed by the second-order approximations of expected utility.
struct SmoothFunction {
    std::function<double(double)> value;
    std::function<double(double)> second_derivative;

    double operator()(double x) const { return value(x); }

    bool has_second_derivative() const noexcept { return static_cast<bool>(second_derivative); }

    double d2(double x) const {
        if (!second_derivative) throw CapabilityError("second derivative not available for this function");
        return second_derivative(x);
    }
};

/// c₀ + c₁x + c₂x²
inline SmoothFunction quadratic_polynomial(double c0, double c1, double c2) {
    return {[=](double x) { return c0 + (c1 + c2 * x) * x; }, [=](double) { return 2.0 * c2; }};
}

} // namespace possave
