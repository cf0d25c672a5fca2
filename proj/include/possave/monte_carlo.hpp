#pragma once

#include "possave/stochastic.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace possave {

struct MonteCarloEstimate {
    double mean;
    double standard_error;
    std::size_t samples;
};

/// Seeded sample mean of g(R̃). Verification only; the solvers never sample.
template <class G>
MonteCarloEstimate monte_carlo_expect(const RandomReturn& x, G&& g, std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    // 53-bit mantissa draw, identical on every standard library.
    auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    const auto* uniform = std::get_if<UniformReturn>(&x.law());
    const auto* discrete = std::get_if<DiscreteReturn>(&x.law());
    auto draw = [&]() -> double {
        const double t = unit();
        if (uniform) return uniform->lower + t * (uniform->upper - uniform->lower);
        double acc = 0.0;
        for (const Atom& a : discrete->atoms) {
            acc += a.probability;
            if (t < acc) return a.value;
        }
        return discrete->atoms.back().value;
    };

    // Welford running moments.
    double m = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 1; i <= samples; ++i) {
        const double v = g(draw());
        const double delta = v - m;
        m += delta / static_cast<double>(i);
        m2 += delta * (v - m);
    }
    const double var = samples > 1 ? m2 / static_cast<double>(samples - 1) : 0.0;
    return {m, std::sqrt(var / static_cast<double>(samples)), samples};
}

} // namespace possave
