#include "possave/monte_carlo.hpp"
#include "possave/stochastic.hpp"
#include "possave/utility.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace possave;

namespace {

const QuadratureRule q64(64);

std::vector<RandomReturn> laws() {
    return {RandomReturn::uniform(1.0, 1.2), RandomReturn::uniform(0.5, 2.0),
            RandomReturn::discrete({{1.0, 0.5}, {1.2, 0.5}}), RandomReturn::discrete({{0.9, 0.2}, {1.05, 0.5}, {1.4, 0.3}}),
            RandomReturn::point(1.1)};
}

} // namespace

TEST_CASE("mean") {
    CHECK(mean(RandomReturn::uniform(1.0, 1.2)) == doctest::Approx(1.1).epsilon(1e-15));
    CHECK(mean(RandomReturn::discrete({{1.0, 0.5}, {1.2, 0.5}})) == doctest::Approx(1.1).epsilon(1e-15));
    CHECK(std::abs(mean(RandomReturn::uniform(1.3, 1.3 + 1e-6)) - 1.3) <= 1e-6);
}

TEST_CASE("variance") {
    CHECK(std::abs(variance(RandomReturn::uniform(1.0, 1.2)) - 0.04 / 12.0) <= 1e-15);
    CHECK(variance(RandomReturn::point(1.1)) == 0.0);
    CHECK(std::abs(variance(RandomReturn::discrete({{1.0, 0.5}, {1.2, 0.5}})) - 0.01) <= 1e-15);
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(RandomReturn::uniform(1.2, 1.0), InvalidParameter);
    CHECK_THROWS_AS(RandomReturn::uniform(1.0, 1.0), InvalidParameter);
    CHECK_THROWS_AS(RandomReturn::uniform(-0.1, 1.0), InvalidParameter);
    CHECK_THROWS_AS(RandomReturn::uniform(0.0, 1.0), InvalidParameter);
    CHECK_THROWS_AS(RandomReturn::discrete({}), InvalidParameter);
    CHECK_THROWS_AS(RandomReturn::discrete({{1.0, 0.5}, {1.2, 0.4}}), InvalidParameter);
    CHECK_THROWS_AS(RandomReturn::discrete({{1.0, -0.5}, {1.2, 1.5}}), InvalidParameter);
    CHECK_THROWS_AS(RandomReturn::discrete({{0.0, 0.5}, {1.2, 0.5}}), InvalidParameter);
    CHECK_NOTHROW(RandomReturn::discrete({{1.0, 0.5}, {1.2, 0.5 + 5e-13}}));
}

TEST_CASE("expect examples") {
    for (const auto& x : laws()) {
        CHECK(std::abs(expect(x, [](double v) { return v; }, q64) - mean(x)) <= 1e-12);
        const double m = mean(x);
        CHECK(std::abs(expect(x, [m](double v) { return (v - m) * (v - m); }, q64) - variance(x)) <= 1e-10);
    }
    // Second moment identity: D² + M² on uniform(1.0, 1.2).
    CHECK(std::abs(expect(RandomReturn::uniform(1.0, 1.2), [](double v) { return v * v; }, q64) - (0.04 / 12.0 + 1.21)) <=
          1e-12);
}

TEST_CASE("expect of the marginal-return integrand matches Monte Carlo") {
    const Utility u = Utility::crra(2.0);
    const double s = 0.5;
    auto g = [&](double x) { return x * u.d1(s * x); };
    const auto x = RandomReturn::uniform(1.0, 1.2);
    const auto mc = monte_carlo_expect(x, g, 1'000'000, 2024);
    CHECK(std::abs(expect(x, g, q64) - mc.mean) <= 3.0 * mc.standard_error);

    const auto d = RandomReturn::discrete({{0.9, 0.2}, {1.05, 0.5}, {1.4, 0.3}});
    const auto mcd = monte_carlo_expect(d, g, 1'000'000, 99);
    CHECK(std::abs(expect(d, g, q64) - mcd.mean) <= 3.0 * mcd.standard_error);
}

TEST_CASE("monte carlo oracle is deterministic per seed") {
    const auto x = RandomReturn::uniform(1.0, 1.2);
    auto g = [](double v) { return v * v; };
    CHECK(monte_carlo_expect(x, g, 1000, 5).mean == monte_carlo_expect(x, g, 1000, 5).mean);
    CHECK(monte_carlo_expect(x, g, 1000, 5).mean != monte_carlo_expect(x, g, 1000, 6).mean);
}

TEST_CASE("undefined integrand is an evaluation error") {
    const auto x = RandomReturn::uniform(1.0, 1.2);
    const Utility u = Utility::quadratic(1.0);  // defined on x < 1
    CHECK_THROWS_AS(expect(x, [&](double v) { return u(v); }, q64), EvaluationError);
    CHECK_THROWS_AS(expect(x, [](double v) { return 1.0 / (v - 1.1); }, QuadratureRule(3)), EvaluationError);
}

TEST_CASE("second-order approximation") {
    for (const auto& x : laws()) {
        const SmoothFunction affine = quadratic_polynomial(1.0, 2.0, 0.0);
        CHECK(approx_expect(x, affine) == doctest::Approx(affine(mean(x))));
        oracle::Gen gen(3);
        for (int trial = 0; trial < 20; ++trial) {
            const auto p = quadratic_polynomial(gen.uniform(-3, 3), gen.uniform(-3, 3), gen.uniform(-3, 3));
            CHECK(std::abs(approx_expect(x, p) - expect(x, p, q64)) <= 1e-10);
        }
    }
    CHECK_THROWS_AS(approx_expect(laws()[0], SmoothFunction{[](double v) { return v; }, {}}), CapabilityError);
}

TEST_CASE("approximation of M[x u'(s x)] has the closed form R u'(sR) + D²/2 s [2u''(sR) + R s u'''(sR)]") {
    const Utility u = Utility::crra(3.0);
    const double s = 0.47;
    const auto x = RandomReturn::uniform(1.0, 1.2);
    // g(x) = x u'(s x), g''(x) = s [2u''(s x) + x s u'''(s x)].
    const SmoothFunction g{[&](double v) { return v * u.d1(s * v); },
                           [&](double v) { return s * (2.0 * u.d2(s * v) + v * s * u.d3(s * v)); }};
    const double R = 1.1;
    const double closed = R * u.d1(s * R) + 0.5 * variance(x) * s * (2.0 * u.d2(s * R) + R * s * u.d3(s * R));
    CHECK(std::abs(approx_expect(x, g) - closed) <= 1e-14);
    // And g'' itself against a finite difference of g.
    const double fd2 = (g(R + 1e-4) - 2.0 * g(R) + g(R - 1e-4)) / 1e-8;
    CHECK(oracle::rel_close(g.d2(R), fd2, 1e-5));
}

TEST_CASE("expect is linear in the integrand") {
    oracle::Gen gen(17);
    for (int trial = 0; trial < 50; ++trial) {
        const double a = gen.uniform(-5, 5);
        const double b = gen.uniform(-5, 5);
        for (const auto& x : laws()) {
            auto g = [](double v) { return std::exp(-v); };
            auto h = [](double v) { return std::log(v); };
            const double lhs = expect(x, [&](double v) { return a * g(v) + b * h(v); }, q64);
            const double rhs = a * expect(x, g, q64) + b * expect(x, h, q64);
            CHECK(std::abs(lhs - rhs) < 1e-10);
        }
    }
}
