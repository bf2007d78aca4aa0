#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hq/errors.hpp"
#include "hq/quadrature.hpp"
#include "oracles.hpp"

using namespace hq;

TEST_CASE("gauss-legendre nodes and weights") {
    const NodeSet two = gauss_legendre(2);
    CHECK(two.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(two.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(two.weights[0] == doctest::Approx(1.0));
    for (int n : {1, 5, 16, 64, 257}) {
        const NodeSet r = gauss_legendre(n);
        double w = 0.0;
        for (double x : r.weights) w += x;
        CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
        for (int i = 1; i < n; ++i) CHECK(r.nodes[i] > r.nodes[i - 1]);
    }
}

TEST_CASE("n-point gauss-legendre is exact to degree 2n-1") {
    const NodeSet r = fixed_rule(QuadratureRule::gauss_legendre, 0.0, 2.0, 6);
    for (int d = 0; d <= 11; ++d) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], d);
        CHECK(s == doctest::Approx(std::pow(2.0, d + 1) / (d + 1)).epsilon(1e-13));
    }
}

TEST_CASE("trapezoid rule includes endpoints; one node is the midpoint") {
    const NodeSet t = fixed_rule(QuadratureRule::trapezoid, 1.0, 3.0, 5);
    CHECK(t.nodes.front() == 1.0);
    CHECK(t.nodes.back() == 3.0);
    CHECK(t.weights.front() == doctest::Approx(0.25));
    for (auto rule : {QuadratureRule::trapezoid, QuadratureRule::gauss_legendre}) {
        const NodeSet m = fixed_rule(rule, 1.0, 3.0, 1);
        REQUIRE(m.nodes.size() == 1);
        CHECK(m.nodes[0] == 2.0);
        CHECK(m.weights[0] == 2.0);
    }
}

TEST_CASE("adaptive integration against closed forms and Simpson") {
    auto f = [](double t) { return cplx{std::exp(t), std::sin(3.0 * t)}; };
    for (auto rule : {QuadratureRule::gauss_legendre, QuadratureRule::trapezoid}) {
        const cplx v = integral(f, 0.0, 2.0, rule, 1e-12);
        CHECK(v.real() == doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-10));
        CHECK(v.imag() == doctest::Approx((1.0 - std::cos(6.0)) / 3.0).epsilon(1e-10));
    }
    auto g = [](double t) { return cplx{std::pow(std::sin(std::numbers::pi * t / 100.0), 6), 0.0}; };
    CHECK(integral(g, 0.0, 100.0).real() == doctest::Approx(oracle::simpson(g, 0.0, 100.0, 4000).real()).epsilon(1e-12));
}

TEST_CASE("integration edge cases") {
    auto f = [](double t) { return cplx{t * t, 0.0}; };
    CHECK(integral(f, 2.0, 2.0) == cplx{0.0, 0.0});
    CHECK(integral(f, 1.0, 0.0).real() == doctest::Approx(-1.0 / 3.0));
    auto step = [](double t) { return cplx{t < 1.0 / 3.0 ? 0.0 : 1.0, 0.0}; };
    CHECK_THROWS_AS(integrate(step, 0.0, 1.0, QuadratureRule::gauss_legendre, 1e-15), ConvergenceFailure);
}
