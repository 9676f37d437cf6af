#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracfields/quadrature.hpp"

using namespace fracfields;

TEST_CASE("polynomials and smooth integrands") {
    auto r = integrate([](double x) { return x * x; }, 0.0, 3.0);
    CHECK(r.value == doctest::Approx(9.0).epsilon(1e-13));
    CHECK(r.converged);

    r = integrate([](double x) { return std::sin(x); }, 0.0, 3.14159265358979323846);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("integrable endpoint singularity") {
    // int_0^1 x^{-1/2} dx = 2
    auto r = integrate([](double x) { return x > 0.0 ? 1.0 / std::sqrt(x) : 0.0; }, 0.0,
                       1.0, 1e-9, 1e-9, 4000, {1e-8, 1e-4, 1e-2});
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("semi-infinite map") {
    // int_0^inf e^{-x} dx = 1
    auto r = integrate_semi_infinite([](double x) { return std::exp(-x); });
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
    // int_0^inf x e^{-x^2/2} dx = 1
    r = integrate_semi_infinite([](double x) { return x * std::exp(-0.5 * x * x); });
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
    // heavier tail: int_0^inf dx/(1+x)^2 = 1
    r = integrate_semi_infinite([](double x) { return 1.0 / ((1.0 + x) * (1.0 + x)); });
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("budget exhaustion throws with the partial estimate") {
    bool threw = false;
    try {
        integrate([](double x) { return x > 0.0 ? std::pow(x, -0.5) : 0.0; }, 0.0, 1.0,
                  1e-15, 1e-15, 8);
    } catch (const QuadratureError& e) {
        threw = true;
        CHECK(e.partial().value == doctest::Approx(2.0).epsilon(0.2));
        CHECK(!e.partial().converged);
    }
    CHECK(threw);
}

TEST_CASE("trapezoid oracle helper") {
    double v = trapezoid([](double x) { return std::exp(-x); }, 0.0, 10.0, 10000);
    CHECK(v == doctest::Approx(1.0 - std::exp(-10.0)).epsilon(1e-7));
}
