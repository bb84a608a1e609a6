#include <cmath>

#include <doctest.h>

#include "oracles.hpp"
#include "swanson/errors.hpp"
#include "swanson/expr.hpp"

using swanson::expression;

TEST_SUITE("expr") {

TEST_CASE("evaluation matches hand-computed values") {
    auto e = expression::parse("1 + x^2");
    CHECK(e(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(e(2.0) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(e(-3.0) == doctest::Approx(10.0).epsilon(1e-15));

    auto f = expression::parse("2*x - 4/x");
    CHECK(f(2.0) == doctest::Approx(2.0).epsilon(1e-15));

    auto g = expression::parse("cosh(x) * tanh(x)");
    CHECK(g(1.3) == doctest::Approx(std::sinh(1.3)).epsilon(1e-15));

    auto h = expression::parse("exp(-x^2/2)");
    CHECK(h(1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));

    auto k = expression::parse("sqrt(x^2 + 1) - ln(exp(x))");
    CHECK(k(0.75) == doctest::Approx(std::sqrt(1.5625) - 0.75).epsilon(1e-14));
}

TEST_CASE("power is right-associative and unary minus binds") {
    auto e = expression::parse("2^3^2");
    CHECK(e(0.0) == doctest::Approx(512.0).epsilon(1e-15));
    auto f = expression::parse("-x^2");
    CHECK(f(3.0) == doctest::Approx(-9.0).epsilon(1e-15));
}

TEST_CASE("symbolic derivative agrees with finite differences") {
    const char* exprs[] = {"1 + x^2",         "sinh(x) + 0.5",   "exp(-x^2/2)",
                           "tanh(2*x)",       "cosh(x)^3",       "x / (1 + x^2)",
                           "sqrt(1 + x^2)",   "ln(2 + cosh(x))", "x^3 - 2*x + 7"};
    for (const char* s : exprs) {
        auto e = expression::parse(s);
        auto de = e.derivative();
        for (double x : oracle::linspace(-1.8, 1.8, 13)) {
            double ref = oracle::d1([&](double t) { return e(t); }, x, 1e-3);
            CHECK(de(x) == doctest::Approx(ref).epsilon(1e-9));
        }
    }
}

TEST_CASE("second derivative via repeated application") {
    auto e = expression::parse("exp(-x^2/2)");
    auto d2e = e.derivative().derivative();
    for (double x : oracle::linspace(-2.0, 2.0, 9)) {
        double ref = oracle::d2([&](double t) { return e(t); }, x, 1e-3);
        CHECK(d2e(x) == doctest::Approx(ref).epsilon(1e-7));
    }
}

TEST_CASE("parse errors are reported") {
    CHECK_THROWS_AS(expression::parse("sin(x)"), swanson::parse_error);
    CHECK_THROWS_AS(expression::parse("1 + (x"), swanson::parse_error);
    CHECK_THROWS_AS(expression::parse("x +"), swanson::parse_error);
    CHECK_THROWS_AS(expression::parse(""), swanson::parse_error);
    CHECK_THROWS_AS(expression::parse("y + 1"), swanson::parse_error);
    CHECK_THROWS_AS(expression::parse("1 2"), swanson::parse_error);
}

TEST_CASE("evaluation is deterministic") {
    auto e = expression::parse("cosh(x) * exp(-x^2/2) + x^3");
    double a = e(1.234567);
    double b = e(1.234567);
    CHECK(a == b);
}

}  // TEST_SUITE
