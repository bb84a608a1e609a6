#include <cmath>

#include <doctest.h>

#include "oracles.hpp"
#include "swanson/errors.hpp"
#include "swanson/profile.hpp"

using namespace swanson;

namespace {

// Coefficient functions and their stored derivatives must agree with
// numerical differentiation of the functions themselves.
void check_derivative_consistency(const profile& pr, double lo, double hi) {
    for (double x : oracle::linspace(lo, hi, 11)) {
        double scale = std::max(1.0, std::abs(pr.a1(x)));
        CHECK(std::abs(pr.a1(x) - oracle::d1(pr.a, x)) <= 1e-8 * scale);
        scale = std::max(1.0, std::abs(pr.a2(x)));
        CHECK(std::abs(pr.a2(x) - oracle::d1(pr.a1, x)) <= 1e-8 * scale);
        scale = std::max(1.0, std::abs(pr.b1(x)));
        CHECK(std::abs(pr.b1(x) - oracle::d1(pr.b, x)) <= 1e-8 * scale);
    }
}

// B must match the quadrature of b / a from zero.
void check_b_integral(const profile& pr, double lo, double hi) {
    for (double x : {lo, 0.4 * lo, 0.7 * hi, hi}) {
        double ref = oracle::romberg([&](double t) { return pr.b(t) / pr.a(t); },
                                     0.0, x);
        if (x < 0.0) ref = -oracle::romberg([&](double t) { return pr.b(t) / pr.a(t); },
                                            x, 0.0);
        CHECK(pr.B(x) == doctest::Approx(ref).epsilon(1e-9));
    }
}

}  // namespace

TEST_SUITE("profiles") {

TEST_CASE("harmonic profile is the constant-slope pair") {
    profile pr = make_harmonic();
    const double r = 1.0 / std::sqrt(2.0);
    for (double x : {-2.0, 0.0, 0.7, 3.1}) {
        CHECK(pr.a(x) == doctest::Approx(r).epsilon(1e-15));
        CHECK(pr.a1(x) == 0.0);
        CHECK(pr.a2(x) == 0.0);
        CHECK(pr.b(x) == doctest::Approx(r * x).epsilon(1e-15));
        CHECK(pr.b1(x) == doctest::Approx(r).epsilon(1e-15));
        CHECK(pr.B(x) == doctest::Approx(0.5 * x * x).epsilon(1e-15));
    }
    CHECK(pr.gauge_offset == 0.0);
    CHECK(pr.family == profile_family::harmonic);
    check_b_integral(pr, -2.0, 2.0);
}

TEST_CASE("solitonic profile matches cosh / sinh forms") {
    const double q = 1.3, kappa = 1.7;
    profile pr = make_solitonic(q, kappa);
    for (double x : oracle::linspace(-2.0, 2.0, 9)) {
        CHECK(pr.a(x) == doctest::Approx(std::cosh(q * x)).epsilon(1e-15));
        CHECK(pr.a1(x) == doctest::Approx(q * std::sinh(q * x)).epsilon(1e-15));
        CHECK(pr.a2(x) == doctest::Approx(q * q * std::cosh(q * x)).epsilon(1e-15));
        CHECK(pr.b(x) == doctest::Approx(kappa * q * std::sinh(q * x)).epsilon(1e-15));
        CHECK(pr.b1(x) == doctest::Approx(kappa * q * q * std::cosh(q * x)).epsilon(1e-15));
        CHECK(pr.B(x) == doctest::Approx(kappa * log_cosh(q * x)).epsilon(1e-14));
    }
    CHECK(pr.q == q);
    CHECK(pr.kappa == kappa);
    CHECK(pr.gauge_offset == 0.0);
    check_b_integral(pr, -2.0, 2.0);

    // mass profile is sech^2(qx) / 1
    profile unit = make_solitonic(1.0, 2.0);
    double sech1 = 1.0 / std::cosh(1.0);
    CHECK(unit.mass(1.0) == doctest::Approx(sech1 * sech1).epsilon(1e-14));
}

TEST_CASE("morse profile derives from the exponential generator") {
    const double p = 0.8, mu = 0.25;
    profile pr = make_morse(p, mu);
    for (double x : oracle::linspace(-1.5, 1.5, 9)) {
        CHECK(pr.a(x) == doctest::Approx(std::exp(p * x)).epsilon(1e-14));
        double b_ref = 0.5 * p * std::exp(p * x) - std::exp(-p * x) / (2.0 * p) + mu;
        CHECK(pr.b(x) == doctest::Approx(b_ref).epsilon(1e-13));
    }
    CHECK(pr.p == p);
    CHECK(pr.mu == mu);
    double g0 = -1.0 / (2.0 * p) + mu;
    CHECK(pr.gauge_offset == doctest::Approx(g0 * g0).epsilon(1e-14));
    check_derivative_consistency(pr, -1.5, 1.5);
    check_b_integral(pr, -1.5, 1.5);

    // negative stiffness flips the slope but stays valid
    profile neg = make_morse(-0.6, 0.1);
    CHECK(neg.a(1.0) == doctest::Approx(std::exp(-0.6)).epsilon(1e-14));
}

TEST_CASE("generators expose consistent derivative chains") {
    generator s = solitonic_generator(0.9);
    generator e = exponential_generator(-0.7);
    for (const generator& gen : {s, e}) {
        for (double x : oracle::linspace(-1.2, 1.2, 7)) {
            CHECK(gen.g1(x) == doctest::Approx(oracle::d1(gen.g, x)).epsilon(1e-9));
            CHECK(gen.g2(x) == doctest::Approx(oracle::d1(gen.g1, x)).epsilon(1e-9));
            CHECK(gen.g3(x) == doctest::Approx(oracle::d1(gen.g2, x)).epsilon(1e-9));
        }
    }
    // arc-exponential generator has g' = sech(qx), so a = 1/g' = cosh(qx)
    for (double x : oracle::linspace(-2.0, 2.0, 9))
        CHECK(s.g1(x) == doctest::Approx(1.0 / std::cosh(0.9 * x)).epsilon(1e-14));
    // exponential generator has g' = exp(-px)
    for (double x : oracle::linspace(-2.0, 2.0, 9))
        CHECK(e.g1(x) == doctest::Approx(std::exp(0.7 * x)).epsilon(1e-14));
}

TEST_CASE("canonical construction from a linear generator") {
    // g = x gives a = 1 and b = x/2 + mu: the constant-commutator pair.
    profile pr = canonical_b_from_g(generator_from_expression("x"), 0.3);
    for (double x : oracle::linspace(-2.0, 2.0, 9)) {
        CHECK(pr.a(x) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(pr.b(x) == doctest::Approx(0.5 * x + 0.3).epsilon(1e-15));
        CHECK(commutator_field(pr, x) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("canonical construction normalizes the commutator for any generator") {
    profile from_q = canonical_b_from_g(solitonic_generator(1.1), 0.2);
    profile from_p = canonical_b_from_g(exponential_generator(0.9), -0.1);
    profile from_expr = canonical_b_from_g(generator_from_expression("x + 0.1*x^3"), 0.0);
    for (const profile& pr : {from_q, from_p, from_expr})
        for (double x : oracle::linspace(-1.5, 1.5, 11))
            CHECK(std::abs(commutator_field(pr, x) - 1.0) <= 1e-9);
}

TEST_CASE("solitonic commutator field grows with the squared profile") {
    const double q = 1.2, kappa = 2.0;
    profile pr = make_solitonic(q, kappa);
    for (double x : oracle::linspace(-3.0, 3.0, 13)) {
        double c = std::cosh(q * x);
        double ref = (2.0 * kappa - 1.0) * q * q * c * c;
        CHECK(std::abs(commutator_field(pr, x) - ref) <= 1e-10 * std::max(1.0, ref));
    }
}

TEST_CASE("custom profiles evaluate their expressions") {
    profile pr = make_custom("1 + x^2", "sinh(x) + 0.5");
    for (double x : oracle::linspace(-2.0, 2.0, 9)) {
        CHECK(pr.a(x) == doctest::Approx(1.0 + x * x).epsilon(1e-15));
        CHECK(pr.b(x) == doctest::Approx(std::sinh(x) + 0.5).epsilon(1e-15));
    }
    check_derivative_consistency(pr, -2.0, 2.0);
    check_b_integral(pr, -2.0, 2.0);
    CHECK(pr.family == profile_family::custom);
}

TEST_CASE("log_cosh stays finite for large arguments") {
    CHECK(log_cosh(0.0) == 0.0);
    CHECK(log_cosh(1.0) == doctest::Approx(std::log(std::cosh(1.0))).epsilon(1e-15));
    CHECK(log_cosh(-1.0) == doctest::Approx(log_cosh(1.0)).epsilon(1e-15));
    // direct evaluation would overflow cosh here
    CHECK(log_cosh(800.0) == doctest::Approx(800.0 - std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(make_solitonic(0.0, 2.0), invalid_parameter);
    CHECK_THROWS_AS(make_solitonic(-1.0, 2.0), invalid_parameter);
    CHECK_THROWS_AS(make_morse(0.0, 0.1), invalid_parameter);
    CHECK_THROWS_AS(exponential_generator(0.0), invalid_parameter);
    CHECK_THROWS_AS(solitonic_generator(-0.5), invalid_parameter);
    CHECK_THROWS_AS(canonical_b_from_g(make_custom("1", "x"), 0.0), invalid_parameter);
}

}  // TEST_SUITE
