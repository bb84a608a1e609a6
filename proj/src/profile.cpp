#include "swanson/profile.hpp"

#include <cmath>

#include "swanson/errors.hpp"
#include "swanson/expr.hpp"
#include "swanson/quadrature.hpp"

namespace swanson {

namespace {

constexpr double k_sqrt1_2 = 0.70710678118654752440;  // 1/sqrt(2)

double checked_g1(const generator& g, double x) {
    double v = g.g1(x);
    if (!(v > 0.0))
        throw singular_generator("generator derivative g' must be positive, got g'(" +
                                 std::to_string(x) + ") = " + std::to_string(v));
    return v;
}

} // namespace

const char* family_name(profile_family f) {
    switch (f) {
        case profile_family::harmonic: return "harmonic";
        case profile_family::solitonic: return "solitonic";
        case profile_family::morse: return "morse";
        case profile_family::canonical_from_g: return "canonical";
        case profile_family::custom: return "custom";
    }
    return "?";
}

double log_cosh(double t) {
    double u = std::fabs(t);
    // cosh t = e^u (1 + e^{-2u}) / 2
    return u + std::log1p(std::exp(-2.0 * u)) - 0.6931471805599453094;
}

profile make_harmonic() {
    profile pr;
    pr.family = profile_family::harmonic;
    pr.a = [](double) { return k_sqrt1_2; };
    pr.a1 = [](double) { return 0.0; };
    pr.a2 = [](double) { return 0.0; };
    pr.b = [](double x) { return x * k_sqrt1_2; };
    pr.b1 = [](double) { return k_sqrt1_2; };
    pr.B = [](double x) { return 0.5 * x * x; };
    generator g;
    g.g = [](double x) { return x / k_sqrt1_2; };
    g.g1 = [](double) { return 1.0 / k_sqrt1_2; };
    g.g2 = [](double) { return 0.0; };
    g.g3 = [](double) { return 0.0; };
    pr.gen = g;
    return pr;
}

profile make_solitonic(double q, double kappa) {
    if (!(q > 0.0)) throw invalid_parameter("solitonic profile requires q > 0");
    profile pr;
    pr.family = profile_family::solitonic;
    pr.q = q;
    pr.kappa = kappa;
    pr.a = [q](double x) { return std::cosh(q * x); };
    pr.a1 = [q](double x) { return q * std::sinh(q * x); };
    pr.a2 = [q](double x) { return q * q * std::cosh(q * x); };
    pr.b = [q, kappa](double x) { return kappa * q * std::sinh(q * x); };
    pr.b1 = [q, kappa](double x) { return kappa * q * q * std::cosh(q * x); };
    pr.B = [q, kappa](double x) { return kappa * log_cosh(q * x); };
    pr.gen = solitonic_generator(q);
    return pr;
}

generator solitonic_generator(double q) {
    if (!(q > 0.0)) throw invalid_parameter("solitonic generator requires q > 0");
    generator g;
    g.g = [q](double x) { return (2.0 / q) * std::atan(std::exp(q * x)); };
    g.g1 = [q](double x) { return 1.0 / std::cosh(q * x); };
    g.g2 = [q](double x) {
        double s = 1.0 / std::cosh(q * x);
        return -q * s * std::tanh(q * x);
    };
    g.g3 = [q](double x) {
        double s = 1.0 / std::cosh(q * x);
        double t = std::tanh(q * x);
        return q * q * s * (t * t - s * s);
    };
    return g;
}

generator exponential_generator(double p) {
    if (p == 0.0) throw invalid_parameter("exponential generator requires p != 0");
    generator g;
    g.g = [p](double x) { return -std::exp(-p * x) / p; };
    g.g1 = [p](double x) { return std::exp(-p * x); };
    g.g2 = [p](double x) { return -p * std::exp(-p * x); };
    g.g3 = [p](double x) { return p * p * std::exp(-p * x); };
    return g;
}

generator generator_from_expression(const std::string& expr_g) {
    expression g = expression::parse(expr_g);
    expression g1 = g.derivative();
    expression g2 = g1.derivative();
    expression g3 = g2.derivative();
    generator out;
    out.g = [g](double x) { return g(x); };
    out.g1 = [g1](double x) { return g1(x); };
    out.g2 = [g2](double x) { return g2(x); };
    out.g3 = [g3](double x) { return g3(x); };
    return out;
}

profile canonical_b_from_g(const generator& g, double mu, profile_family tag) {
    profile pr;
    pr.family = tag;
    pr.mu = mu;
    generator gen = g;

    pr.a = [gen](double x) { return 1.0 / checked_g1(gen, x); };
    pr.a1 = [gen](double x) {
        double d1 = checked_g1(gen, x);
        return -gen.g2(x) / (d1 * d1);
    };
    pr.a2 = [gen](double x) {
        double d1 = checked_g1(gen, x);
        double d2 = gen.g2(x);
        return (2.0 * d2 * d2 - d1 * gen.g3(x)) / (d1 * d1 * d1);
    };
    pr.b = [gen, mu](double x) {
        double d1 = checked_g1(gen, x);
        return -gen.g2(x) / (2.0 * d1 * d1) + 0.5 * gen.g(x) + mu;
    };
    pr.b1 = [gen](double x) {
        double d1 = checked_g1(gen, x);
        double d2 = gen.g2(x);
        return -gen.g3(x) / (2.0 * d1 * d1) + d2 * d2 / (d1 * d1 * d1) + 0.5 * d1;
    };

    // B = int_0^x b/a = (1/2) ln(a/a(0)) + G(x)^2 - G(0)^2 with G = g/2 + mu,
    // obtained by integrating b g' term by term.
    double g1_at_0 = checked_g1(gen, 0.0);
    double g_at_0 = gen.g(0.0);
    pr.B = [gen, mu, g1_at_0, g_at_0](double x) {
        double gx = gen.g(x);
        double gc = 0.5 * gx + mu;
        double g0 = 0.5 * g_at_0 + mu;
        return 0.5 * std::log(g1_at_0 / checked_g1(gen, x)) + gc * gc - g0 * g0;
    };

    double g0 = 0.5 * g_at_0 + mu;
    pr.gauge_offset = g0 * g0;
    pr.gen = gen;
    return pr;
}

profile canonical_b_from_g(const profile& with_generator, double mu) {
    if (!with_generator.gen)
        throw invalid_parameter("canonical construction needs a profile with a generator");
    profile pr = canonical_b_from_g(*with_generator.gen, mu);
    pr.q = with_generator.q;
    pr.p = with_generator.p;
    return pr;
}

profile make_morse(double p, double mu) {
    if (p == 0.0) throw invalid_parameter("morse profile requires p != 0");
    profile pr = canonical_b_from_g(exponential_generator(p), mu, profile_family::morse);
    pr.p = p;
    pr.mu = mu;
    return pr;
}

profile make_custom(const std::string& expr_a, const std::string& expr_b) {
    expression ea = expression::parse(expr_a);
    expression ea1 = ea.derivative();
    expression ea2 = ea1.derivative();
    expression eb = expression::parse(expr_b);
    expression eb1 = eb.derivative();

    profile pr;
    pr.family = profile_family::custom;
    pr.a = [ea](double x) { return ea(x); };
    pr.a1 = [ea1](double x) { return ea1(x); };
    pr.a2 = [ea2](double x) { return ea2(x); };
    pr.b = [eb](double x) { return eb(x); };
    pr.b1 = [eb1](double x) { return eb1(x); };
    pr.B = [ea, eb](double x) {
        return integrate([&](double t) { return eb(t) / ea(t); }, 0.0, x, 1e-12, 1e-13);
    };
    return pr;
}

double commutator_field(const profile& pr, double x) {
    double a = pr.a(x);
    return 2.0 * a * pr.b1(x) - a * pr.a2(x);
}

} // namespace swanson
