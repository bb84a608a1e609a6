#pragma once

#include <functional>
#include <optional>
#include <string>

namespace swanson {

enum class profile_family { harmonic, solitonic, morse, canonical_from_g, custom };

const char* family_name(profile_family f);

// Generator g with derivatives up to third order; the induced mass
// background is a = 1/g'.
struct generator {
    std::function<double(double)> g, g1, g2, g3;
};

// Immutable analytic pair (a, b) defining the first-order ladder operator
// eta = a d/dx + b. Exposes analytic derivatives (numeric differencing is
// kept for test oracles only), the antiderivative B(x) = int_0^x b/a with
// B(0) = 0, the mass profile M = a^-2, and the generator where the family
// defines one. Evaluators are pure; instances are safe to share across
// threads.
struct profile {
    profile_family family = profile_family::custom;

    // Family parameters; meaningful subset depends on the family.
    double q = 0.0;
    double kappa = 0.0;
    double p = 0.0;
    double mu = 0.0;

    std::function<double(double)> a, a1, a2;  // a, a', a''
    std::function<double(double)> b, b1;      // b, b'
    std::function<double(double)> B;          // closed form where available
    std::optional<generator> gen;

    // Additive constant R in the metric exponent: the model module builds
    // rho = [(a/a(0))^(d/2) exp(-d(B + R))]^(1/wt), d = alpha - beta. R is
    // zero except for canonical constructions, where R = (g(0)/2 + mu)^2
    // lines the pair (rho, gauge weight) up with the family closed forms.
    double gauge_offset = 0.0;

    double mass(double x) const {
        double ax = a(x);
        return 1.0 / (ax * ax);
    }
};

profile make_harmonic();
profile make_solitonic(double q, double kappa);
profile make_morse(double p, double mu);
profile make_custom(const std::string& expr_a, const std::string& expr_b);

generator solitonic_generator(double q);    // g = (2/q) atan(exp(qx)), g' = sech(qx)
generator exponential_generator(double p);  // g = -exp(-px)/p, g' = exp(-px)
generator generator_from_expression(const std::string& expr_g);

// Canonical choice b = -g''/(2 g'^2) + g/2 + mu, which restores
// [eta, eta+] = 1 for a = 1/g'. Throws singular_generator where g' <= 0.
profile canonical_b_from_g(const generator& g, double mu,
                           profile_family tag = profile_family::canonical_from_g);
profile canonical_b_from_g(const profile& with_generator, double mu);

// [eta, eta+] = 2 a b' - a a'' evaluated pointwise.
double commutator_field(const profile& pr, double x);

// log(cosh(t)) without overflow for large |t|.
double log_cosh(double t);

} // namespace swanson
