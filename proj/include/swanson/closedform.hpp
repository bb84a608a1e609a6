#pragma once

#include "swanson/model.hpp"
#include "swanson/profile.hpp"

namespace swanson {

// ---- harmonic family ------------------------------------------------------

// E_n = (n + 1/2) sqrt(omega^2 - 4 alpha beta); the spectrum of
// -(wt/2) d^2/dx^2 + ((omega^2 - 4 alpha beta)/(2 wt)) x^2.
double harmonic_spectrum(const model_params& mp, int n);

// Physicists' Hermite polynomial by forward recurrence, n capped at 64.
double hermite(int n, double t);

// Unnormalized eigenfunction H_n(sqrt(W/wt) x) exp(-W x^2/(2 wt)) of the
// harmonic symmetric form, W = sqrt(omega^2 - 4 alpha beta).
double harmonic_wavefunction(const model_params& mp, int n, double x);

// ---- solitonic family ------------------------------------------------------

struct solitonic_closed_form {
    double q, kappa, alpha, beta;
    double discriminant;       // (k-1)^2 + (k-1)(2k-1)(a+b) + (k-1/2)^2 (a-b)^2
    double lambda;             // 1/2 + sqrt(discriminant)
    double v0;                 // constant term of V_eff in the {cosh^2, 1} basis
    double cosh2_coefficient;  // cosh^2 term of V_eff, equals q^2 (discriminant - 1)

    double energy(int n) const;         // q^2 (n+lambda-1/2)(n+lambda+1/2) + v0
    double chi(int n, double x) const;  // unnormalized bound state
};

// Valid at unit omega_tilde; v0 and the cosh^2 coefficient come from
// expanding the effective potential of (a, b) = (cosh qx, kq sinh qx) in
// the exact basis {cosh^2 qx, 1} term by term.
solitonic_closed_form solitonic_data(double q, double kappa, double alpha, double beta);

double solitonic_energy(const solitonic_closed_form& cf, int n);

// Gegenbauer C_n^(lambda)(t) by the three-term forward recurrence,
// n capped at 64, t restricted to [-1, 1].
double gegenbauer(int n, double lambda, double t);

// chi_n(x) = (sech qx)^(lambda+1/2) C_n^(lambda)(tanh qx), unnormalized.
double solitonic_wavefunction(const solitonic_closed_form& cf, int n, double x);

// phi_n = rho_tilde^-1 chi_n, the bound state of the first-order form.
double transformed_wavefunction(const solitonic_closed_form& cf, const profile& pr,
                                const model_params& mp, int n, double x);

// ---- morse-like family -----------------------------------------------------

// V_eff = -(3/4) p^2 e^(2px) + K (mu - e^(-px)/(2p))^2 and
// rho = exp(-(alpha-beta) (mu - e^(-px)/(2p))^2), K = 1+2(a+b)+(a-b)^2.
// Both agree with the generic route on the canonical profile built from the
// exponential generator.
double morse_veff(double p, double mu, double alpha, double beta, double x);
double morse_rho(double p, double mu, double alpha, double beta, double x);

// Effective potential of any canonical profile directly from its generator:
// g'''/(2 g'^3) - (5/4) g''^2/g'^4 + K (g/2 + mu)^2, valid at unit
// omega_tilde.
double veff_from_g(const generator& gen, double mu, double alpha, double beta, double x);

// ---- factorization ---------------------------------------------------------

// h = eta1+ eta1 + xi with eta1 = a d/dx + b1, b1 = d1 b + d2 a'. Defined at
// unit omega_tilde on the two branches beta = 0 (d1 = 1+alpha, d2 = -alpha/2,
// xi = (1+alpha)/2) and alpha = 0 (mirror image).
struct factorization_data {
    profile base;
    double d1, d2, xi;

    double b1(double x) const { return d1 * base.b(x) + d2 * base.a1(x); }
    double b1_prime(double x) const { return d1 * base.b1(x) + d2 * base.a2(x); }

    // b1^2 - (a b1)' + xi; equals the effective potential pointwise.
    double potential(double x) const {
        double v = b1(x);
        return v * v - (base.a1(x) * v + base.a(x) * b1_prime(x)) + xi;
    }
};

factorization_data factorize(const profile& pr, const model_params& mp);

} // namespace swanson
