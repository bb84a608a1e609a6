#include "swanson/closedform.hpp"

#include <cmath>
#include <string>

#include "swanson/errors.hpp"

namespace swanson {

namespace {

constexpr int k_poly_cap = 64;

void check_poly_degree(int n) {
    if (n < 0) throw invalid_parameter("polynomial degree must be >= 0");
    if (n > k_poly_cap)
        throw invalid_parameter("polynomial degree capped at " + std::to_string(k_poly_cap));
}

} // namespace

double harmonic_spectrum(const model_params& mp, int n) {
    mp.validate();
    if (n < 0) throw invalid_parameter("level index must be >= 0");
    double w2 = mp.omega * mp.omega - 4.0 * mp.alpha * mp.beta;
    if (!(w2 > 0.0))
        throw no_real_spectrum("omega^2 - 4 alpha beta must be positive, got " +
                               std::to_string(w2));
    return (n + 0.5) * std::sqrt(w2);
}

double hermite(int n, double t) {
    check_poly_degree(n);
    if (n == 0) return 1.0;
    double hm1 = 1.0;
    double h = 2.0 * t;
    for (int m = 1; m < n; ++m) {
        double next = 2.0 * t * h - 2.0 * m * hm1;
        hm1 = h;
        h = next;
    }
    return h;
}

double harmonic_wavefunction(const model_params& mp, int n, double x) {
    mp.validate();
    double w2 = mp.omega * mp.omega - 4.0 * mp.alpha * mp.beta;
    if (!(w2 > 0.0))
        throw no_real_spectrum("omega^2 - 4 alpha beta must be positive, got " +
                               std::to_string(w2));
    double big_w = std::sqrt(w2);
    double wt = mp.omega_tilde();
    return hermite(n, std::sqrt(big_w / wt) * x) * std::exp(-0.5 * big_w * x * x / wt);
}

solitonic_closed_form solitonic_data(double q, double kappa, double alpha, double beta) {
    if (!(q > 0.0)) throw invalid_parameter("solitonic closed form requires q > 0");
    if (!(kappa > 0.5)) throw invalid_parameter("solitonic closed form requires kappa > 1/2");

    double sg = alpha + beta;
    double d = alpha - beta;
    double disc = (kappa - 1.0) * (kappa - 1.0) + (kappa - 1.0) * (2.0 * kappa - 1.0) * sg +
                  (kappa - 0.5) * (kappa - 0.5) * d * d;
    if (!(disc > 0.0))
        throw complex_lambda("solitonic discriminant must be positive, got " +
                             std::to_string(disc));

    solitonic_closed_form cf;
    cf.q = q;
    cf.kappa = kappa;
    cf.alpha = alpha;
    cf.beta = beta;
    cf.discriminant = disc;
    cf.lambda = 0.5 + std::sqrt(disc);

    // Expand the unit-scale effective potential of (a, b) =
    // (cosh qx, kq sinh qx) over the exact basis {cosh^2 qx, 1}, using
    // sinh^2 = cosh^2 - 1. Each profile combination contributes a pair
    // (cosh^2 weight, constant weight):
    //   a a''  -> ( q^2,      0     )
    //   a'^2   -> ( q^2,     -q^2   )
    //   a' b   -> ( k q^2,   -k q^2 )
    //   b^2    -> ( k^2 q^2, -k^2 q^2 )
    //   a b'   -> ( k q^2,    0     )
    double q2 = q * q;
    double K = 1.0 + 2.0 * sg + d * d;
    double w_aa2 = 0.5 * sg;
    double w_a1a1 = 0.5 * sg + 0.25 * d * d;
    double w_a1b = -K;
    double w_bb = K;
    double w_ab1 = -(sg + 1.0);
    cf.cosh2_coefficient = w_aa2 * q2 + w_a1a1 * q2 + w_a1b * (kappa * q2) +
                           w_bb * (kappa * kappa * q2) + w_ab1 * (kappa * q2);
    cf.v0 = w_a1a1 * (-q2) + w_a1b * (-kappa * q2) + w_bb * (-kappa * kappa * q2) +
            0.5 * (sg + 1.0);
    return cf;
}

double solitonic_closed_form::energy(int n) const {
    if (n < 0) throw invalid_parameter("level index must be >= 0");
    return q * q * (n + lambda - 0.5) * (n + lambda + 0.5) + v0;
}

double solitonic_energy(const solitonic_closed_form& cf, int n) { return cf.energy(n); }

double gegenbauer(int n, double lambda, double t) {
    check_poly_degree(n);
    if (!(lambda > 0.0)) throw invalid_parameter("gegenbauer requires lambda > 0");
    if (!(t >= -1.0 && t <= 1.0)) throw invalid_parameter("gegenbauer argument must be in [-1, 1]");
    if (n == 0) return 1.0;
    double cm1 = 1.0;
    double c = 2.0 * lambda * t;
    for (int m = 2; m <= n; ++m) {
        double next = (2.0 * (m + lambda - 1.0) * t * c - (m + 2.0 * lambda - 2.0) * cm1) / m;
        cm1 = c;
        c = next;
    }
    return c;
}

double solitonic_closed_form::chi(int n, double x) const {
    double t = std::tanh(q * x);
    double sech_pow = std::exp(-(lambda + 0.5) * log_cosh(q * x));
    return sech_pow * gegenbauer(n, lambda, t);
}

double solitonic_wavefunction(const solitonic_closed_form& cf, int n, double x) {
    return cf.chi(n, x);
}

double transformed_wavefunction(const solitonic_closed_form& cf, const profile& pr,
                                const model_params& mp, int n, double x) {
    return cf.chi(n, x) / rho_tilde(pr, mp, x);
}

double morse_veff(double p, double mu, double alpha, double beta, double x) {
    if (p == 0.0) throw invalid_parameter("morse closed form requires p != 0");
    double sg = alpha + beta;
    double d = alpha - beta;
    double K = 1.0 + 2.0 * sg + d * d;
    double G = mu - std::exp(-p * x) / (2.0 * p);
    return -0.75 * p * p * std::exp(2.0 * p * x) + K * G * G;
}

double morse_rho(double p, double mu, double alpha, double beta, double x) {
    if (p == 0.0) throw invalid_parameter("morse closed form requires p != 0");
    double G = mu - std::exp(-p * x) / (2.0 * p);
    return std::exp(-(alpha - beta) * G * G);
}

double veff_from_g(const generator& gen, double mu, double alpha, double beta, double x) {
    double d1 = gen.g1(x);
    if (!(d1 > 0.0))
        throw singular_generator("veff_from_g requires g' > 0, got g'(" + std::to_string(x) +
                                 ") = " + std::to_string(d1));
    double d2 = gen.g2(x);
    double d3 = gen.g3(x);
    double sg = alpha + beta;
    double dd = alpha - beta;
    double K = 1.0 + 2.0 * sg + dd * dd;
    double G = 0.5 * gen.g(x) + mu;
    double d1sq = d1 * d1;
    return 0.5 * d3 / (d1 * d1sq) - 1.25 * (d2 * d2) / (d1sq * d1sq) + K * G * G;
}

factorization_data factorize(const profile& pr, const model_params& mp) {
    mp.validate();
    if (std::fabs(mp.omega_tilde() - 1.0) > 1e-12)
        throw invalid_parameter("factorization is defined at omega - alpha - beta = 1");
    const double tol = 1e-14;
    bool alpha_zero = std::fabs(mp.alpha) <= tol;
    bool beta_zero = std::fabs(mp.beta) <= tol;
    if (!alpha_zero && !beta_zero)
        throw not_factorizable("factorization needs alpha = 0 or beta = 0");

    factorization_data fd;
    fd.base = pr;
    double c = beta_zero ? mp.alpha : mp.beta;
    fd.d1 = 1.0 + c;
    fd.d2 = -0.5 * c;
    fd.xi = 0.5 * (1.0 + c);
    return fd;
}

} // namespace swanson
