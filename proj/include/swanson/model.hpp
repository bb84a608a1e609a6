#pragma once

#include <Eigen/Dense>
#include <vector>

#include "swanson/grid.hpp"
#include "swanson/profile.hpp"

namespace swanson {

// Quadratic-model parameters. omega_tilde, sigma and delta are evaluated
// symmetrically in (alpha, beta) so that swapping the two gives bitwise
// identical sigma, omega_tilde and delta^2; the alpha <-> beta symmetry of
// the effective potential then holds exactly in floating point.
struct model_params {
    double omega = 1.0;
    double alpha = 0.0;
    double beta = 0.0;

    double sigma() const { return alpha + beta; }
    double delta() const { return alpha - beta; }
    double omega_tilde() const { return omega - sigma(); }

    model_params swapped() const { return model_params{omega, beta, alpha}; }

    void validate() const;  // omega_tilde > 0 and all fields finite
};

// a(x) with positivity and range checks: a must stay positive and a^2 must
// stay below 1e12 for the advertised double-precision tolerances to mean
// anything.
double checked_a(const profile& pr, double x);

// Coefficients of the first-order (non-symmetric) operator
//   -wt d/dx a^2 d/dx + (wt a a' + c1) d/dx + c2,  wt = omega_tilde.
// drift_coefficient is wt a a' + c1 in the cancellation-free form
// delta * a * (2b - a'), which is exactly zero when alpha = beta.
double c1(const profile& pr, const model_params& mp, double x);
double c2(const profile& pr, const model_params& mp, double x);
double drift_coefficient(const profile& pr, const model_params& mp, double x);

// Effective potential of the symmetric form -wt d/dx a^2 d/dx + V.
// v_eff is the production route, written in terms of sigma and delta^2
// only, so V^(alpha,beta) == V^(beta,alpha) bitwise. v_eff_gauge eliminates
// the first-derivative term through the gauge function (analytic chain
// rule, no numeric differencing) and serves as the independent second
// route. v_eff_unit_scale is the six-term closed form valid at
// omega_tilde = 1.
double v_eff(const profile& pr, const model_params& mp, double x);
double v_eff_gauge(const profile& pr, const model_params& mp, double x);
double v_eff_unit_scale(const profile& pr, double alpha, double beta, double x);

// Gauge weight w(x) = exp(delta R / wt) * exp(int_0^x drift / (2 wt a^2)),
// evaluated by adaptive quadrature; R is the profile's gauge offset. The
// mapping rho_tilde(x) = [(a/a(0))^(delta/2) exp(-delta(B+R))]^(1/wt) is
// the closed-form route; rho_tilde * gauge_weight == 1 identically, and the
// two independent evaluations agree to quadrature accuracy.
double gauge_weight(const profile& pr, const model_params& mp, double x);
double rho_tilde(const profile& pr, const model_params& mp, double x);
double zeta_plus(const profile& pr, const model_params& mp, double x);  // rho_tilde^2

// Sampled coefficient fields on a grid.
struct coefficient_field {
    Eigen::VectorXd x, a, b, c1, c2, v_eff, kinetic;  // kinetic = wt a^2
};
coefficient_field sample_coefficients(const profile& pr, const model_params& mp, const grid& g);

// Sampled metric data. zeta is rho_(beta,alpha)^-1 * rho_(alpha,beta),
// which equals zeta_plus up to roundoff; rho_harmonic is the Gaussian
// closed form exp(-delta x^2 / (2 wt)) filled in for the harmonic family.
struct metric_data {
    Eigen::VectorXd x, w, rho_tilde, zeta_plus, zeta;
    Eigen::VectorXd rho_harmonic;  // empty unless family == harmonic
};
metric_data sample_metric(const profile& pr, const model_params& mp, const grid& g);

// True iff the coefficients of the first-order operator are parity
// invariant at every sample point: a^2 even, drift odd, c2 even, within
// 1e-10 (relative above unit scale). Each point is tested together with its
// mirror image. Throws invalid_parameter if a <= 0 at a sample point.
bool pt_symmetry_predicate(const profile& pr, const model_params& mp,
                           const std::vector<double>& sample_points);

} // namespace swanson
