#include "swanson/model.hpp"

#include <cmath>
#include <string>

#include "swanson/errors.hpp"
#include "swanson/quadrature.hpp"

namespace swanson {

namespace {

// Pointwise profile data shared by the coefficient formulas.
struct local_fields {
    double a, a1, a2, b, b1;
    double t;     // 2b - a'
    double s;     // (2b - a')' = 2b' - a''
    double even;  // b^2 - a b' - a' b
};

local_fields fields_at(const profile& pr, double x) {
    local_fields f;
    f.a = pr.a(x);
    f.a1 = pr.a1(x);
    f.a2 = pr.a2(x);
    f.b = pr.b(x);
    f.b1 = pr.b1(x);
    f.t = 2.0 * f.b - f.a1;
    f.s = 2.0 * f.b1 - f.a2;
    f.even = f.b * f.b - f.a * f.b1 - f.a1 * f.b;
    return f;
}

// Part of c2 and v_eff that is symmetric under alpha <-> beta. Both
// consumers add their own delta-dependent term to this shared value, which
// makes c2 == v_eff bitwise when delta = 0 (the assembled first-order and
// symmetric operators are then the same matrix).
double sym_base(double wt, double sigma, const local_fields& f) {
    return wt * f.even + 0.5 * sigma * (f.t * f.t - f.a * f.s) + 0.5 * (wt + sigma);
}

} // namespace

void model_params::validate() const {
    if (!std::isfinite(omega) || !std::isfinite(alpha) || !std::isfinite(beta))
        throw invalid_parameter("model parameters must be finite");
    if (!(omega_tilde() > 0.0))
        throw invalid_parameter("model requires omega - alpha - beta > 0, got " +
                                std::to_string(omega_tilde()));
}

double checked_a(const profile& pr, double x) {
    double a = pr.a(x);
    if (!(a > 0.0))
        throw positivity_error("a(x) must be positive, got a(" + std::to_string(x) +
                               ") = " + std::to_string(a));
    if (!(a * a <= 1e12))
        throw range_error("a(x)^2 exceeds 1e12 at x = " + std::to_string(x) +
                          "; shrink the domain");
    return a;
}

double drift_coefficient(const profile& pr, const model_params& mp, double x) {
    return mp.delta() * (pr.a(x) * (2.0 * pr.b(x) - pr.a1(x)));
}

double c1(const profile& pr, const model_params& mp, double x) {
    double wt = mp.omega_tilde();
    return -(wt * pr.a(x) * pr.a1(x)) + drift_coefficient(pr, mp, x);
}

double c2(const profile& pr, const model_params& mp, double x) {
    local_fields f = fields_at(pr, x);
    double wt = mp.omega_tilde();
    return sym_base(wt, mp.sigma(), f) + 0.5 * mp.delta() * (f.a1 * f.t + f.a * f.s);
}

double v_eff(const profile& pr, const model_params& mp, double x) {
    local_fields f = fields_at(pr, x);
    double wt = mp.omega_tilde();
    double d = mp.delta();
    return sym_base(wt, mp.sigma(), f) + (0.25 * (d * d) / wt) * (f.t * f.t);
}

double v_eff_gauge(const profile& pr, const model_params& mp, double x) {
    local_fields f = fields_at(pr, x);
    double wt = mp.omega_tilde();
    double d = mp.delta();
    double a2sq = f.a * f.a;
    double P = d * (f.a * f.t);                        // wt a a' + c1
    double P1 = d * (f.a1 * f.t + f.a * f.s);          // dP/dx
    double u = P / (2.0 * wt * a2sq);                  // w'/w
    double u1 = P1 / (2.0 * wt * a2sq) - P * f.a1 / (wt * a2sq * f.a);
    double c1x = -(wt * f.a * f.a1) + P;
    double c2x = sym_base(wt, mp.sigma(), f) + 0.5 * d * (f.a1 * f.t + f.a * f.s);
    return -wt * a2sq * (u1 + u * u) + (c1x - wt * f.a * f.a1) * u + c2x;
}

double v_eff_unit_scale(const profile& pr, double alpha, double beta, double x) {
    local_fields f = fields_at(pr, x);
    double sg = alpha + beta;
    double d = alpha - beta;
    double K = 1.0 + 2.0 * sg + d * d;
    return 0.5 * sg * f.a * f.a2 + (0.5 * sg + 0.25 * d * d) * f.a1 * f.a1 - K * f.a1 * f.b +
           K * f.b * f.b - (sg + 1.0) * f.a * f.b1 + 0.5 * (sg + 1.0);
}

double gauge_weight(const profile& pr, const model_params& mp, double x) {
    mp.validate();
    double wt = mp.omega_tilde();
    double d = mp.delta();
    auto integrand = [&](double t) {
        double a = checked_a(pr, t);
        return d * (2.0 * pr.b(t) - pr.a1(t)) / (2.0 * wt * a);
    };
    double expo = d * pr.gauge_offset / wt;
    if (x != 0.0) expo += integrate(integrand, 0.0, x, 1e-12, 1e-13);
    return std::exp(expo);
}

namespace {

// Exponent of rho_tilde divided by delta; negating delta negates the
// exponent exactly, which is what makes the reciprocity identity
// rho_(alpha,beta) * rho_(beta,alpha) = 1 hold to a couple of ulps.
double rho_exponent_base(const profile& pr, const model_params& mp, double x) {
    double wt = mp.omega_tilde();
    double a = checked_a(pr, x);
    double a0 = checked_a(pr, 0.0);
    return (0.5 * std::log(a / a0) - (pr.B(x) + pr.gauge_offset)) / wt;
}

} // namespace

double rho_tilde(const profile& pr, const model_params& mp, double x) {
    mp.validate();
    return std::exp(mp.delta() * rho_exponent_base(pr, mp, x));
}

double zeta_plus(const profile& pr, const model_params& mp, double x) {
    mp.validate();
    return std::exp(2.0 * mp.delta() * rho_exponent_base(pr, mp, x));
}

coefficient_field sample_coefficients(const profile& pr, const model_params& mp, const grid& g) {
    mp.validate();
    g.validate();
    int n = g.n_interior;
    coefficient_field cf;
    cf.x = g.nodes();
    cf.a.resize(n);
    cf.b.resize(n);
    cf.c1.resize(n);
    cf.c2.resize(n);
    cf.v_eff.resize(n);
    cf.kinetic.resize(n);
    double wt = mp.omega_tilde();
    for (int i = 0; i < n; ++i) {
        double x = cf.x[i];
        double a = checked_a(pr, x);
        cf.a[i] = a;
        cf.b[i] = pr.b(x);
        cf.c1[i] = c1(pr, mp, x);
        cf.c2[i] = c2(pr, mp, x);
        cf.v_eff[i] = v_eff(pr, mp, x);
        cf.kinetic[i] = wt * a * a;
    }
    return cf;
}

metric_data sample_metric(const profile& pr, const model_params& mp, const grid& g) {
    mp.validate();
    g.validate();
    int n = g.n_interior;
    metric_data md;
    md.x = g.nodes();
    md.w.resize(n);
    md.rho_tilde.resize(n);
    md.zeta_plus.resize(n);
    md.zeta.resize(n);
    model_params sw = mp.swapped();
    for (int i = 0; i < n; ++i) {
        double x = md.x[i];
        md.w[i] = gauge_weight(pr, mp, x);
        md.rho_tilde[i] = rho_tilde(pr, mp, x);
        md.zeta_plus[i] = zeta_plus(pr, mp, x);
        md.zeta[i] = md.rho_tilde[i] / rho_tilde(pr, sw, x);
    }
    if (pr.family == profile_family::harmonic) {
        md.rho_harmonic.resize(n);
        double wt = mp.omega_tilde();
        for (int i = 0; i < n; ++i) {
            double x = md.x[i];
            md.rho_harmonic[i] = std::exp(-mp.delta() * x * x / (2.0 * wt));
        }
    }
    return md;
}

bool pt_symmetry_predicate(const profile& pr, const model_params& mp,
                           const std::vector<double>& sample_points) {
    mp.validate();
    const double tol = 1e-10;
    auto matches = [&](double lhs, double rhs, bool odd) {
        double want = odd ? -rhs : rhs;
        double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
        return std::fabs(lhs - want) <= tol * scale;
    };
    for (double xs : sample_points) {
        for (double x : {xs, -xs}) {
            double a = pr.a(x);
            if (!(a > 0.0))
                throw invalid_parameter("parity test requires a > 0, got a(" +
                                        std::to_string(x) + ") = " + std::to_string(a));
        }
        double ap = pr.a(xs), am = pr.a(-xs);
        if (!matches(ap * ap, am * am, false)) return false;
        if (!matches(drift_coefficient(pr, mp, xs), drift_coefficient(pr, mp, -xs), true))
            return false;
        if (!matches(c2(pr, mp, xs), c2(pr, mp, -xs), false)) return false;
    }
    return true;
}

} // namespace swanson
