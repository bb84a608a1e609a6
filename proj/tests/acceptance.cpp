// Acceptance gate: ten numbered checks over the assembled library, one
// line of output each, nonzero exit when any check fails. Every parameter
// set and tolerance is pinned here, next to the check that uses it.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "swanson/closedform.hpp"
#include "swanson/errors.hpp"
#include "swanson/grid.hpp"
#include "swanson/model.hpp"
#include "swanson/operators.hpp"
#include "swanson/profile.hpp"
#include "swanson/spectra.hpp"

using namespace swanson;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
    std::printf("CRITERION %2d %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
    if (!pass) ++failures;
}

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> xs(count);
    for (int i = 0; i < count; ++i)
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    return xs;
}

// Reference setups used across several criteria.
const model_params k_jones{2.0, 0.4, 0.2};
const model_params k_soli{1.1, 0.1, 0.0};
const model_params k_morse{1.2, 0.2, 0.0};
const double k_morse_half_width = 3.0 * std::log(10.0);  // keeps a^2 <= 1e6

// Applies the symmetric flux stencil to an analytic function, using the
// function's own values at the walls instead of Dirichlet zeros, and
// returns || stencil[chi] - E chi || / || chi || over the whole grid.
double stencil_residual(const profile& pr, const model_params& mp, const grid& g,
                        const std::function<double(double)>& chi, double energy) {
    const double h = g.h();
    const double wt = mp.omega_tilde();
    const int n = g.n_interior;
    Eigen::VectorXd defect(n), values(n);
    for (int i = 0; i < n; ++i) values(i) = chi(g.x(i));
    const double left = chi(g.x_min);
    const double right = chi(g.x_max);
    for (int i = 0; i < n; ++i) {
        double x = g.x(i);
        double am = pr.a(x - 0.5 * h), ap = pr.a(x + 0.5 * h);
        double um = (i == 0) ? left : values(i - 1);
        double up = (i == n - 1) ? right : values(i + 1);
        double diffusion = (wt / (h * h)) *
                           (am * am * (values(i) - um) + ap * ap * (values(i) - up));
        defect(i) = diffusion + (v_eff(pr, mp, x) - energy) * values(i);
    }
    return defect.norm() / values.norm();
}

void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    grid g{-10.0, 10.0, 2000};
    Eigen::VectorXd ev = tridiagonal_eigenvalues(build_h_tilde(make_harmonic(), k_jones, g).m, 5);
    const double step = std::sqrt(k_jones.omega * k_jones.omega -
                                  4.0 * k_jones.alpha * k_jones.beta);  // 1.9183326...
    double worst = 0.0;
    for (int n = 0; n < 5; ++n)
        worst = std::max(worst, std::abs(ev(n) - (n + 0.5) * step) / ((n + 0.5) * step));
    double wall = seconds_since(t0);
    report(1, worst <= 1e-4 && wall < 5.0,
           "lowest five quadratic-slope levels vs (n + 1/2) sqrt(omega^2 - 4 alpha beta): "
           "max rel err " + num(worst) + " (tol 1e-4), " + num(wall) + " s (limit 5)");
}

void criterion_2() {
    auto t0 = std::chrono::steady_clock::now();
    const double q = 1.0, kappa = 2.0;
    const double sg = k_soli.sigma(), d = k_soli.delta();

    // energies from the collected coefficient expressions, written out
    // independently of the library's derivation
    const double disc = (kappa - 1.0) * (kappa - 1.0) +
                        (kappa - 1.0) * (2.0 * kappa - 1.0) * sg +
                        (kappa - 0.5) * (kappa - 0.5) * d * d;
    const double lambda = 0.5 + std::sqrt(disc);
    const double big_k = 1.0 + 2.0 * sg + d * d;
    const double v0 = q * q * (-0.5 * sg - 0.25 * d * d + big_k * kappa * (1.0 - kappa)) +
                      0.5 * (sg + 1.0);

    // consistency tie between the two independent coefficient collections
    solitonic_closed_form cf = solitonic_data(q, kappa, k_soli.alpha, k_soli.beta);
    bool tie = std::abs(cf.cosh2_coefficient - q * q * (disc - 1.0)) <= 1e-12 &&
               std::abs(cf.v0 - v0) <= 1e-12;

    grid g{-12.0, 12.0, 4000};
    Eigen::VectorXd ev =
        tridiagonal_eigenvalues(build_h_tilde(make_solitonic(q, kappa), k_soli, g).m, 4);
    double worst = 0.0;
    for (int n = 0; n < 4; ++n) {
        double exact = q * q * (n + lambda - 0.5) * (n + lambda + 0.5) + v0;
        worst = std::max(worst, std::abs(ev(n) - exact) / std::abs(exact));
    }
    double wall = seconds_since(t0);
    report(2, tie && worst <= 1e-3 && wall < 20.0,
           "lowest four cosh-profile levels vs q^2 (n + lambda - 1/2)(n + lambda + 1/2) + V0: "
           "max rel err " + num(worst) + " (tol 1e-3), coefficient tie " +
           (tie ? "exact" : "BROKEN") + ", " + num(wall) + " s (limit 20)");
}

void criterion_3() {
    bool pass = true;
    double worst_lo = 2.0, worst_hi = 2.0;
    profile harm = make_harmonic();
    profile sol = make_solitonic(1.0, 2.0);
    solitonic_closed_form cf = solitonic_data(1.0, 2.0, k_soli.alpha, k_soli.beta);

    for (int n = 0; n < 4; ++n) {
        grid hg{-10.0, 10.0, 1000};
        auto hchi = [&](double x) { return harmonic_wavefunction(k_jones, n, x); };
        double r1 = stencil_residual(harm, k_jones, hg, hchi, harmonic_spectrum(k_jones, n));
        double r2 = stencil_residual(harm, k_jones, hg.refined(), hchi,
                                     harmonic_spectrum(k_jones, n));
        double order = std::log2(r1 / r2);
        pass = pass && order >= 1.9 && order <= 2.1;
        worst_lo = std::min(worst_lo, order);
        worst_hi = std::max(worst_hi, order);

        grid sg{-12.0, 12.0, 1000};
        auto schi = [&](double x) { return cf.chi(n, x); };
        double s1 = stencil_residual(sol, k_soli, sg, schi, cf.energy(n));
        double s2 = stencil_residual(sol, k_soli, sg.refined(), schi, cf.energy(n));
        double sorder = std::log2(s1 / s2);
        pass = pass && sorder >= 1.9 && sorder <= 2.1;
        worst_lo = std::min(worst_lo, sorder);
        worst_hi = std::max(worst_hi, sorder);
    }
    report(3, pass,
           "stencil applied to the analytic bound states (wall values from the formula): "
           "defect orders in [" + num(worst_lo) + ", " + num(worst_hi) +
           "] (target [1.9, 2.1], levels 0-3, both families)");
}

void criterion_4() {
    struct setup {
        const char* name;
        profile pr;
        model_params mp;
        grid g;
    };
    std::vector<setup> setups;
    setups.push_back({"quadratic", make_harmonic(), k_jones, grid{-10.0, 10.0, 200}});
    setups.push_back({"cosh", make_solitonic(1.0, 2.0), k_soli, grid{-12.0, 12.0, 200}});
    setups.push_back({"exponential", make_morse(1.0, 0.0), k_morse,
                      grid{-k_morse_half_width, k_morse_half_width, 200}});
    bool pass = true;
    double worst = 0.0;
    for (const auto& s : setups) {
        tridiag full = build_H_tilde(s.pr, s.mp, s.g).m;
        double max_im = 0.0;
        for (const auto& v : dense_eigenvalues(full))
            max_im = std::max(max_im, std::abs(v.imag()));
        double ratio = max_im / full.inf_norm();
        worst = std::max(worst, ratio);
        pass = pass && ratio <= 1e-8;
    }
    report(4, pass,
           "spectra of the 200-node nonsymmetric forms are real: max |Im E| / ||H||_inf " +
           num(worst) + " (tol 1e-8, three families)");
}

struct order_probe {
    double fine = 0.0;
    double order = 0.0;
};

order_probe probe(const profile& pr, const model_params& mp, const grid& g,
                  double (*res)(const profile&, const model_params&, const grid&,
                                const Eigen::MatrixXd&)) {
    grid f = g.refined();
    double coarse = res(pr, mp, g, gaussian_test_vectors(g));
    double fine = res(pr, mp, f, gaussian_test_vectors(f));
    return {fine, std::log2(coarse / fine)};
}

void criterion_5() {
    bool pass = true;
    double lo = 2.0, hi = 2.0;
    const grid harm_g{-10.0, 10.0, 400};
    const grid sol_g{-12.0, 12.0, 400};
    const grid mor_g{-2.5, 2.5, 400};
    for (const auto& [pr, mp, g] :
         {std::tuple{make_harmonic(), k_jones, harm_g},
          std::tuple{make_solitonic(1.0, 2.0), k_soli, sol_g},
          std::tuple{make_morse(1.0, 0.0), k_morse, mor_g}}) {
        order_probe p = probe(pr, mp, g, residual_similarity);
        pass = pass && p.order >= 1.9 && p.order <= 2.1;
        lo = std::min(lo, p.order);
        hi = std::max(hi, p.order);
    }
    // at alpha = beta the two forms are the same matrix: defect exactly zero
    model_params herm{2.0, 0.3, 0.3};
    grid cg{-10.0, 10.0, 400};
    double control = residual_similarity(make_harmonic(), herm, cg, gaussian_test_vectors(cg));
    pass = pass && control <= 1e-12;
    report(5, pass,
           "density-conjugation defect orders in [" + num(lo) + ", " + num(hi) +
           "] (target [1.9, 2.1], three families); equal-coupling control " + num(control) +
           " (tol 1e-12)");
}

void criterion_6() {
    bool pass = true;
    double lo = 2.0, hi = 2.0;
    for (const auto& [pr, mp, g] :
         {std::tuple{make_harmonic(), k_jones, grid{-10.0, 10.0, 400}},
          std::tuple{make_solitonic(1.0, 2.0), k_soli, grid{-12.0, 12.0, 400}},
          std::tuple{make_morse(1.0, 0.0), k_morse, grid{-2.5, 2.5, 400}}}) {
        order_probe p = probe(pr, mp, g, residual_pseudo_hermiticity);
        pass = pass && p.order >= 1.9 && p.order <= 2.1;
        lo = std::min(lo, p.order);
        hi = std::max(hi, p.order);
    }
    // flipping the squared density must break the identity: the defect
    // stays O(1) instead of shrinking with the grid
    order_probe ctl = probe(make_solitonic(1.0, 2.0), k_soli, grid{-12.0, 12.0, 400},
                            residual_pseudo_hermiticity_control);
    bool ctl_ok = ctl.fine > 1e-8 && ctl.order <= 0.5;
    pass = pass && ctl_ok;
    report(6, pass,
           "squared-density intertwining defect orders in [" + num(lo) + ", " + num(hi) +
           "] (target [1.9, 2.1]); inverted-density control stays at " + num(ctl.fine) +
           " with order " + num(ctl.order) + " (must not decay)");
}

void criterion_7() {
    // growing commutator of the cosh-profile ladder pair
    profile sol = make_solitonic(1.0, 2.0);
    double worst_sol = 0.0;
    for (double x : linspace(-4.0, 4.0, 41)) {
        double c = std::cosh(x);
        worst_sol = std::max(worst_sol,
                             std::abs(commutator_field(sol, x) - 3.0 * c * c));
    }

    // canonical pairs keep the commutator pinned at one
    double worst_can = 0.0;
    profile harm = make_harmonic();
    for (double x : linspace(-10.0, 10.0, 41))
        worst_can = std::max(worst_can, std::abs(commutator_field(harm, x) - 1.0));
    profile from_q = canonical_b_from_g(solitonic_generator(1.0), 0.2);
    for (double x : linspace(-4.0, 4.0, 41))
        worst_can = std::max(worst_can, std::abs(commutator_field(from_q, x) - 1.0));
    profile from_p = canonical_b_from_g(exponential_generator(1.0), 0.0);
    for (double x : linspace(-3.0, 3.0, 41))
        worst_can = std::max(worst_can, std::abs(commutator_field(from_p, x) - 1.0));

    report(7, worst_sol <= 1e-10 && worst_can <= 1e-9,
           "ladder commutator fields: cosh profile vs (2 kappa - 1) q^2 cosh^2 within " +
           num(worst_sol) + " (tol 1e-10); canonical pairs vs 1 within " + num(worst_can) +
           " (tol 1e-9)");
}

void criterion_8() {
    profile sol = make_solitonic(1.0, 2.0);
    model_params mirror{1.1, 0.0, 0.1};
    double worst_pt = 0.0;
    for (const model_params& mp : {k_soli, mirror}) {
        factorization_data fd = factorize(sol, mp);
        for (double x : linspace(-5.0, 5.0, 41))
            worst_pt = std::max(worst_pt, std::abs(v_eff(sol, mp, x) - fd.potential(x)));
    }

    order_probe p = probe(sol, k_soli, grid{-12.0, 12.0, 400}, residual_factorization);
    bool order_ok = p.order >= 1.9 && p.order <= 2.1;
    report(8, worst_pt <= 1e-10 && order_ok,
           "shifted-square factorization: closed potential within " + num(worst_pt) +
           " (tol 1e-10, both single-coupling branches); operator defect order " +
           num(p.order) + " (target [1.9, 2.1])");
}

void criterion_9() {
    std::mt19937_64 rng(0xacce97);
    std::uniform_real_distribution<double> omega_d(0.9, 1.6), cpl(-0.2, 0.35);
    std::uniform_real_distribution<double> kap(0.8, 2.5), qd(0.7, 1.3);

    auto draw = [&]() {
        for (;;) {
            model_params mp{omega_d(rng), cpl(rng), cpl(rng)};
            if (mp.omega_tilde() >= 0.25) return mp;
        }
    };

    struct family {
        const char* name;
        std::function<profile()> make;
        double half_width;
    };
    std::vector<family> families = {
        {"quadratic", [] { return make_harmonic(); }, 8.0},
        {"cosh", [&] { return make_solitonic(qd(rng), kap(rng)); }, 8.0},
        {"exponential", [] { return make_morse(1.0, 0.1); }, 2.5},
        {"canonical", [] { return canonical_b_from_g(solitonic_generator(1.0), 0.2); }, 5.0},
        {"custom", [] { return make_custom("1 + x^2", "sinh(x) + 0.5"); }, 6.0},
    };

    bool pass = true;
    double worst_recip = 0.0, worst_sym = 0.0;
    for (const auto& fam : families) {
        for (int trial = 0; trial < 5; ++trial) {
            profile pr = fam.make();
            model_params fwd = draw();
            model_params bwd{fwd.omega, fwd.beta, fwd.alpha};
            for (double x : linspace(-fam.half_width, fam.half_width, 21)) {
                double recip = std::abs(rho_tilde(pr, fwd, x) * rho_tilde(pr, bwd, x) - 1.0);
                double va = v_eff(pr, fwd, x);
                double vs = std::abs(va - v_eff(pr, bwd, x)) / std::max(1.0, std::abs(va));
                worst_recip = std::max(worst_recip, recip);
                worst_sym = std::max(worst_sym, vs);
            }
        }
        // equal couplings force the density to exactly one
        profile pr = fam.make();
        model_params herm{1.4, 0.22, 0.22};
        for (double x : linspace(-fam.half_width, fam.half_width, 21))
            pass = pass && rho_tilde(pr, herm, x) == 1.0;
    }
    pass = pass && worst_recip <= 1e-11 && worst_sym <= 1e-11;
    report(9, pass,
           "coupling-swap identities over 5 random draws x 5 profile families: "
           "density reciprocity defect " + num(worst_recip) + ", potential symmetry defect " +
           num(worst_sym) + " (tol 1e-11); equal couplings give density exactly 1");
}

void criterion_10() {
    profile mor = make_morse(1.0, 0.0);
    double worst_v = 0.0, worst_r = 0.0;
    for (double x : linspace(-k_morse_half_width, k_morse_half_width, 41)) {
        double vc = morse_veff(1.0, 0.0, k_morse.alpha, k_morse.beta, x);
        worst_v = std::max(worst_v,
                           std::abs(v_eff(mor, k_morse, x) - vc) / std::max(1.0, std::abs(vc)));
        double rc = morse_rho(1.0, 0.0, k_morse.alpha, k_morse.beta, x);
        worst_r = std::max(worst_r,
                           std::abs(rho_tilde(mor, k_morse, x) - rc) / std::max(1.0, std::abs(rc)));
    }
    report(10, worst_v <= 1e-10 && worst_r <= 1e-10,
           "exponential profile vs its closed potential and density on the clipped domain: "
           "defects " + num(worst_v) + " and " + num(worst_r) + " (tol 1e-10)");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("SUMMARY %d/10 passed\n", 10 - failures);
    return failures;
}
