#include "swanson/spectra.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "swanson/closedform.hpp"
#include "swanson/errors.hpp"

namespace swanson {

namespace {

constexpr double k_nan = std::numeric_limits<double>::quiet_NaN();

void require_symmetric(const tridiag& t) {
    if (!t.exactly_symmetric())
        throw invalid_parameter("symmetric tridiagonal matrix expected");
    if (t.dim() < 1) throw invalid_parameter("empty matrix");
}

} // namespace

int sturm_count(const Eigen::VectorXd& diag, const Eigen::VectorXd& e2, double x,
                double pivmin) {
    const int n = static_cast<int>(diag.size());
    int count = 0;
    double q = diag[0] - x;
    if (std::abs(q) <= pivmin) q = -pivmin;
    if (q < 0.0) ++count;
    for (int i = 1; i < n; ++i) {
        q = diag[i] - x - e2[i - 1] / q;
        if (std::abs(q) <= pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

Eigen::VectorXd tridiagonal_eigenvalues(const tridiag& t, int k) {
    require_symmetric(t);
    const int n = t.dim();
    if (k < 1 || k > n) throw invalid_parameter("eigenvalue count must be in [1, dim]");

    Eigen::VectorXd e2(std::max(n - 1, 0));
    double emax2 = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        e2[i] = t.upper[i] * t.upper[i];
        emax2 = std::max(emax2, e2[i]);
    }
    const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, emax2);

    // Gershgorin bracket, padded so the count is 0 at lo and n at hi
    double lo = t.diag[0], hi = t.diag[0];
    for (int i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(t.upper[i - 1]);
        if (i + 1 < n) r += std::abs(t.upper[i]);
        lo = std::min(lo, t.diag[i] - r);
        hi = std::max(hi, t.diag[i] + r);
    }
    const double pad = 1e-10 * std::max({1.0, std::abs(lo), std::abs(hi)});
    lo -= pad;
    hi += pad;

    Eigen::VectorXd values(k);
    for (int j = 0; j < k; ++j) {
        double a = lo, b = hi;
        for (int it = 0; it < 220; ++it) {
            double mid = 0.5 * (a + b);
            double tol = 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
            if (b - a <= tol || mid == a || mid == b) break;
            if (sturm_count(t.diag, e2, mid, pivmin) >= j + 1)
                b = mid;
            else
                a = mid;
        }
        values[j] = 0.5 * (a + b);
        lo = a;  // later eigenvalues cannot sit below this one
    }
    return values;
}

namespace {

// LU factorization of (T - shift I) with partial pivoting between adjacent
// rows, in the classic four-band layout.
struct tridiag_lu {
    Eigen::VectorXd dl, d, du, du2;
    std::vector<bool> swapped;
    double nudge = 0.0;  // replaces exactly singular pivots

    void factor(const tridiag& t, double shift, double pivot_nudge) {
        const int n = t.dim();
        nudge = pivot_nudge;
        dl.resize(std::max(n - 1, 0));
        du.resize(std::max(n - 1, 0));
        du2 = Eigen::VectorXd::Zero(std::max(n - 2, 0));
        d.resize(n);
        swapped.assign(std::max(n - 1, 0), false);
        for (int i = 0; i + 1 < n; ++i) {
            dl[i] = t.lower[i];
            du[i] = t.upper[i];
        }
        for (int i = 0; i < n; ++i) d[i] = t.diag[i] - shift;

        for (int i = 0; i + 1 < n; ++i) {
            if (std::abs(d[i]) >= std::abs(dl[i])) {
                if (d[i] == 0.0) d[i] = nudge;
                double fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                double fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                double temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if (i + 2 < n) {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        if (d[n - 1] == 0.0) d[n - 1] = nudge;
    }

    Eigen::VectorXd solve(Eigen::VectorXd b) const {
        const int n = static_cast<int>(d.size());
        for (int i = 0; i + 1 < n; ++i) {
            if (!swapped[i]) {
                b[i + 1] -= dl[i] * b[i];
            } else {
                double temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - dl[i] * b[i];
            }
        }
        b[n - 1] /= d[n - 1];
        if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
        for (int i = n - 3; i >= 0; --i)
            b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
        return b;
    }
};

} // namespace

eigen_pairs tridiagonal_eigenpairs(const tridiag& t, int k) {
    require_symmetric(t);
    const int n = t.dim();
    eigen_pairs out;
    out.values = tridiagonal_eigenvalues(t, k);
    out.vectors.resize(n, k);
    out.clustered.assign(k, false);
    out.residuals.resize(k);

    const double scale = t.inf_norm();
    const double res_tol = 1e-8 * std::max(scale, 1.0);
    const double pivot_nudge =
        std::numeric_limits<double>::epsilon() * std::max(scale, 1.0);

    // neighbours closer than this share an inverse-iteration cluster and get
    // re-orthogonalized against each other
    auto close = [&](double a, double b) {
        return std::abs(a - b) <= 1e-10 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
    };
    for (int j = 1; j < k; ++j)
        if (close(out.values[j], out.values[j - 1])) {
            out.clustered[j] = true;
            out.clustered[j - 1] = true;
        }

    int cluster_start = 0;
    for (int j = 0; j < k; ++j) {
        if (j > 0 && !close(out.values[j], out.values[j - 1])) cluster_start = j;

        tridiag_lu lu;
        lu.factor(t, out.values[j], pivot_nudge);

        std::mt19937_64 rng(0x5ec7a1u + 977u * static_cast<unsigned>(j));
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        double best_res = std::numeric_limits<double>::infinity();
        Eigen::VectorXd best = Eigen::VectorXd::Zero(n);

        for (int attempt = 0; attempt < 4 && best_res > res_tol; ++attempt) {
            Eigen::VectorXd v(n);
            for (int i = 0; i < n; ++i) v[i] = unif(rng);
            v.normalize();
            for (int it = 0; it < 5; ++it) {
                v = lu.solve(v);
                for (int p = cluster_start; p < j; ++p)
                    v -= out.vectors.col(p).dot(v) * out.vectors.col(p);
                double nv = v.norm();
                if (!(nv > 0.0) || !std::isfinite(nv)) break;
                v /= nv;
                double res = (t.apply(v) - out.values[j] * v).norm();
                if (res < best_res) {
                    best_res = res;
                    best = v;
                }
                if (res <= res_tol) break;
            }
        }
        if (!(best_res <= res_tol))
            throw convergence_error("inverse iteration stalled at eigenvalue " +
                                    std::to_string(j));
        int imax = 0;
        best.cwiseAbs().maxCoeff(&imax);
        if (best[imax] < 0.0) best = -best;
        out.vectors.col(j) = best;
        out.residuals[j] = best_res;
    }
    return out;
}

tridiag symmetrize_similar(const tridiag& t) {
    const int n = t.dim();
    tridiag s;
    s.diag = t.diag;
    s.lower.resize(std::max(n - 1, 0));
    s.upper.resize(std::max(n - 1, 0));
    for (int i = 0; i + 1 < n; ++i) {
        double prod = t.lower[i] * t.upper[i];
        if (t.lower[i] == 0.0 && t.upper[i] == 0.0) {
            s.lower[i] = 0.0;
            s.upper[i] = 0.0;
            continue;
        }
        if (!(prod > 0.0))
            throw positivity_error(
                "cannot symmetrize: off-diagonal product is not positive at index " +
                std::to_string(i) + "; the discrete weight loses positivity, refine the grid");
        double e = std::copysign(std::sqrt(prod), t.upper[i]);
        s.lower[i] = e;
        s.upper[i] = e;
    }
    return s;
}

std::vector<std::complex<double>> dense_eigenvalues(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    if (n != m.cols()) throw invalid_parameter("square matrix expected");
    if (n > 400) throw invalid_parameter("dense eigenvalue route is capped at dimension 400");
    if (n == 0) return {};

    Eigen::RealSchur<Eigen::MatrixXd> schur;
    schur.setMaxIterations(30 * n);
    schur.compute(m, /*computeU=*/false);
    if (schur.info() != Eigen::Success)
        throw convergence_error("Schur iteration failed to converge");

    const Eigen::MatrixXd& tm = schur.matrixT();
    std::vector<std::complex<double>> ev;
    ev.reserve(n);
    int i = 0;
    while (i < n) {
        if (i + 1 < n && tm(i + 1, i) != 0.0) {
            double p = 0.5 * (tm(i, i) - tm(i + 1, i + 1));
            double z2 = p * p + tm(i + 1, i) * tm(i, i + 1);
            double mean = tm(i + 1, i + 1) + p;
            if (z2 >= 0.0) {
                double z = std::sqrt(z2);
                ev.emplace_back(mean + z, 0.0);
                ev.emplace_back(mean - z, 0.0);
            } else {
                double z = std::sqrt(-z2);
                ev.emplace_back(mean, z);
                ev.emplace_back(mean, -z);
            }
            i += 2;
        } else {
            ev.emplace_back(tm(i, i), 0.0);
            ++i;
        }
    }
    std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return ev;
}

std::vector<std::complex<double>> dense_eigenvalues(const tridiag& t) {
    return dense_eigenvalues(t.dense());
}

double closed_form_energy(const profile& pr, const model_params& mp, int n) {
    try {
        switch (pr.family) {
        case profile_family::harmonic:
            return harmonic_spectrum(mp, n);
        case profile_family::solitonic: {
            if (std::abs(mp.omega_tilde() - 1.0) > 1e-12) return k_nan;
            if (!(pr.kappa > 0.5)) return k_nan;
            return solitonic_data(pr.q, pr.kappa, mp.alpha, mp.beta).energy(n);
        }
        default:
            return k_nan;
        }
    } catch (const no_real_spectrum&) {
        return k_nan;
    } catch (const complex_lambda&) {
        return k_nan;
    }
}

spectral_report make_report(const profile& pr, const model_params& mp, const grid& g, int k,
                            oracle_mode mode) {
    g.validate();
    mp.validate();
    if (k < 1 || k > 64) throw invalid_parameter("mode count k must be in [1, 64]");
    if (k > g.n_interior) throw invalid_parameter("mode count k exceeds the grid size");

    spectral_report rep;
    rep.g = g;
    rep.k = k;

    operator_matrix sym = build_h_tilde(pr, mp, g);
    operator_matrix full = build_H_tilde(pr, mp, g);
    eigen_pairs pairs = tridiagonal_eigenpairs(sym.m, k);
    rep.energies = pairs.values;
    rep.chi = pairs.vectors;

    rep.closed_form.resize(k);
    for (int j = 0; j < k; ++j) rep.closed_form[j] = closed_form_energy(pr, mp, j);

    // transport chi back through the diagonal similarity
    Eigen::VectorXd rho = sample_rho_tilde(pr, mp, g);
    rep.phi.resize(g.n_interior, k);
    rep.solver_residual.resize(k);
    rep.transport_residual.resize(k);
    rep.transport_bound.resize(k);
    for (int j = 0; j < k; ++j) {
        Eigen::VectorXd chi = rep.chi.col(j);
        rep.solver_residual[j] = (sym.m.apply(chi) - rep.energies[j] * chi).norm();

        Eigen::VectorXd phi = (chi.array() / rho.array()).matrix();
        double np = phi.norm();
        if (!std::isfinite(np) || !(np > 0.0)) {
            rep.phi_overflow = true;
            rep.phi.col(j).setZero();
            rep.transport_residual[j] = k_nan;
            rep.transport_bound[j] = k_nan;
            continue;
        }
        phi /= np;
        rep.phi.col(j) = phi;
        rep.transport_residual[j] =
            (full.m.apply(phi) - rep.energies[j] * phi).norm();

        // similarity defect measured on this very eigenvector
        Eigen::VectorXd defect =
            (rho.array() * full.m.apply((chi.array() / rho.array()).matrix()).array()).matrix() -
            sym.m.apply(chi);
        double sim = interior_norm(defect, 1);
        rep.transport_bound[j] = 10.0 * std::max(rep.solver_residual[j], sim);
    }

    Eigen::MatrixXd gram = rep.chi.transpose() * rep.chi;
    double worst = 0.0;
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c)
            if (r != c) worst = std::max(worst, std::abs(gram(r, c)));
    rep.max_offdiag_overlap = worst;

    // independent dense route on the non-symmetric matrix
    bool want = mode != oracle_mode::off;
    if (want) {
        grid og = g;
        if (g.n_interior > 400) {
            if (mode == oracle_mode::forced)
                og = grid{g.x_min, g.x_max, 200};
            else
                want = false;
        }
        if (want) {
            operator_matrix ofull = (og.n_interior == g.n_interior)
                                        ? full
                                        : build_H_tilde(pr, mp, og);
            std::vector<std::complex<double>> all = dense_eigenvalues(ofull.m);
            rep.oracle_ran = true;
            rep.oracle_dim = og.n_interior;
            double mi = 0.0;
            for (const auto& z : all)
                mi = std::max(mi, std::abs(z.imag()) / std::max(1.0, std::abs(z.real())));
            rep.max_imag = mi;
            int kk = std::min<int>(k, static_cast<int>(all.size()));
            rep.oracle_values.assign(all.begin(), all.begin() + kk);

            Eigen::VectorXd check =
                (og.n_interior == g.n_interior)
                    ? rep.energies
                    : tridiagonal_eigenvalues(build_h_tilde(pr, mp, og).m, kk);
            double gap = 0.0;
            for (int j = 0; j < kk; ++j)
                gap = std::max(gap, std::abs(rep.oracle_values[j].real() - check[j]));
            rep.max_pairing_gap = gap;
        }
    }
    return rep;
}

} // namespace swanson
