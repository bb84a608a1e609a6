#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "swanson/operators.hpp"

namespace swanson {

// Number of eigenvalues of the symmetric tridiagonal matrix strictly below
// x, by the classic pivot-count recurrence. e2 holds the squared
// off-diagonal entries; pivmin guards against division blow-up.
int sturm_count(const Eigen::VectorXd& diag, const Eigen::VectorXd& e2, double x,
                double pivmin);

// Lowest k eigenvalues of a symmetric tridiagonal matrix, ascending, by
// bisection on the pivot count. Converges each value to
// 1e-12 * max(1, |value|); backward error stays proportional to the
// eigenvector mass on each entry, so large boundary entries do not hurt
// small eigenvalues.
Eigen::VectorXd tridiagonal_eigenvalues(const tridiag& t, int k);

struct eigen_pairs {
    Eigen::VectorXd values;            // ascending
    Eigen::MatrixXd vectors;           // unit 2-norm columns
    std::vector<bool> clustered;       // true when the gap to a neighbour is tiny
    Eigen::VectorXd residuals;         // ||T v - lambda v||_2 per column
};

// Eigenpairs via bisection plus shifted inverse iteration (tridiagonal LU
// with partial pivoting, deterministic seeded starts, Gram-Schmidt inside
// clusters). Throws convergence_error when a residual cannot be pushed
// below 1e-8 * ||T||_inf.
eigen_pairs tridiagonal_eigenpairs(const tridiag& t, int k);

// Diagonal similarity D T D^-1 making the matrix symmetric:
// e_i = sign(u_i) sqrt(l_i u_i). Requires every off-diagonal product
// l_i u_i to be positive (or both entries zero); otherwise the discrete
// weight the similarity encodes is not positive and a positivity_error is
// thrown (refining the grid restores positivity for smooth drift).
tridiag symmetrize_similar(const tridiag& t);

// All eigenvalues of a real square matrix through its real Schur form,
// reading the 1x1 and 2x2 diagonal blocks. Sorted by (real, imag).
// Dimension is capped at 400; info failure raises convergence_error.
std::vector<std::complex<double>> dense_eigenvalues(const Eigen::MatrixXd& m);
std::vector<std::complex<double>> dense_eigenvalues(const tridiag& t);

enum class oracle_mode { off, automatic, forced };

// Full spectral picture for one model on one grid.
struct spectral_report {
    grid g;
    int k = 0;

    Eigen::VectorXd energies;       // lowest k of the symmetric form
    Eigen::VectorXd closed_form;    // NaN entries when no formula applies
    Eigen::MatrixXd chi;            // eigenvectors of the symmetric form
    Eigen::MatrixXd phi;            // rho^-1 chi, renormalized per column
    bool phi_overflow = false;

    Eigen::VectorXd solver_residual;     // ||h chi - E chi|| / ||chi||
    Eigen::VectorXd transport_residual;  // ||H phi - E phi|| / ||phi||
    Eigen::VectorXd transport_bound;     // 10 max(solver, similarity defect)
    double max_offdiag_overlap = 0.0;    // orthonormality defect of chi

    bool oracle_ran = false;
    int oracle_dim = 0;
    std::vector<std::complex<double>> oracle_values;  // lowest k by real part
    double max_imag = 0.0;        // max |Im| / max(1, |Re|) over the oracle set
    double max_pairing_gap = 0.0; // lowest-k match between routes on the oracle grid
};

// Closed-form energy for the given family, NaN when the family has no
// formula at these parameters (Morse always; solitonic away from unit
// omega_tilde; harmonic when omega^2 <= 4 alpha beta).
double closed_form_energy(const profile& pr, const model_params& mp, int n);

spectral_report make_report(const profile& pr, const model_params& mp, const grid& g, int k,
                            oracle_mode mode);

} // namespace swanson
