#pragma once

#include <Eigen/Dense>
#include <string>

#include "swanson/closedform.hpp"
#include "swanson/grid.hpp"
#include "swanson/model.hpp"

namespace swanson {

// Real tridiagonal operator: diag has dim entries, lower/upper have dim-1;
// lower[i] is entry (i+1, i) and upper[i] is entry (i, i+1).
struct tridiag {
    Eigen::VectorXd diag, lower, upper;

    int dim() const { return static_cast<int>(diag.size()); }

    Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
    tridiag transposed() const { return tridiag{diag, upper, lower}; }
    Eigen::MatrixXd dense() const;
    double inf_norm() const;  // max absolute row sum
    bool exactly_symmetric() const;
};

enum class operator_tag {
    first_order,    // -wt d a^2 d + (wt a a' + c1) d + c2
    symmetric,      // -wt d a^2 d + V_eff
    ladder,         // eta  = a d + b
    ladder_adjoint, // eta+ = -d a + b
    intertwiner,    // eta1 = a d + b1
    multiplier,     // diagonal sampling
};

struct operator_matrix {
    tridiag m;
    operator_tag tag = operator_tag::multiplier;
};

// Kernel shared by both second-order builders: row i of
//   -(wt/h^2) [A_{i+1/2}(u_{i+1} - u_i) - A_{i-1/2}(u_i - u_{i-1})] + V_i u_i
// with Dirichlet ends. mid_a2 holds the n+1 midpoint samples of a^2; both
// off-diagonals are one shared array, so the result is symmetric entry for
// entry.
tridiag sturm_liouville_matrix(const Eigen::VectorXd& mid_a2, const Eigen::VectorXd& v_diag,
                               double wt, double h);

operator_matrix build_h_tilde(const profile& pr, const model_params& mp, const grid& g);
operator_matrix build_H_tilde(const profile& pr, const model_params& mp, const grid& g);
operator_matrix build_eta(const profile& pr, const grid& g);
operator_matrix build_eta_dagger(const profile& pr, const grid& g);
operator_matrix build_eta_one(const profile& pr, const model_params& mp, const grid& g);

// Diagonal samplings of the metric quantities on the grid nodes.
Eigen::VectorXd sample_rho_tilde(const profile& pr, const model_params& mp, const grid& g);
Eigen::VectorXd sample_zeta_plus(const profile& pr, const model_params& mp, const grid& g);

// Smooth decaying test vectors: Gaussians exp(-(x-c)^2 / 2 s^2) with
// c in {-1, 0, 1} and s in {0.5, 1}, sampled on the interior nodes.
Eigen::MatrixXd gaussian_test_vectors(const grid& g);

// Norm over rows at least `margin` away from either end. Rows whose stencil
// reaches the boundary are excluded; the identities under test hold in the
// interior of the line.
double interior_norm(const Eigen::VectorXd& r, int margin);

// Residuals: max over test-vector columns of the interior-restricted
// l2 norm of the defect, normalized by the column norm.

// || D(rho) H D(rho)^-1 v - h v ||, margin 1.
double residual_similarity(const profile& pr, const model_params& mp, const grid& g,
                           const Eigen::MatrixXd& test_vectors);

// || D(zeta) H D(zeta)^-1 v - H^T v ||, margin 1. The control variant swaps
// zeta for its inverse and must not decay under refinement; it guards
// against a trivially passing implementation.
double residual_pseudo_hermiticity(const profile& pr, const model_params& mp, const grid& g,
                                   const Eigen::MatrixXd& test_vectors);
double residual_pseudo_hermiticity_control(const profile& pr, const model_params& mp,
                                           const grid& g, const Eigen::MatrixXd& test_vectors);

// || (eta1^T eta1 + xi) v - h v ||, margin 2 (the product stencil is wider).
double residual_factorization(const profile& pr, const model_params& mp, const grid& g,
                              const Eigen::MatrixXd& test_vectors);

// || (eta eta+ - eta+ eta - diag(2ab' - a a'')) v ||, margin 2.
double residual_commutator(const profile& pr, const grid& g,
                           const Eigen::MatrixXd& test_vectors);

// log2(coarse/fine); h is halved between the two residuals, so second-order
// stencils give values near 2.
double order_estimate(double residual_h, double residual_h_half);

// One row of the verification report.
struct residual_record {
    std::string name;
    double h = 0.0;
    double residual = 0.0;
    double order_estimate = 0.0;  // NaN when a single grid was used
    bool pass = true;
    std::string note;
};

} // namespace swanson
