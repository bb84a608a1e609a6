#pragma once

#include <Eigen/Dense>

#include "swanson/errors.hpp"

namespace swanson {

// Uniform interior grid for Dirichlet discretizations: n_interior nodes
// strictly inside [x_min, x_max] with x_i = x_min + (i+1) h, so the
// boundary values live off the ends and are pinned to zero.
struct grid {
    double x_min = 0.0;
    double x_max = 0.0;
    int n_interior = 0;

    double h() const { return (x_max - x_min) / (n_interior + 1); }
    double x(int i) const { return x_min + (i + 1) * h(); }

    Eigen::VectorXd nodes() const {
        Eigen::VectorXd v(n_interior);
        for (int i = 0; i < n_interior; ++i) v[i] = x(i);
        return v;
    }

    // Same interval with exactly halved spacing: h(2n+1) = h(n)/2.
    grid refined() const { return grid{x_min, x_max, 2 * n_interior + 1}; }

    static grid symmetric(double half_width, int n_interior) {
        return grid{-half_width, half_width, n_interior};
    }

    void validate() const {
        if (!(x_max > x_min)) throw invalid_parameter("grid requires x_max > x_min");
        if (n_interior < 16) throw invalid_parameter("grid requires n >= 16 interior nodes");
    }
};

} // namespace swanson
