#pragma once

#include <cmath>
#include <functional>

#include "swanson/errors.hpp"

namespace swanson {

// Adaptive Simpson rule with Richardson correction. Used for the gauge
// weight exponent and for B(x) on custom profiles; families with closed
// forms never call it outside of tests. abs_tol is distributed over
// subintervals in the usual halving fashion, which slightly over-refines
// and keeps the result comfortably inside the requested tolerance.
inline double integrate(const std::function<double(double)>& f, double lo, double hi,
                        double abs_tol = 1e-12, double rel_tol = 1e-13, int max_depth = 52) {
    if (lo == hi) return 0.0;

    struct simpson {
        const std::function<double(double)>& f;
        double rel_tol;
        int max_depth;

        double recurse(double a, double b, double fa, double fm, double fb, double whole,
                       double tol, int depth) const {
            double m = 0.5 * (a + b);
            double lm = 0.5 * (a + m);
            double rm = 0.5 * (m + b);
            double flm = f(lm);
            double frm = f(rm);
            double h6 = (b - a) / 12.0;
            double left = h6 * (fa + 4.0 * flm + fm);
            double right = h6 * (fm + 4.0 * frm + fb);
            double err = left + right - whole;
            if (depth >= max_depth)
                throw convergence_error("quadrature did not converge (depth cap reached)");
            double scale = std::fabs(left + right);
            if (std::fabs(err) <= 15.0 * (tol + rel_tol * scale))
                return left + right + err / 15.0;
            return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
                   recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
        }
    };

    double sign = 1.0;
    if (hi < lo) {
        std::swap(lo, hi);
        sign = -1.0;
    }
    double m = 0.5 * (lo + hi);
    double fa = f(lo);
    double fm = f(m);
    double fb = f(hi);
    if (!std::isfinite(fa) || !std::isfinite(fm) || !std::isfinite(fb))
        throw range_error("quadrature integrand is not finite on the interval");
    double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    simpson s{f, rel_tol, max_depth};
    return sign * s.recurse(lo, hi, fa, fm, fb, whole, abs_tol, 0);
}

} // namespace swanson
