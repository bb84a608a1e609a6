#pragma once

// Reference routes used only by tests. Everything here is derived
// independently of the library code under test: plain finite differences,
// Romberg integration, and explicit polynomial series, so agreement is a
// genuine cross-check rather than the same algorithm twice.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

using fn = std::function<double(double)>;

// Five-point central first derivative, O(h^4).
inline double d1(const fn& f, double x, double h = 1e-3) {
    return (-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2 * h)) / (12.0 * h);
}

// Five-point central second derivative, O(h^4).
inline double d2(const fn& f, double x, double h = 1e-3) {
    return (-f(x + 2 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2 * h)) /
           (12.0 * h * h);
}

// Romberg integration with trapezoid halving and Richardson extrapolation.
inline double romberg(const fn& f, double lo, double hi, int levels = 18, double tol = 1e-13) {
    std::vector<double> prev(1), cur;
    double h = hi - lo;
    prev[0] = 0.5 * h * (f(lo) + f(hi));
    for (int k = 1; k < levels; ++k) {
        h *= 0.5;
        long pts = 1L << (k - 1);
        double sum = 0.0;
        for (long i = 0; i < pts; ++i) sum += f(lo + (2 * i + 1) * h);
        cur.assign(k + 1, 0.0);
        cur[0] = 0.5 * prev[0] + h * sum;
        double p4 = 1.0;
        for (int m = 1; m <= k; ++m) {
            p4 *= 4.0;
            cur[m] = cur[m - 1] + (cur[m - 1] - prev[m - 1]) / (p4 - 1.0);
        }
        if (k > 3 && std::abs(cur[k] - prev[k - 1]) <= tol * (1.0 + std::abs(cur[k])))
            return cur[k];
        prev = cur;
    }
    return prev.back();
}

// Explicit Gegenbauer series C_n^l(t) = sum_k (-1)^k binom-ratio (2t)^(n-2k),
// written with lgamma so no recurrence is shared with the library.
inline double gegenbauer_series(int n, double lambda, double t) {
    double sum = 0.0;
    for (int k = 0; 2 * k <= n; ++k) {
        double lg = std::lgamma(lambda + n - k) - std::lgamma(lambda) - std::lgamma(k + 1.0) -
                    std::lgamma(n - 2.0 * k + 1.0);
        double term = std::exp(lg) * std::pow(2.0 * t, n - 2 * k);
        sum += (k % 2 == 0) ? term : -term;
    }
    return sum;
}

// Explicit physicists' Hermite polynomials for n <= 6.
inline double hermite_explicit(int n, double t) {
    double t2 = t * t;
    switch (n) {
        case 0: return 1.0;
        case 1: return 2.0 * t;
        case 2: return 4.0 * t2 - 2.0;
        case 3: return 8.0 * t2 * t - 12.0 * t;
        case 4: return 16.0 * t2 * t2 - 48.0 * t2 + 12.0;
        case 5: return 32.0 * t2 * t2 * t - 160.0 * t2 * t + 120.0 * t;
        case 6: return 64.0 * t2 * t2 * t2 - 480.0 * t2 * t2 + 720.0 * t2 - 120.0;
        default: throw std::out_of_range("hermite_explicit handles n <= 6");
    }
}

inline std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> xs(count);
    for (int i = 0; i < count; ++i)
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    return xs;
}

}  // namespace oracle
