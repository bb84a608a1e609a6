#pragma once

#include <stdexcept>
#include <string>

namespace swanson {

// Base for everything thrown by the library. The CLI maps subtypes to exit
// codes: configuration/usage problems -> 2, numeric breakdowns -> 3.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user-supplied value (q <= 0, kappa <= 1/2, omega_tilde <= 0, ...).
struct invalid_parameter : error {
    using error::error;
};

// Generator with g' = 0 somewhere on the requested domain.
struct singular_generator : error {
    using error::error;
};

// a(x) <= 0 encountered where the metric construction requires a > 0.
struct positivity_error : error {
    using error::error;
};

// cosh/exp factors grew past the range where double arithmetic keeps the
// advertised tolerances (|a|^2 capped at 1e12).
struct range_error : error {
    using error::error;
};

// omega^2 <= 4*alpha*beta: the harmonic closed-form spectrum is not real.
struct no_real_spectrum : error {
    using error::error;
};

// Discriminant of the solitonic closed form is <= 0, lambda would be complex.
struct complex_lambda : error {
    using error::error;
};

// Factorization requested with both alpha != 0 and beta != 0.
struct not_factorizable : error {
    using error::error;
};

// Iterative solver exceeded its cap; never reported as a silent best effort.
struct convergence_error : error {
    using error::error;
};

// Config / expression text could not be parsed; line is 1-based, 0 = unknown.
struct parse_error : error {
    parse_error(const std::string& msg, int line_no = 0)
        : error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no) {}
    int line;
};

// Structurally valid config with an unusable combination of keys.
struct config_error : error {
    using error::error;
};

} // namespace swanson
