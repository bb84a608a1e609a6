#pragma once

#include <optional>
#include <string>
#include <vector>

#include "swanson/grid.hpp"
#include "swanson/model.hpp"
#include "swanson/profile.hpp"

namespace swanson {

// Parsed key = value configuration. Parsing is strict: unknown keys,
// duplicate keys and malformed numbers raise parse_error with the line
// number; cross-key requirements raise config_error. Documented defaults:
// profile.mu = 0, k = 5, grid domain +-12/scale (scale = q, |p|, or 1),
// sweep.threads picked from the hardware.
struct config {
    std::string job;     // veff | metric | spectrum | verify | sweep
    std::string family;  // harmonic | solitonic | morse | canonical | custom

    std::optional<double> omega, alpha, beta;
    std::optional<double> q, kappa, p, mu;
    std::optional<std::string> expr_a, expr_b;

    std::optional<double> x_min, x_max;
    std::optional<int> n;
    int k = 5;

    std::optional<std::string> sweep_parameter;
    std::optional<double> sweep_start, sweep_stop;
    std::optional<int> sweep_steps;
    int sweep_threads = 0;  // 0 = pick from the hardware

    model_params params() const;  // requires model.omega/alpha/beta present
};

config parse_config_text(const std::string& text);
config load_config(const std::string& path);

// Family construction with full cross-key validation (required keys
// present, inapplicable keys absent, parameter ranges). family "canonical"
// builds the unit-commutator profile from a generator: profile.q > 0 picks
// the arctan-of-exponential generator (mass sech^2 qx), profile.p != 0 the
// exponential one; exactly one of the two must be given.
profile build_profile(const config& cfg);

// Grid from the config; grid.n is required, and a missing domain defaults
// to +-12/scale with scale = q or |p| when the family has one, else 1.
grid build_grid(const config& cfg, const profile& pr);

// Sweep description after up-front validation of every point of the swept
// parameter (each point must itself produce a valid model + profile + grid).
struct sweep_plan {
    std::string parameter;
    std::vector<double> values;
    int threads = 1;
};
sweep_plan build_sweep(const config& cfg);

// The config with one entry overridden; used to realize sweep points.
config with_parameter(const config& cfg, const std::string& name, double value);

} // namespace swanson
