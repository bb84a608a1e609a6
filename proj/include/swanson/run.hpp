#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "swanson/config.hpp"
#include "swanson/operators.hpp"

namespace swanson {

// Options collected from the command line. The job itself is named in the
// config file, so one binary drives every workflow.
struct run_options {
    std::string config_path;
    std::string out_dir = ".";
    bool dump_matrix = false;
    bool force_oracle = false;
    bool quiet = false;
};

// Full identity-check suite used by the verify job: similarity and
// pseudo-hermiticity defects with grid-refinement order estimates,
// closed-form comparisons for the potential and the metric density,
// metric reciprocity, eigenvalue convergence order, spectral reality of
// the nonsymmetric form, and route-equivalence of its spectrum.
std::vector<residual_record> verify_checks(const profile& pr, const model_params& mp,
                                           const grid& g, bool quiet, std::ostream& out);

// Runs the job named in the config. Returns 0 on success and 1 when a
// verification-style job finds a tolerance violation. Configuration and
// numeric failures escape as exceptions.
int run_job(const run_options& opt, std::ostream& out);

}  // namespace swanson
