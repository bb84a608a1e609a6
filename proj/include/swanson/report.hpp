#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swanson/model.hpp"
#include "swanson/operators.hpp"
#include "swanson/spectra.hpp"

namespace swanson {

// Shortest round-trippable decimal form (%.17g); NaN and infinities are
// normalized to "nan", "inf", "-inf" so output bytes are platform stable.
std::string g17(double v);

// FNV-1a 64-bit over a byte string, and its fixed-width hex rendering.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

// One sweep result row; lambda is NaN away from the solitonic closed form.
struct sweep_row {
    double param_value = 0.0;
    double e0 = 0.0;
    double max_imag = 0.0;
    double delta = 0.0;
    double lambda = 0.0;
};

void write_coefficients_csv(const std::string& path, const coefficient_field& f,
                            const metric_data& m);
void write_spectrum_csv(const std::string& path, const spectral_report& rep);
void write_wavefunctions_csv(const std::string& path, const spectral_report& rep);

// Closed-form table: mode index, energy, checksum of the max-normalized
// bound-state samples on the grid nodes.
void write_closedform_csv(const std::string& path, const profile& pr, const model_params& mp,
                          const grid& g, int k);

void write_sweep_csv(const std::string& path, const std::string& param_name,
                     const std::vector<sweep_row>& rows);

void write_verify_json(const std::string& path, const std::vector<residual_record>& records);

// Triplet dump "row col value", one entry per line, %.17g values.
void write_matrix_txt(const std::string& path, const tridiag& t);

} // namespace swanson
