#include "swanson/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "swanson/closedform.hpp"
#include "swanson/errors.hpp"

namespace swanson {

std::string g17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw error("cannot open for writing: " + path);
    return os;
}

constexpr double k_nan = std::numeric_limits<double>::quiet_NaN();

} // namespace

void write_coefficients_csv(const std::string& path, const coefficient_field& f,
                            const metric_data& m) {
    if (f.x.size() != m.x.size())
        throw invalid_parameter("coefficient and metric samples use different grids");
    std::ofstream os = open_out(path);
    os << "x,a,b,c1,c2,veff,rho_tilde,zeta_plus\n";
    for (Eigen::Index i = 0; i < f.x.size(); ++i)
        os << g17(f.x[i]) << ',' << g17(f.a[i]) << ',' << g17(f.b[i]) << ',' << g17(f.c1[i])
           << ',' << g17(f.c2[i]) << ',' << g17(f.v_eff[i]) << ',' << g17(m.rho_tilde[i])
           << ',' << g17(m.zeta_plus[i]) << '\n';
    if (!os) throw error("write failed: " + path);
}

void write_spectrum_csv(const std::string& path, const spectral_report& rep) {
    std::ofstream os = open_out(path);
    os << "n,E_numeric,E_closed_form,abs_err,rel_err,max_im\n";
    for (int j = 0; j < rep.k; ++j) {
        double closed = rep.closed_form[j];
        double abs_err = std::abs(rep.energies[j] - closed);
        double rel_err = abs_err / std::abs(closed);
        double im = k_nan;
        if (rep.oracle_ran && j < static_cast<int>(rep.oracle_values.size()))
            im = std::abs(rep.oracle_values[j].imag());
        os << j << ',' << g17(rep.energies[j]) << ',' << g17(closed) << ',' << g17(abs_err)
           << ',' << g17(rel_err) << ',' << g17(im) << '\n';
    }
    if (!os) throw error("write failed: " + path);
}

void write_wavefunctions_csv(const std::string& path, const spectral_report& rep) {
    std::ofstream os = open_out(path);
    os << 'x';
    for (int j = 0; j < rep.k; ++j) os << ",chi" << j;
    for (int j = 0; j < rep.k; ++j) os << ",phi" << j;
    os << '\n';
    for (int i = 0; i < rep.g.n_interior; ++i) {
        os << g17(rep.g.x(i));
        for (int j = 0; j < rep.k; ++j) os << ',' << g17(rep.chi(i, j));
        for (int j = 0; j < rep.k; ++j) os << ',' << g17(rep.phi(i, j));
        os << '\n';
    }
    if (!os) throw error("write failed: " + path);
}

void write_closedform_csv(const std::string& path, const profile& pr, const model_params& mp,
                          const grid& g, int k) {
    std::ofstream os = open_out(path);
    os << "n,E_n,chi_checksum\n";
    for (int n = 0; n < k; ++n) {
        double en = closed_form_energy(pr, mp, n);

        Eigen::VectorXd samples(g.n_interior);
        bool have = true;
        try {
            for (int i = 0; i < g.n_interior; ++i) {
                double x = g.x(i);
                if (pr.family == profile_family::harmonic)
                    samples[i] = harmonic_wavefunction(mp, n, x);
                else if (pr.family == profile_family::solitonic)
                    samples[i] =
                        solitonic_data(pr.q, pr.kappa, mp.alpha, mp.beta).chi(n, x);
                else
                    have = false;
                if (!have) break;
            }
        } catch (const error&) {
            have = false;
        }

        std::string checksum;
        if (have) {
            double peak = samples.cwiseAbs().maxCoeff();
            if (peak > 0.0) samples /= peak;
            std::string bytes;
            bytes.reserve(samples.size() * 20);
            for (Eigen::Index i = 0; i < samples.size(); ++i) {
                bytes += g17(samples[i]);
                bytes += '\n';
            }
            checksum = hex64(fnv1a64(bytes));
        }
        os << n << ',' << g17(en) << ',' << checksum << '\n';
    }
    if (!os) throw error("write failed: " + path);
}

void write_sweep_csv(const std::string& path, const std::string& param_name,
                     const std::vector<sweep_row>& rows) {
    std::ofstream os = open_out(path);
    os << param_name << ",E0,max_im,delta,lambda\n";
    for (const sweep_row& r : rows)
        os << g17(r.param_value) << ',' << g17(r.e0) << ',' << g17(r.max_imag) << ','
           << g17(r.delta) << ',' << g17(r.lambda) << '\n';
    if (!os) throw error("write failed: " + path);
}

void write_verify_json(const std::string& path, const std::vector<residual_record>& records) {
    nlohmann::json checks = nlohmann::json::array();
    bool all = true;
    for (const residual_record& r : records) {
        checks.push_back({{"name", r.name},
                          {"h", r.h},
                          {"residual", r.residual},
                          {"order_estimate", r.order_estimate},
                          {"pass", r.pass},
                          {"note", r.note}});
        all = all && r.pass;
    }
    nlohmann::json doc = {{"all_pass", all}, {"checks", checks}};
    std::ofstream os = open_out(path);
    os << doc.dump(2) << '\n';
    if (!os) throw error("write failed: " + path);
}

void write_matrix_txt(const std::string& path, const tridiag& t) {
    std::ofstream os = open_out(path);
    const int n = t.dim();
    os << "# tridiagonal, dim " << n << ", entries: row col value\n";
    for (int i = 0; i < n; ++i) {
        os << i << ' ' << i << ' ' << g17(t.diag[i]) << '\n';
        if (i + 1 < n) {
            os << i << ' ' << i + 1 << ' ' << g17(t.upper[i]) << '\n';
            os << i + 1 << ' ' << i << ' ' << g17(t.lower[i]) << '\n';
        }
    }
    if (!os) throw error("write failed: " + path);
}

} // namespace swanson
