// Command-line driver: reads a config file naming a job (veff, metric,
// spectrum, verify, sweep) and writes CSV/JSON results into --out.
// Exit codes: 0 success, 1 verification failure, 2 usage or config error,
// 3 numeric failure. Errors are reported as JSON on stderr.
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "swanson/errors.hpp"
#include "swanson/run.hpp"

namespace {

void report_error(const std::string& type, const std::string& message) {
    nlohmann::json j;
    j["error"]["type"] = type;
    j["error"]["message"] = message;
    std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    swanson::run_options opt;

    CLI::App app{"generalized ladder-operator model: potentials, metrics, spectra"};
    app.add_option("--config", opt.config_path, "path to the job config file")
        ->required();
    app.add_option("--out", opt.out_dir, "output directory (created if missing)");
    app.add_flag("--dump-matrix", opt.dump_matrix,
                 "also write the assembled tridiagonal matrices as text");
    app.add_flag("--oracle", opt.force_oracle,
                 "force the dense nonsymmetric solve even on large grids");
    app.add_flag("--quiet", opt.quiet, "suppress progress output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        report_error("usage_error", e.what());
        return 2;
    }

    try {
        return swanson::run_job(opt, std::cout);
    } catch (const swanson::parse_error& e) {
        report_error("parse_error", e.what());
        return 2;
    } catch (const swanson::config_error& e) {
        report_error("config_error", e.what());
        return 2;
    } catch (const swanson::invalid_parameter& e) {
        report_error("invalid_parameter", e.what());
        return 2;
    } catch (const swanson::error& e) {
        report_error("numeric_error", e.what());
        return 3;
    } catch (const std::exception& e) {
        report_error("internal_error", e.what());
        return 3;
    }
}
