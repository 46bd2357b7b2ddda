#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "djcm/config.hpp"
#include "djcm/errors.hpp"
#include "djcm/io.hpp"
#include "djcm/presets.hpp"
#include "djcm/runner.hpp"
#include "djcm/validate.hpp"
#include "djcm/version.hpp"

namespace {

enum ExitCode { kOk = 0, kValidationFailure = 1, kConfigError = 2, kIoError = 3 };

void report_files(const djcm::RunOutcome& out) {
    for (const auto& f : out.files) std::cout << f.generic_string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deformed Jaynes-Cummings simulator for a driven V-type three-level atom"};
    app.set_version_flag("--version", djcm::kVersion);
    app.require_subcommand(1);

    auto* sim = app.add_subcommand("simulate", "Run a configured simulation or sweep");
    std::string config_path;
    std::optional<std::string> sim_out;
    bool sim_oracle = false;
    sim->add_option("--config", config_path, "JSON configuration file")->required();
    sim->add_option("--out", sim_out, "Output directory (overrides output_dir)");
    sim->add_flag("--force-oracle", sim_oracle, "Use the ODE oracle instead of the residue expansion");

    auto* fig = app.add_subcommand("figures", "Regenerate a figure's panels from the figure parameters");
    std::string fig_id;
    std::string fig_out = "figures";
    std::optional<double> fig_t;
    int fig_res = 121;
    bool fig_no_svg = false;
    fig->add_option("id", fig_id, "fig2 .. fig8")->required();
    fig->add_option("--out", fig_out, "Output directory");
    fig->add_option("--t", fig_t, "Husimi evaluation time tau (required for fig7)");
    fig->add_option("--resolution", fig_res, "Husimi grid points per axis (fig7)");
    fig->add_flag("--no-svg", fig_no_svg, "Write CSV only");

    auto* hus = app.add_subcommand("husimi", "Husimi Q function on a square grid");
    djcm::HusimiRequest hreq;
    std::optional<std::string> hus_config;
    std::optional<double> hus_chi;
    std::string hus_out = "husimi";
    bool hus_no_svg = false;
    hus->add_option("--t", hreq.tau, "Evaluation time tau")->required();
    hus->add_option("--range", hreq.range, "Grid covers [-range, range]^2")->required();
    hus->add_option("--resolution", hreq.resolution, "Grid points per axis")->required();
    hus->add_option("--all-sectors", hreq.all_sectors, "Sum sectors 0..n_max");
    hus->add_option("--config", hus_config, "Take model parameters from this config file");
    hus->add_option("--chi", hus_chi, "Kerr parameter (overrides the config)");
    hus->add_option("--out", hus_out, "Output directory");
    hus->add_flag("--no-svg", hus_no_svg, "Write CSV only");

    auto* val = app.add_subcommand("validate", "Run the acceptance suite and print PASS/FAIL per criterion");
    djcm::ValidationOptions vopt;
    std::optional<std::string> val_report;
    val->add_option("--seed", vopt.seed, "Seed for the random spectral sweep");
    val->add_option("--tuples", vopt.tuples, "Number of random parameter tuples");
    val->add_flag("--force-oracle", vopt.force_oracle, "Figure-trajectory checks use the ODE oracle");
    val->add_option("--report", val_report, "Also write the report to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    try {
        if (*sim) {
            auto cfg = djcm::load_config_file(config_path);
            if (sim_out) cfg.base.output_dir = *sim_out;
            if (sim_oracle) cfg.base.force_oracle = true;
            report_files(djcm::simulate(cfg, cfg.base.output_dir));
        } else if (*fig) {
            djcm::FigureOptions opt;
            opt.tau = fig_t;
            opt.husimi_resolution = fig_res;
            opt.svg = !fig_no_svg;
            report_files(djcm::make_figure(fig_id, fig_out, opt));
        } else if (*hus) {
            hreq.params = hus_config ? djcm::load_config_file(*hus_config).base.params : djcm::presets::figure_rows()[0];
            if (hus_chi) {
                hreq.params.deformation =
                    *hus_chi > 0.0 ? djcm::Deformation::kerr(*hus_chi) : djcm::Deformation::identity();
            }
            hreq.svg = !hus_no_svg;
            report_files(djcm::run_husimi(hreq, hus_out));
        } else if (*val) {
            if (vopt.tuples < 1) throw djcm::ConfigError("--tuples must be >= 1");
            const auto report = djcm::run_validation(vopt);
            const std::string text = report.render();
            std::cout << text;
            if (val_report) djcm::io::write_file(*val_report, text);
            return report.all_passed() ? kOk : kValidationFailure;
        }
    } catch (const djcm::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kIoError;
    } catch (const djcm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const djcm::InvalidParams& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidationFailure;
    }
    return kOk;
}
