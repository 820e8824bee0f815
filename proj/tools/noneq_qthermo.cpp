// noneq_qthermo.cpp — Command-line front end: run, validate, figure

#include "noneq_qthermo/config.hpp"
#include "noneq_qthermo/errors.hpp"
#include "noneq_qthermo/figures.hpp"
#include "noneq_qthermo/numerics.hpp"
#include "noneq_qthermo/scenario.hpp"
#include "noneq_qthermo/validation.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw nqt::ConfigError("cannot read config file '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

int run_command(const std::string& config_path, const std::string& out_dir) {
    const nqt::SimulationConfig config = nqt::parse_config(read_file(config_path));
    const nqt::RunOutcome outcome = nqt::run_scenario(config, out_dir);
    if (!outcome.ok) {
        std::cerr << "run failed (" << outcome.error_kind << "): " << outcome.error_message << '\n'
                  << "error record written to " << (outcome.directory / "meta.json").string() << '\n';
        return 1;
    }
    std::cout << "wrote " << outcome.directory.string() << '\n';
    return 0;
}

int validate_command(const nqt::ValidationOptions& options) {
    const nqt::ValidationReport report = nqt::run_validation(
        options, [](const nqt::CheckResult& c) { std::cout << nqt::format_check(c) << std::endl; });
    std::cout << (report.passed() ? "validation passed" : "validation FAILED") << '\n';
    return report.passed() ? 0 : 1;
}

int figure_command(const std::string& id, const std::string& out_dir,
                   const nqt::FigureOptions& options) {
    for (const auto& file : nqt::figure_data(id, out_dir, options)) {
        std::cout << "wrote " << file.string() << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonequilibrium thermodynamics of a damped bosonic mode in an Ohmic reservoir"};
    app.require_subcommand(1);

    std::string config_path;
    std::string run_out = "run";
    auto* run = app.add_subcommand("run", "Simulate one scenario from a JSON config");
    run->add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
    run->add_option("--out", run_out, "Run directory for series and meta.json")->capture_default_str();

    nqt::ValidationOptions vopt;
    auto* validate = app.add_subcommand("validate", "Run the acceptance criteria and invariants");
    validate->add_flag("--fast", vopt.fast, "Temperature-sweep checks on kT0 = 20 only");
    validate->add_option("--dt", vopt.dt, "Time step of the sweep grid")->capture_default_str();
    validate->add_option("--t-end", vopt.t_end, "End time of the sweep grid")->capture_default_str();
    validate->add_flag("!--no-invariants", vopt.invariants, "Skip the module invariants");

    std::string figure_id;
    std::string figure_out = "figures";
    nqt::FigureOptions fopt;
    auto* figure = app.add_subcommand("figure", "Write plot-ready .dat files for one figure");
    figure->add_option("--id", figure_id, "Figure id")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
    figure->add_option("--out", figure_out, "Output directory")->required();
    figure->add_option("--dt", fopt.dt, "Time step")->capture_default_str();
    figure->add_option("--t-end", fopt.t_end, "End time")->capture_default_str();
    figure->add_option("--stride", fopt.stride, "Rows written every stride samples")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        nqt::num::set_thread_count(nqt::num::threads_from_environment());
        if (*run) {
            return run_command(config_path, run_out);
        }
        if (*validate) {
            return validate_command(vopt);
        }
        return figure_command(figure_id, figure_out, fopt);
    } catch (const nqt::Error& e) {
        std::cerr << e.kind() << " error: " << e.what() << '\n';
        return 2;
    }
}
