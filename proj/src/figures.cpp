// figures.cpp — Plot-ready data files for the three figure parameter sets

#include "noneq_qthermo/figures.hpp"

#include "noneq_qthermo/errors.hpp"
#include "noneq_qthermo/scenario.hpp"

#include <fstream>
#include <functional>

namespace nqt {

namespace {

using Field = std::function<double(const ThermoRecord&)>;

struct Column {
    std::string name;
    std::size_t run;
    Field field;
};

void write_dat(const std::filesystem::path& file, const std::string& title,
               const std::string& parameters, const std::vector<ScenarioResult>& runs,
               const std::vector<Column>& columns, std::size_t stride) {
    std::ofstream out(file, std::ios::binary);
    if (!out) {
        throw DomainError("cannot open " + file.string() + " for writing");
    }
    out << "# " << title << '\n';
    out << "# " << parameters << '\n';
    out << "# units: hbar = k = 1, energies in hbar omega0, times in 1/omega0\n";
    out << "# t";
    for (const Column& c : columns) {
        out << ' ' << c.name;
    }
    out << '\n';
    const std::size_t count = runs.front().ledger.records.size();
    for (std::size_t j : sampled_indices(count, stride)) {
        out << format_number(runs.front().ledger.records[j].time);
        for (const Column& c : columns) {
            out << ' ' << format_number(c.field(runs[c.run].ledger.records[j]));
        }
        out << '\n';
    }
    if (!out) {
        throw DomainError("failed writing " + file.string());
    }
}

std::string parameter_line(const SimulationConfig& c, const std::string& temperatures) {
    return "eta/eta_c = " + format_number(c.eta_over_eta_c) + ", omega_c = " +
           format_number(c.omega_c) + ", alpha0 = " + format_number(c.alpha0_re) + ", kT0 = " +
           temperatures + ", dt = " + format_number(c.dt) + ", t_end = " + format_number(c.t_end);
}

std::vector<Column> per_temperature(const std::string& symbol, const Field& field) {
    std::vector<Column> cols;
    for (std::size_t k = 0; k < std::size(kFigureTemperatures); ++k) {
        cols.push_back({symbol + "_kT" + format_number(kFigureTemperatures[k]), k, field});
    }
    return cols;
}

} // namespace

SimulationConfig figure_config(double temperature, const FigureOptions& options) {
    SimulationConfig c;
    c.eta_over_eta_c = 0.1;
    c.omega_c = 10.0;
    c.kT0 = temperature;
    c.alpha0_re = 1.0;
    c.alpha0_im = 0.0;
    c.dt = options.dt;
    c.t_end = options.t_end;
    c.stride = options.stride;
    return c;
}

std::vector<std::filesystem::path> figure_data(std::string_view id,
                                               const std::filesystem::path& directory,
                                               const FigureOptions& options) {
    std::filesystem::create_directories(directory);
    std::vector<std::filesystem::path> written;
    const std::size_t stride = options.stride;

    if (id == "fig1") {
        const SimulationConfig config = figure_config(20.0, options);
        const std::vector<ScenarioResult> runs{simulate(config)};
        const std::string params = parameter_line(config, "20");
        written.push_back(directory / "fig1a.dat");
        write_dat(written.back(), "energy entropy, von Neumann entropy and their rates", params, runs,
                  {{"S_energy", 0, [](const ThermoRecord& r) { return r.energy_entropy; }},
                   {"S_vn", 0, [](const ThermoRecord& r) { return r.vn_entropy; }},
                   {"dS_energy_dt", 0, [](const ThermoRecord& r) { return r.flux_heat; }},
                   {"dS_vn_dt", 0, [](const ThermoRecord& r) { return r.entropy_rate; }}},
                  stride);
        written.push_back(directory / "fig1b.dat");
        write_dat(written.back(), "total entropy rate, coherence production and heat flux", params,
                  runs,
                  {{"Sigma", 0, [](const ThermoRecord& r) { return r.entropy_rate; }},
                   {"Phi_C", 0, [](const ThermoRecord& r) { return r.flux_coherence; }},
                   {"Phi_Q", 0, [](const ThermoRecord& r) { return r.flux_heat; }}},
                  stride);
        return written;
    }

    if (id != "fig2" && id != "fig3") {
        throw DomainError("unknown figure id '" + std::string(id) + "', expected fig1, fig2 or fig3");
    }
    const SimulationConfig base = figure_config(kFigureTemperatures[0], options);
    const std::vector<ScenarioResult> runs = simulate_temperatures(base, kFigureTemperatures);
    const std::string params = parameter_line(base, "15, 20, 25");

    struct Panel {
        const char* file;
        const char* title;
        const char* symbol;
        Field field;
    };
    std::vector<Panel> panels;
    if (id == "fig2") {
        panels = {
            {"fig2a.dat", "internal energy U", "U", [](const ThermoRecord& r) { return r.internal_energy; }},
            {"fig2b.dat", "energy entropy", "S_energy", [](const ThermoRecord& r) { return r.energy_entropy; }},
            {"fig2c.dat", "dynamical temperature T", "T", [](const ThermoRecord& r) { return r.temperature; }},
            {"fig2d.dat", "free energy F", "F", [](const ThermoRecord& r) { return r.free_energy; }},
        };
    } else {
        panels = {
            {"fig3a.dat", "internal energy rate dU/dt", "dU_dt", [](const ThermoRecord& r) { return r.energy_rate; }},
            {"fig3b.dat", "work rate dW/dt", "dW_dt", [](const ThermoRecord& r) { return r.work_rate; }},
            {"fig3c.dat", "heat rate dQ/dt", "dQ_dt", [](const ThermoRecord& r) { return r.heat_rate; }},
        };
    }
    for (const Panel& p : panels) {
        written.push_back(directory / p.file);
        write_dat(written.back(), p.title, params, runs, per_temperature(p.symbol, p.field), stride);
    }
    return written;
}

} // namespace nqt
