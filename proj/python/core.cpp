// core.cpp — Python bindings for the simulation library

#include "noneq_qthermo/config.hpp"
#include "noneq_qthermo/errors.hpp"
#include "noneq_qthermo/figures.hpp"
#include "noneq_qthermo/gaussian_state.hpp"
#include "noneq_qthermo/scenario.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace nqt;

namespace {

template <class T>
py::array_t<T> to_array(const std::vector<T>& v) {
    py::array_t<T> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

py::dict series_columns(const ScenarioResult& r) {
    const auto& recs = r.ledger.records;
    const std::size_t n = recs.size();
    std::vector<std::complex<double>> u(r.propagator.u.begin(), r.propagator.u.begin() + n);
    auto column = [&](auto field) {
        std::vector<double> out(n);
        for (std::size_t j = 0; j < n; ++j) {
            out[j] = field(j);
        }
        return to_array(out);
    };
    py::dict d;
    d["t"] = column([&](std::size_t j) { return recs[j].time; });
    d["u"] = to_array(u);
    d["v"] = column([&](std::size_t j) { return r.propagator.v[j]; });
    d["omega_ren"] = column([&](std::size_t j) { return r.coefficients.omega_ren[j]; });
    d["gamma"] = column([&](std::size_t j) { return r.coefficients.gamma[j]; });
    d["gamma_tilde"] = column([&](std::size_t j) { return r.coefficients.gamma_tilde[j]; });
    d["n"] = column([&](std::size_t j) { return recs[j].occupation; });
    d["U"] = column([&](std::size_t j) { return recs[j].internal_energy; });
    d["dU_dt"] = column([&](std::size_t j) { return recs[j].energy_rate; });
    d["dW_dt"] = column([&](std::size_t j) { return recs[j].work_rate; });
    d["dQ_dt"] = column([&](std::size_t j) { return recs[j].heat_rate; });
    d["S_energy"] = column([&](std::size_t j) { return recs[j].energy_entropy; });
    d["S_vn"] = column([&](std::size_t j) { return recs[j].vn_entropy; });
    d["C"] = column([&](std::size_t j) { return recs[j].coherence; });
    d["Sigma"] = column([&](std::size_t j) { return recs[j].entropy_rate; });
    d["Phi_Q"] = column([&](std::size_t j) { return recs[j].flux_heat; });
    d["Phi_C"] = column([&](std::size_t j) { return recs[j].flux_coherence; });
    d["T"] = column([&](std::size_t j) { return recs[j].temperature; });
    d["F"] = column([&](std::size_t j) { return recs[j].free_energy; });
    py::list flags;
    for (const ThermoRecord& rec : recs) {
        flags.append(to_string(rec.temperature_flag));
    }
    d["T_flag"] = flags;
    d["warnings"] = r.warnings;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Open-system dynamics and thermodynamics of a damped bosonic mode";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
    py::register_exception<TruncationError>(m, "TruncationError", base.ptr());
    py::register_exception<InconsistencyError>(m, "InconsistencyError", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

    py::class_<BathSpec>(m, "BathSpec")
        .def(py::init<>())
        .def_static("from_ratio", &BathSpec::from_ratio, py::arg("eta_over_eta_c"),
                    py::arg("omega_c"), py::arg("kT0"))
        .def_readwrite("coupling_eta", &BathSpec::coupling_eta)
        .def_readwrite("cutoff", &BathSpec::cutoff)
        .def_readwrite("temperature", &BathSpec::temperature);

    m.def("bose_occupation", &bose_occupation, py::arg("omega"), py::arg("kT"));
    m.def("spectral_density", &spectral_density, py::arg("omega"), py::arg("bath"));
    m.def("g_kernel", &g_kernel, py::arg("lag"), py::arg("bath"));
    m.def("g_tilde_series", &g_tilde_series, py::arg("lag"), py::arg("bath"));
    m.def("g_tilde_kernel",
          [](double lag, const BathSpec& bath) { return g_tilde_kernel(lag, bath); },
          py::arg("lag"), py::arg("bath"));

    m.def(
        "solve_propagator",
        [](const BathSpec& bath, double dt, double t_end) {
            const PropagatorSolution sol = solve_propagator(bath, TimeGrid::covering(t_end, dt));
            std::vector<double> t(sol.grid.count);
            for (std::size_t i = 0; i < t.size(); ++i) {
                t[i] = sol.grid.time(i);
            }
            py::dict d;
            d["t"] = to_array(t);
            d["u"] = to_array(sol.u);
            d["u_dot"] = to_array(sol.u_dot);
            d["v"] = to_array(sol.v);
            d["v_dot"] = to_array(sol.v_dot);
            d["warnings"] = sol.warnings;
            return d;
        },
        py::arg("bath"), py::arg("dt"), py::arg("t_end"));

    m.def("von_neumann_gaussian", py::overload_cast<double>(&von_neumann_gaussian), py::arg("nu"));
    m.def("energy_entropy",
          [](const std::vector<double>& p) { return energy_entropy(std::span<const double>(p)); },
          py::arg("p"));

    m.def("parse_config", [](const std::string& text) {
        return py::module_::import("json").attr("loads")(serialize_config(parse_config(text)));
    }, py::arg("text"), "Validates a JSON config and returns it with defaults filled in.");

    m.def(
        "simulate",
        [](const std::string& config_json) {
            const SimulationConfig c = parse_config(config_json);
            ScenarioResult r;
            {
                py::gil_scoped_release release;
                r = simulate(c);
            }
            return series_columns(r);
        },
        py::arg("config_json"), "Full run on the grid; returns a dict of numpy columns.");

    m.def(
        "run",
        [](const std::string& config_json, const std::filesystem::path& out) {
            const SimulationConfig c = parse_config(config_json);
            RunOutcome o;
            {
                py::gil_scoped_release release;
                o = run_scenario(c, out);
            }
            py::dict d;
            d["ok"] = o.ok;
            d["error_kind"] = o.error_kind;
            d["error_message"] = o.error_message;
            return d;
        },
        py::arg("config_json"), py::arg("out"));

    m.def(
        "figure",
        [](const std::string& id, const std::filesystem::path& out, double dt, double t_end,
           std::size_t stride) {
            py::gil_scoped_release release;
            return figure_data(id, out, FigureOptions{dt, t_end, stride});
        },
        py::arg("id"), py::arg("out"), py::arg("dt") = 0.001, py::arg("t_end") = 30.0,
        py::arg("stride") = 10);

    m.attr("series_columns") = [] {
        std::vector<std::string> cols(kSeriesColumns.begin(), kSeriesColumns.end());
        return cols;
    }();
}
