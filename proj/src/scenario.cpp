// scenario.cpp — End-to-end simulation pipeline and run-directory output

#include "noneq_qthermo/scenario.hpp"

#include "noneq_qthermo/errors.hpp"
#include "noneq_qthermo/fock_state.hpp"
#include "noneq_qthermo/gaussian_state.hpp"
#include "noneq_qthermo/numerics.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

namespace nqt {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr double kKernelProbeLags[] = {0.0, 0.01, 0.1, 1.0};
constexpr double kKernelWarnTol = 1e-6;

double kernel_quadrature_check(const SimulationConfig& config) {
    const BathSpec bath = config.bath();
    const QuadratureSettings quad = config.quadrature();
    double worst = 0.0;
    for (double lag : kKernelProbeLags) {
        const std::complex<double> series = g_tilde_series(lag, bath);
        const std::complex<double> quadrature = g_tilde_kernel(lag, bath, quad);
        const double scale = std::max(std::abs(series), 1e-300);
        if (std::abs(series) > 0.0 || std::abs(quadrature) > 0.0) {
            worst = std::max(worst, std::abs(series - quadrature) / scale);
        }
    }
    return worst;
}

ScenarioResult finish(const SimulationConfig& config, PropagatorSolution sol, SolverStats stats,
                      Clock::time_point started) {
    ScenarioResult out;
    out.config = config;
    out.stats = stats;
    out.warnings = sol.warnings;

    out.stats.kernel_quadrature_rel_diff = kernel_quadrature_check(config);
    if (out.stats.kernel_quadrature_rel_diff > kKernelWarnTol) {
        std::ostringstream msg;
        msg << "memory kernel quadrature with omega_max_factor = " << config.omega_max_factor
            << " differs from the series by " << out.stats.kernel_quadrature_rel_diff
            << " (relative)";
        out.warnings.push_back(msg.str());
    }
    if (!config.bath().is_weak_coupling()) {
        out.warnings.emplace_back("eta >= eta_c: strong coupling, the mode does not fully thermalize");
    }

    out.coefficients = derive_coefficients(sol, config.u_floor);
    if (out.coefficients.truncated) {
        out.warnings.push_back(out.coefficients.truncation_note);
        const std::size_t keep = out.coefficients.size();
        sol.grid.count = keep;
        sol.u.resize(keep);
        sol.u_dot.resize(keep);
        sol.v.resize(keep);
        sol.v_dot.resize(keep);
    }

    const CoherentInit init = config.init();
    const Clock::time_point entropy_start = Clock::now();
    out.stats.n_max_auto = !config.n_max.has_value();
    out.stats.n_max = config.n_max ? *config.n_max : auto_n_max(sol, init, config.tail_tol);
    const EnergyEntropySeries energy = energy_entropy_series(sol, init, out.stats.n_max,
                                                             config.tail_tol);
    const std::vector<long double> vn = von_neumann_series(sol, init);
    out.stats.worst_tail = energy.worst_tail;

    TemperaturePolicy policy;
    policy.s_floor = config.s_floor;
    policy.q_floor = config.q_floor;
    out.ledger = build_ledger(sol, out.coefficients, init, energy.entropy, vn, policy);
    out.stats.seconds_entropy = seconds_since(entropy_start);
    out.warnings.insert(out.warnings.end(), out.ledger.warnings.begin(), out.ledger.warnings.end());

    out.stats.grid_points = sol.grid.count;
    for (const auto& u : sol.u) {
        out.stats.max_abs_u = std::max(out.stats.max_abs_u, std::abs(u));
    }
    out.propagator = std::move(sol);
    out.stats.seconds_total = seconds_since(started);
    return out;
}

} // namespace

std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return {buf, res.ptr};
}

ScenarioResult simulate(const SimulationConfig& config) {
    const double temperature = config.kT0;
    return std::move(simulate_temperatures(config, std::span(&temperature, 1)).front());
}

std::vector<ScenarioResult> simulate_temperatures(const SimulationConfig& base,
                                                  std::span<const double> temperatures) {
    base.validate();
    const Clock::time_point started = Clock::now();
    const TimeGrid grid = base.grid();

    SolverStats stats;
    stats.threads = num::thread_count();
    const KernelSamples kernels = build_kernel_samples(base.bath(), grid.step, grid.count);
    const USolution u = solve_u(kernels, grid);
    stats.seconds_u = seconds_since(started);

    std::vector<ScenarioResult> out;
    out.reserve(temperatures.size());
    for (double temperature : temperatures) {
        const Clock::time_point run_start = Clock::now();
        SimulationConfig config = base;
        config.kT0 = temperature;
        config.validate();
        SolverStats run_stats = stats;
        const Clock::time_point v_start = Clock::now();
        PropagatorSolution sol = attach_noise(config.bath(), grid, u);
        run_stats.seconds_v = seconds_since(v_start);
        out.push_back(finish(config, std::move(sol), run_stats, run_start));
        out.back().stats.seconds_total += stats.seconds_u;
    }
    return out;
}

std::vector<std::size_t> sampled_indices(std::size_t count, std::size_t stride) {
    std::vector<std::size_t> rows;
    if (count == 0) {
        return rows;
    }
    stride = std::max<std::size_t>(stride, 1);
    for (std::size_t j = 0; j < count; j += stride) {
        rows.push_back(j);
    }
    if (rows.back() != count - 1) {
        rows.push_back(count - 1);
    }
    return rows;
}

namespace {

std::array<double, 23> row_values(const ScenarioResult& r, std::size_t j) {
    const ThermoRecord& rec = r.ledger.records[j];
    const PropagatorSolution& p = r.propagator;
    const MasterCoefficients& c = r.coefficients;
    return {rec.time,
            p.u[j].real(),
            p.u[j].imag(),
            p.v[j],
            c.omega_ren[j],
            c.gamma[j],
            c.gamma_tilde[j],
            rec.occupation,
            rec.internal_energy,
            rec.energy_rate,
            rec.work_rate,
            rec.heat_rate,
            rec.energy_entropy,
            rec.vn_entropy,
            rec.coherence,
            rec.entropy_rate,
            rec.flux_heat,
            rec.flux_coherence,
            rec.temperature,
            0.0, // T_flag column, written as text
            rec.free_energy,
            rec.first_law_residual,
            rec.balance_residual};
}

constexpr std::size_t kFlagColumn = 19;

} // namespace

void write_series(const ScenarioResult& result, const std::filesystem::path& file,
                  OutputFormat format, std::size_t stride) {
    std::ofstream out(file, std::ios::binary);
    if (!out) {
        throw DomainError("cannot open " + file.string() + " for writing");
    }
    const auto rows = sampled_indices(result.ledger.records.size(), stride);
    if (format == OutputFormat::csv) {
        for (std::size_t k = 0; k < kSeriesColumns.size(); ++k) {
            out << (k ? "," : "") << kSeriesColumns[k];
        }
        out << '\n';
        for (std::size_t j : rows) {
            const auto values = row_values(result, j);
            for (std::size_t k = 0; k < values.size(); ++k) {
                out << (k ? "," : "");
                if (k == kFlagColumn) {
                    out << to_string(result.ledger.records[j].temperature_flag);
                } else {
                    out << format_number(values[k]);
                }
            }
            out << '\n';
        }
    } else {
        nlohmann::ordered_json doc;
        doc["columns"] = kSeriesColumns;
        nlohmann::json data = nlohmann::json::array();
        for (std::size_t j : rows) {
            const auto values = row_values(result, j);
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t k = 0; k < values.size(); ++k) {
                if (k == kFlagColumn) {
                    row.push_back(to_string(result.ledger.records[j].temperature_flag));
                } else if (std::isfinite(values[k])) {
                    row.push_back(values[k]);
                } else {
                    row.push_back(nullptr);
                }
            }
            data.push_back(std::move(row));
        }
        doc["rows"] = std::move(data);
        out << doc.dump() << '\n';
    }
    if (!out) {
        throw DomainError("failed writing " + file.string());
    }
}

namespace {

nlohmann::ordered_json units_block() {
    nlohmann::ordered_json u;
    u["convention"] = "hbar = k = 1; frequencies and energies in units of omega0, times in 1/omega0";
    u["t"] = "1/omega0";
    u["omega_ren"] = "omega0";
    u["gamma"] = "omega0";
    u["gamma_tilde"] = "omega0";
    u["U"] = "hbar omega0";
    u["dU_dt"] = "hbar omega0^2";
    u["dW_dt"] = "hbar omega0^2";
    u["dQ_dt"] = "hbar omega0^2";
    u["S_energy"] = "k";
    u["S_vn"] = "k";
    u["C"] = "k";
    u["Sigma"] = "k omega0";
    u["Phi_Q"] = "k omega0";
    u["Phi_C"] = "k omega0";
    u["T"] = "hbar omega0 / k";
    u["F"] = "hbar omega0";
    return u;
}

nlohmann::ordered_json meta_document(const SimulationConfig& config, const ScenarioResult* result,
                                     const std::string& error_kind, const std::string& error_message) {
    nlohmann::ordered_json meta;
    meta["config"] = nlohmann::ordered_json::parse(serialize_config(config));
    nlohmann::ordered_json solver;
    solver["u_floor"] = config.u_floor;
    solver["s_floor"] = config.s_floor;
    solver["q_floor"] = config.q_floor;
    solver["memory_kernel"] = "series (trigamma) table, checked against panel quadrature";
    solver["derivative_stencil"] = "five-point, fourth order";
    if (result != nullptr) {
        const SolverStats& s = result->stats;
        solver["grid_points"] = s.grid_points;
        solver["rows_written"] = sampled_indices(s.grid_points, config.stride).size();
        solver["n_max"] = s.n_max;
        solver["n_max_auto"] = s.n_max_auto;
        solver["threads"] = s.threads;
        solver["seconds_u"] = s.seconds_u;
        solver["seconds_v"] = s.seconds_v;
        solver["seconds_entropy"] = s.seconds_entropy;
        solver["seconds_total"] = s.seconds_total;
        solver["coefficients_truncated"] = result->coefficients.truncated;
    }
    meta["solver"] = solver;

    if (result != nullptr) {
        const SolverStats& s = result->stats;
        const ThermoLedger& l = result->ledger;
        nlohmann::ordered_json tol;
        auto entry = [](double measured, double bound) {
            nlohmann::ordered_json e;
            e["measured"] = std::isfinite(measured) ? nlohmann::ordered_json(measured) : nullptr;
            e["bound"] = bound;
            e["ok"] = measured <= bound;
            return e;
        };
        double min_coherence = 0.0;
        double min_phi_c = 0.0;
        for (const ThermoRecord& r : l.records) {
            min_coherence = std::min(min_coherence, r.coherence);
            min_phi_c = std::min(min_phi_c, r.flux_coherence);
        }
        tol["first_law_relative"] = entry(l.max_first_law_ratio, 1e-6);
        tol["entropy_balance"] = entry(l.max_balance_residual, 1e-10);
        tol["fock_tail_mass"] = entry(s.worst_tail, config.tail_tol);
        tol["kernel_quadrature_relative"] = entry(s.kernel_quadrature_rel_diff, kKernelWarnTol);
        tol["u_contractivity_excess"] = entry(s.max_abs_u - 1.0, kContractivityTol);
        tol["negative_coherence"] = entry(-min_coherence, kCoherenceTol);
        tol["negative_phi_c"] = entry(-min_phi_c, 1e-6);
        meta["tolerances"] = tol;
        meta["warnings"] = result->warnings;
    } else {
        meta["warnings"] = nlohmann::ordered_json::array();
    }
    meta["units"] = units_block();
    if (error_kind.empty()) {
        meta["error"] = nullptr;
    } else {
        nlohmann::ordered_json e;
        e["kind"] = error_kind;
        e["message"] = error_message;
        meta["error"] = e;
    }
    return meta;
}

void write_text(const std::filesystem::path& file, const std::string& text) {
    std::ofstream out(file, std::ios::binary);
    out << text;
    if (!out) {
        throw DomainError("failed writing " + file.string());
    }
}

} // namespace

RunOutcome run_scenario(const SimulationConfig& config, const std::filesystem::path& directory) {
    RunOutcome outcome;
    outcome.directory = directory;
    std::filesystem::create_directories(directory);
    try {
        const ScenarioResult result = simulate(config);
        const char* name = config.format == OutputFormat::csv ? "series.csv" : "series.json";
        write_series(result, directory / name, config.format, config.stride);
        write_text(directory / "meta.json", meta_document(config, &result, "", "").dump(2) + "\n");
        outcome.ok = true;
    } catch (const Error& e) {
        outcome.error_kind = e.kind();
        outcome.error_message = e.what();
    } catch (const std::exception& e) {
        outcome.error_kind = "internal";
        outcome.error_message = e.what();
    }
    if (!outcome.ok) {
        write_text(directory / "meta.json",
                   meta_document(config, nullptr, outcome.error_kind, outcome.error_message).dump(2) +
                       "\n");
    }
    return outcome;
}

} // namespace nqt
