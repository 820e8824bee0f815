// scenario.hpp — End-to-end simulation pipeline and run-directory output

#pragma once

#include "noneq_qthermo/coefficients.hpp"
#include "noneq_qthermo/config.hpp"
#include "noneq_qthermo/propagator.hpp"
#include "noneq_qthermo/thermo_ledger.hpp"

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nqt {

inline constexpr std::array<std::string_view, 23> kSeriesColumns{
    "t",         "re_u",      "im_u",    "v",     "omega_ren",          "gamma",
    "gamma_tilde", "n",       "U",       "dU_dt", "dW_dt",              "dQ_dt",
    "S_energy",  "S_vn",      "C",       "Sigma", "Phi_Q",              "Phi_C",
    "T",         "T_flag",    "F",       "first_law_residual", "balance_residual"};

struct SolverStats {
    std::size_t grid_points{0};
    std::size_t n_max{0};
    bool n_max_auto{true};
    double worst_tail{0.0};
    double kernel_quadrature_rel_diff{0.0}; // series kernel vs quadrature at probe lags
    double max_abs_u{0.0};
    double seconds_u{0.0};
    double seconds_v{0.0};
    double seconds_entropy{0.0};
    double seconds_total{0.0};
    int threads{1};
};

struct ScenarioResult {
    SimulationConfig config;
    PropagatorSolution propagator;
    MasterCoefficients coefficients;
    ThermoLedger ledger;
    SolverStats stats;
    std::vector<std::string> warnings;
};

// kernels -> propagator -> coefficients -> Fock / Gaussian entropies -> ledger.
ScenarioResult simulate(const SimulationConfig& config);

// One run per reservoir temperature. u does not depend on the temperature and is
// solved once for the whole sweep.
std::vector<ScenarioResult> simulate_temperatures(const SimulationConfig& base,
                                                  std::span<const double> temperatures);

// Indices written to the series: every stride-th sample plus the final one.
std::vector<std::size_t> sampled_indices(std::size_t count, std::size_t stride);

// Series in the fixed column order, locale-independent shortest round-trip numbers.
void write_series(const ScenarioResult& result, const std::filesystem::path& file,
                  OutputFormat format, std::size_t stride);

struct RunOutcome {
    std::filesystem::path directory;
    bool ok{false};
    std::string error_kind;
    std::string error_message;
};

// Runs the scenario and writes series.csv or series.json plus meta.json into
// `directory`. A failing module aborts the run with an error record in meta.json.
RunOutcome run_scenario(const SimulationConfig& config, const std::filesystem::path& directory);

// Shortest round-trip decimal form; "nan" and "inf" for non-finite values.
std::string format_number(double x);

} // namespace nqt
