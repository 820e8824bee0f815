// thermo_ledger.hpp — Energies, work and heat rates, entropy fluxes, dynamical temperature

#pragma once

#include "noneq_qthermo/coefficients.hpp"
#include "noneq_qthermo/fock_state.hpp"
#include "noneq_qthermo/propagator.hpp"

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace nqt {

enum class TemperatureFlag { stable, regularized, equilibrium_limit };

const char* to_string(TemperatureFlag flag);

struct ThermoRecord {
    double time{0.0};
    double occupation{0.0};      // n(t)
    double internal_energy{0.0}; // U = omega n
    double energy_rate{0.0};     // dU/dt by differencing U
    double work_rate{0.0};       // (d omega/dt) n
    double heat_rate{0.0};       // omega (gamma~ - 2 gamma n)
    double energy_entropy{0.0};  // S_energy, Shannon entropy of p_n
    double vn_entropy{0.0};      // S, von Neumann entropy
    double coherence{0.0};       // C = S_energy - S
    double entropy_rate{0.0};    // Sigma = dS/dt
    double flux_heat{0.0};       // Phi_Q = dS_energy/dt
    double flux_coherence{0.0};  // Phi_C = -dC/dt
    double temperature{0.0};
    TemperatureFlag temperature_flag{TemperatureFlag::stable};
    double free_energy{0.0};     // F = U - T S_energy
    double first_law_residual{0.0};
    double balance_residual{0.0};
};

struct TemperaturePolicy {
    double s_floor{1e-8}; // |dS_energy/dt| below this makes the ratio unreliable
    double q_floor{1e-8}; // heat rate above this while dS_energy/dt is below s_floor is flagged
};

struct TemperatureSample {
    double value{std::numeric_limits<double>::quiet_NaN()};
    TemperatureFlag flag{TemperatureFlag::regularized};
};

struct ThermoLedger {
    std::vector<ThermoRecord> records;
    std::vector<std::string> warnings;
    double max_first_law_ratio{0.0}; // max |residual| / max(1, |dU/dt|)
    double max_balance_residual{0.0};
};

double occupation(const PropagatorSolution& sol, const CoherentInit& init, std::size_t t_index);

double internal_energy(const MasterCoefficients& coeffs, const PropagatorSolution& sol,
                       const CoherentInit& init, std::size_t t_index);

// d omega/dt with the shared stencil, times n(t).
double work_rate(const MasterCoefficients& coeffs, const PropagatorSolution& sol,
                 const CoherentInit& init, std::size_t t_index);

double heat_rate(const MasterCoefficients& coeffs, const PropagatorSolution& sol,
                 const CoherentInit& init, std::size_t t_index);

struct EntropyRates {
    std::vector<double> sigma;          // dS/dt
    std::vector<double> flux_heat;      // dS_energy/dt
    std::vector<double> flux_coherence; // -dC/dt
};

// Differentiates the extended-precision entropy series with the shared stencil.
EntropyRates entropy_rates(std::span<const long double> s_energy,
                           std::span<const long double> s_vn, double step);

// Pointwise ratio: stable when |entropy_rate| >= s_floor, otherwise NaN flagged
// regularized for the series policy to fill in.
TemperatureSample dynamical_temperature(double heat_rate, double entropy_rate,
                                        const TemperaturePolicy& policy = {});

// Series policy for samples without a stable ratio: a leading run takes the first
// stable value, an interior run is interpolated linearly between its stable
// neighbours (both flagged regularized), and a trailing run keeps the last stable
// value (flagged equilibrium_limit). Sample 0 is never stable because both rates
// vanish identically at t0. Interior samples whose heat rate exceeds q_floor are
// reported in `warnings`.
std::vector<TemperatureSample> dynamical_temperature_series(std::span<const double> heat_rate,
                                                            std::span<const double> entropy_rate,
                                                            std::span<const double> times,
                                                            const TemperaturePolicy& policy,
                                                            std::vector<std::string>& warnings);

double free_energy(double internal_energy, double temperature, double s_energy);

struct BalanceIntegral {
    double delta_vn{0.0};        // S(tau) - S(t0)
    double delta_energy{0.0};    // S_energy(tau) - S_energy(t0)
    double delta_coherence{0.0}; // C(t0) - C(tau)
    double residual{0.0};        // delta_vn - delta_energy - delta_coherence
};

// Endpoint bookkeeping over records[0 .. end_index]. InconsistencyError when
// |residual| > 1e-6.
BalanceIntegral integrate_balance(std::span<const ThermoRecord> records, std::size_t end_index);

// Assembles every record on the full grid. s_energy and s_vn are sampled on the grid.
ThermoLedger build_ledger(const PropagatorSolution& sol, const MasterCoefficients& coeffs,
                          const CoherentInit& init, std::span<const long double> s_energy,
                          std::span<const long double> s_vn, const TemperaturePolicy& policy = {});

} // namespace nqt
