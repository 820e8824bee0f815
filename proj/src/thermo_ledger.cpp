// thermo_ledger.cpp — Energies, work and heat rates, entropy fluxes, dynamical temperature

#include "noneq_qthermo/thermo_ledger.hpp"

#include "noneq_qthermo/errors.hpp"
#include "noneq_qthermo/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nqt {

const char* to_string(TemperatureFlag flag) {
    switch (flag) {
    case TemperatureFlag::stable:
        return "stable";
    case TemperatureFlag::regularized:
        return "regularized";
    case TemperatureFlag::equilibrium_limit:
        return "equilibrium-limit";
    }
    return "unknown";
}

double occupation(const PropagatorSolution& sol, const CoherentInit& init, std::size_t t_index) {
    return std::norm(sol.u[t_index]) * std::norm(init.alpha0) + sol.v[t_index];
}

double internal_energy(const MasterCoefficients& coeffs, const PropagatorSolution& sol,
                       const CoherentInit& init, std::size_t t_index) {
    return coeffs.omega_ren[t_index] * occupation(sol, init, t_index);
}

double work_rate(const MasterCoefficients& coeffs, const PropagatorSolution& sol,
                 const CoherentInit& init, std::size_t t_index) {
    const double d_omega =
        num::derivative_at(std::span<const double>(coeffs.omega_ren), coeffs.grid.step, t_index);
    return d_omega * occupation(sol, init, t_index);
}

double heat_rate(const MasterCoefficients& coeffs, const PropagatorSolution& sol,
                 const CoherentInit& init, std::size_t t_index) {
    const double n = occupation(sol, init, t_index);
    return coeffs.omega_ren[t_index] *
           (coeffs.gamma_tilde[t_index] - 2.0 * coeffs.gamma[t_index] * n);
}

EntropyRates entropy_rates(std::span<const long double> s_energy,
                           std::span<const long double> s_vn, double step) {
    if (s_energy.size() != s_vn.size()) {
        throw DomainError("entropy_rates: entropy series differ in length");
    }
    std::vector<long double> coherence(s_energy.size());
    for (std::size_t j = 0; j < coherence.size(); ++j) {
        coherence[j] = s_energy[j] - s_vn[j];
    }
    const auto d_energy = num::derivative(s_energy, step);
    const auto d_vn = num::derivative(s_vn, step);
    const auto d_coherence = num::derivative(std::span<const long double>(coherence), step);

    EntropyRates out;
    out.sigma.resize(coherence.size());
    out.flux_heat.resize(coherence.size());
    out.flux_coherence.resize(coherence.size());
    for (std::size_t j = 0; j < coherence.size(); ++j) {
        out.sigma[j] = static_cast<double>(d_vn[j]);
        out.flux_heat[j] = static_cast<double>(d_energy[j]);
        out.flux_coherence[j] = static_cast<double>(-d_coherence[j]);
    }
    return out;
}

TemperatureSample dynamical_temperature(double heat_rate, double entropy_rate,
                                        const TemperaturePolicy& policy) {
    if (std::abs(entropy_rate) >= policy.s_floor) {
        return {heat_rate / entropy_rate, TemperatureFlag::stable};
    }
    return {};
}

std::vector<TemperatureSample> dynamical_temperature_series(std::span<const double> heat_rate,
                                                            std::span<const double> entropy_rate,
                                                            std::span<const double> times,
                                                            const TemperaturePolicy& policy,
                                                            std::vector<std::string>& warnings) {
    const std::size_t n = heat_rate.size();
    if (entropy_rate.size() != n || times.size() != n) {
        throw DomainError("dynamical_temperature_series: series differ in length");
    }
    std::vector<TemperatureSample> out(n);
    std::vector<std::size_t> stable;
    for (std::size_t j = 1; j < n; ++j) {
        out[j] = dynamical_temperature(heat_rate[j], entropy_rate[j], policy);
        if (out[j].flag == TemperatureFlag::stable) {
            stable.push_back(j);
        }
    }
    if (stable.empty()) {
        warnings.emplace_back("dynamical temperature undefined: |dS_energy/dt| never exceeds the floor");
        return out;
    }

    for (std::size_t j = 0; j < stable.front(); ++j) {
        out[j] = {out[stable.front()].value, TemperatureFlag::regularized};
    }
    std::size_t suspicious = 0;
    double first_suspicious = 0.0;
    for (std::size_t k = 0; k + 1 < stable.size(); ++k) {
        const std::size_t lo = stable[k];
        const std::size_t hi = stable[k + 1];
        for (std::size_t j = lo + 1; j < hi; ++j) {
            const double w = (times[j] - times[lo]) / (times[hi] - times[lo]);
            out[j] = {(1.0 - w) * out[lo].value + w * out[hi].value, TemperatureFlag::regularized};
            if (std::abs(heat_rate[j]) > policy.q_floor) {
                if (suspicious++ == 0) {
                    first_suspicious = times[j];
                }
            }
        }
    }
    if (suspicious > 0) {
        std::ostringstream msg;
        msg << "inconsistency: " << suspicious
            << " samples with |dQ/dt| above the floor while |dS_energy/dt| is below it, first at t = "
            << first_suspicious << "; temperature interpolated there";
        warnings.push_back(msg.str());
    }
    for (std::size_t j = stable.back() + 1; j < n; ++j) {
        out[j] = {out[stable.back()].value, TemperatureFlag::equilibrium_limit};
    }
    return out;
}

double free_energy(double internal_energy, double temperature, double s_energy) {
    return internal_energy - temperature * s_energy;
}

BalanceIntegral integrate_balance(std::span<const ThermoRecord> records, std::size_t end_index) {
    if (end_index >= records.size()) {
        throw DomainError("integrate_balance: end index outside the ledger");
    }
    const ThermoRecord& first = records.front();
    const ThermoRecord& last = records[end_index];
    BalanceIntegral out;
    out.delta_vn = last.vn_entropy - first.vn_entropy;
    out.delta_energy = last.energy_entropy - first.energy_entropy;
    out.delta_coherence = first.coherence - last.coherence;
    out.residual = out.delta_vn - out.delta_energy - out.delta_coherence;
    if (std::abs(out.residual) > 1e-6) {
        std::ostringstream msg;
        msg << "entropy balance residual " << out.residual << " over [" << first.time << ", "
            << last.time << "]";
        throw InconsistencyError(msg.str());
    }
    return out;
}

ThermoLedger build_ledger(const PropagatorSolution& sol, const MasterCoefficients& coeffs,
                          const CoherentInit& init, std::span<const long double> s_energy,
                          std::span<const long double> s_vn, const TemperaturePolicy& policy) {
    const std::size_t n = coeffs.size();
    if (s_energy.size() < n || s_vn.size() < n || sol.u.size() < n) {
        throw DomainError("build_ledger: entropy series shorter than the coefficients");
    }
    const double h = coeffs.grid.step;
    const auto se = s_energy.first(n);
    const auto svn = s_vn.first(n);

    ThermoLedger ledger;
    ledger.records.resize(n);
    std::vector<double> energy(n), heat(n), times(n);
    for (std::size_t j = 0; j < n; ++j) {
        ThermoRecord& r = ledger.records[j];
        r.time = coeffs.grid.time(j);
        r.occupation = occupation(sol, init, j);
        r.internal_energy = coeffs.omega_ren[j] * r.occupation;
        r.heat_rate = heat_rate(coeffs, sol, init, j);
        r.energy_entropy = static_cast<double>(se[j]);
        r.vn_entropy = static_cast<double>(svn[j]);
        r.coherence = static_cast<double>(se[j] - svn[j]);
        energy[j] = r.internal_energy;
        heat[j] = r.heat_rate;
        times[j] = r.time;
    }

    const auto d_energy = num::derivative(std::span<const double>(energy), h);
    const auto d_omega = num::derivative(std::span<const double>(coeffs.omega_ren), h);
    const EntropyRates rates = entropy_rates(se, svn, h);
    const auto temperature =
        dynamical_temperature_series(heat, rates.flux_heat, times, policy, ledger.warnings);

    for (std::size_t j = 0; j < n; ++j) {
        ThermoRecord& r = ledger.records[j];
        r.energy_rate = d_energy[j];
        r.work_rate = d_omega[j] * r.occupation;
        r.entropy_rate = rates.sigma[j];
        r.flux_heat = rates.flux_heat[j];
        r.flux_coherence = rates.flux_coherence[j];
        r.temperature = temperature[j].value;
        r.temperature_flag = temperature[j].flag;
        r.free_energy = free_energy(r.internal_energy, r.temperature, r.energy_entropy);
        r.first_law_residual = r.energy_rate - r.work_rate - r.heat_rate;
        r.balance_residual = r.entropy_rate - r.flux_heat - r.flux_coherence;
        ledger.max_first_law_ratio =
            std::max(ledger.max_first_law_ratio,
                     std::abs(r.first_law_residual) / std::max(1.0, std::abs(r.energy_rate)));
        ledger.max_balance_residual =
            std::max(ledger.max_balance_residual, std::abs(r.balance_residual));
    }
    return ledger;
}

} // namespace nqt
