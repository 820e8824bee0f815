// bath_kernels.cpp — Ohmic reservoir: spectral density, occupation and memory kernels

#include "noneq_qthermo/bath_kernels.hpp"

#include "noneq_qthermo/errors.hpp"
#include "noneq_qthermo/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace nqt {

void BathSpec::validate() const {
    std::ostringstream msg;
    if (!(coupling_eta >= 0.0) || !std::isfinite(coupling_eta)) {
        msg << "coupling eta must be finite and >= 0, got " << coupling_eta;
    } else if (!(cutoff > 0.0) || !std::isfinite(cutoff)) {
        msg << "cutoff must be finite and > 0, got " << cutoff;
    } else if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
        msg << "temperature must be finite and >= 0, got " << temperature;
    } else {
        return;
    }
    throw DomainError(msg.str());
}

BathSpec BathSpec::from_ratio(double eta_over_eta_c, double cutoff, double temperature) {
    BathSpec bath{eta_over_eta_c * kOmega0 / cutoff, cutoff, temperature};
    bath.validate();
    return bath;
}

double QuadratureSettings::omega_max(const BathSpec& bath) const {
    return omega_max_factor * std::max(bath.cutoff, bath.temperature);
}

double spectral_density(double omega, const BathSpec& bath) {
    if (omega < 0.0) {
        throw DomainError("spectral_density: omega must be >= 0");
    }
    return bath.coupling_eta * omega * std::exp(-omega / bath.cutoff);
}

double bose_occupation(double omega, double temperature) {
    if (!(omega > 0.0)) {
        throw DomainError("bose_occupation: omega must be > 0");
    }
    if (temperature < 0.0) {
        throw DomainError("bose_occupation: temperature must be >= 0");
    }
    if (temperature == 0.0) {
        return 0.0;
    }
    return 1.0 / std::expm1(omega / temperature);
}

double thermal_weight(double omega, const BathSpec& bath) {
    if (bath.temperature == 0.0) {
        return 0.0;
    }
    if (omega == 0.0) {
        return bath.coupling_eta * bath.temperature;
    }
    const double x = omega / bath.temperature;
    return bath.coupling_eta * bath.temperature * (x / std::expm1(x)) *
           std::exp(-omega / bath.cutoff);
}

std::complex<double> g_kernel(double lag, const BathSpec& bath) {
    const std::complex<double> d{1.0, bath.cutoff * lag};
    return bath.coupling_eta * bath.cutoff * bath.cutoff / (d * d);
}

namespace {

std::size_t panels_for_lag(double lag, double omega_max, std::size_t floor_panels) {
    // At least one panel per half oscillation of e^{-i w s}.
    const double needed = std::ceil(omega_max * std::abs(lag) / std::numbers::pi);
    return std::max<std::size_t>(floor_panels, static_cast<std::size_t>(needed));
}

} // namespace

std::complex<double> g_kernel_quadrature(double lag, const BathSpec& bath,
                                         const QuadratureSettings& quad) {
    const double top = quad.omega_max(bath);
    auto integrand = [&](double w) {
        return spectral_density(w, bath) * std::polar(1.0, -w * lag);
    };
    return num::integrate_converged(integrand, 0.0, top,
                                    panels_for_lag(lag, top, quad.initial_panels),
                                    quad.max_doublings, quad.rel_tol, quad.order)
        .value;
}

std::complex<double> g_tilde_kernel(double lag, const BathSpec& bath,
                                    const QuadratureSettings& quad) {
    if (bath.temperature == 0.0 || bath.coupling_eta == 0.0) {
        return {0.0, 0.0};
    }
    const double top = quad.omega_max(bath);
    auto integrand = [&](double w) { return thermal_weight(w, bath) * std::polar(1.0, -w * lag); };
    return num::integrate_converged(integrand, 0.0, top,
                                    panels_for_lag(lag, top, quad.initial_panels),
                                    quad.max_doublings, quad.rel_tol, quad.order)
        .value;
}

std::complex<double> g_tilde_series(double lag, const BathSpec& bath) {
    if (bath.temperature == 0.0 || bath.coupling_eta == 0.0) {
        return {0.0, 0.0};
    }
    const double t = bath.temperature;
    const std::complex<double> z{1.0 + t / bath.cutoff, t * lag};
    return bath.coupling_eta * t * t * num::trigamma(z);
}

std::complex<double> KernelSamples::gtilde_at(long lag_index) const {
    if (lag_index >= 0) {
        return gtilde_samples.at(static_cast<std::size_t>(lag_index));
    }
    return std::conj(gtilde_samples.at(static_cast<std::size_t>(-lag_index)));
}

std::complex<double> KernelSamples::g_at(long lag_index) const {
    if (lag_index >= 0) {
        return g_samples.at(static_cast<std::size_t>(lag_index));
    }
    return std::conj(g_samples.at(static_cast<std::size_t>(-lag_index)));
}

KernelSamples build_kernel_samples(const BathSpec& bath, double step, std::size_t count) {
    bath.validate();
    if (!(step > 0.0)) {
        throw DomainError("build_kernel_samples: step must be > 0");
    }
    KernelSamples k;
    k.grid_step = step;
    k.g_samples.resize(count);
    k.gtilde_samples.resize(count);
    const long n = static_cast<long>(count);
#pragma omp parallel for schedule(static)
    for (long j = 0; j < n; ++j) {
        const double s = static_cast<double>(j) * step;
        k.g_samples[j] = g_kernel(s, bath);
        k.gtilde_samples[j] = g_tilde_series(s, bath);
    }
    return k;
}

} // namespace nqt
