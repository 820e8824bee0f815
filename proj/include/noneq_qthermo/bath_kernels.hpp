// bath_kernels.hpp — Ohmic reservoir: spectral density, occupation and memory kernels
//
// Units: hbar = k = 1, frequencies in units of the bare mode frequency omega0,
// times in 1/omega0.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace nqt {

inline constexpr double kOmega0 = 1.0;

struct BathSpec {
    double coupling_eta{0.01}; // eta (dimensionless)
    double cutoff{10.0};       // omega_c
    double temperature{20.0};  // k T0 in units of hbar omega0

    // eta_c = omega0 / omega_c; above it a localized bound state forms.
    double critical_coupling() const { return kOmega0 / cutoff; }
    bool is_weak_coupling() const { return coupling_eta < critical_coupling(); }

    // Throws DomainError unless eta >= 0, cutoff > 0, temperature >= 0.
    void validate() const;

    static BathSpec from_ratio(double eta_over_eta_c, double cutoff, double temperature);
};

struct QuadratureSettings {
    double omega_max_factor{50.0}; // Omega_max = factor * max(omega_c, kT0)
    std::size_t initial_panels{64};
    int max_doublings{12};
    double rel_tol{1e-10};
    int order{20};

    double omega_max(const BathSpec& bath) const;
};

// J(omega) = eta * omega * exp(-omega / omega_c); omega must be >= 0.
double spectral_density(double omega, const BathSpec& bath);

// 1 / (exp(omega / kT0) - 1); zero at kT0 = 0. omega must be > 0.
double bose_occupation(double omega, double temperature);

// J(omega) * nbar(omega), continuously extended to eta*kT0 at omega = 0.
double thermal_weight(double omega, const BathSpec& bath);

// g(s) = int_0^inf J(w) e^{-i w s} dw, closed form eta wc^2 / (1 + i wc s)^2.
std::complex<double> g_kernel(double lag, const BathSpec& bath);

// Direct quadrature of the g integral over (0, Omega_max]. Test oracle for g_kernel.
std::complex<double> g_kernel_quadrature(double lag, const BathSpec& bath,
                                         const QuadratureSettings& quad = {});

// g~(s) = int_0^Omega_max J(w) nbar(w) e^{-i w s} dw by panel-doubling quadrature.
// Throws NumericalError when the estimate has not converged after max refinement.
std::complex<double> g_tilde_kernel(double lag, const BathSpec& bath,
                                    const QuadratureSettings& quad = {});

// Series evaluation of the same integral over (0, inf):
// sum_k eta / (1/wc + k/kT0 + i s)^2 = eta kT0^2 psi1(1 + kT0/wc + i kT0 s).
std::complex<double> g_tilde_series(double lag, const BathSpec& bath);

// Kernel tables on the lags s_j = j * step, j = 0 .. count-1.
struct KernelSamples {
    double grid_step{0.0};
    std::vector<std::complex<double>> g_samples;
    std::vector<std::complex<double>> gtilde_samples;

    std::size_t size() const { return g_samples.size(); }

    // Negative lags through g~(-s) = conj(g~(s)).
    std::complex<double> gtilde_at(long lag_index) const;
    std::complex<double> g_at(long lag_index) const;
};

KernelSamples build_kernel_samples(const BathSpec& bath, double step, std::size_t count);

} // namespace nqt
