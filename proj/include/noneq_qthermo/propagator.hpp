// propagator.hpp — Volterra integro-differential solver for u(t,t0) and the noise function v(t,t)

#pragma once

#include "noneq_qthermo/bath_kernels.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace nqt {

struct TimeGrid {
    double t_start{0.0};
    double step{0.001};
    std::size_t count{2};

    double t_end() const { return t_start + static_cast<double>(count - 1) * step; }
    double time(std::size_t i) const { return t_start + static_cast<double>(i) * step; }

    // Uniform grid on [t_start, t_end]; t_end - t_start must be a whole number of steps
    // to within a relative 1e-9, otherwise DomainError.
    static TimeGrid covering(double t_end, double step, double t_start = 0.0);
    void validate() const;
};

struct USolution {
    std::vector<std::complex<double>> u;
    std::vector<std::complex<double>> u_dot;
    std::vector<std::string> warnings;
};

struct PropagatorSolution {
    TimeGrid grid;
    std::vector<std::complex<double>> u;
    std::vector<std::complex<double>> u_dot;
    std::vector<double> v;
    std::vector<double> v_dot;
    std::vector<std::string> warnings;
};

inline constexpr double kContractivityTol = 1e-6;

// Solves du/dt = -i w0 u - int_{t0}^t g(t - tau) u(tau) dtau, u(t0) = 1, with
// trapezoidal product integration of the memory term and a trapezoidal step in time.
// The implicit step is linear in u_{j+1} and is solved in closed form.
// u_dot comes from the right-hand side, not from differencing u.
USolution solve_u(const KernelSamples& kernels, const TimeGrid& grid);
USolution solve_u(const BathSpec& bath, const TimeGrid& grid);

// v(t,t) = int int u(t - t1) g~(t1 - t2) u*(t - t2) dt1 dt2 over [t0, t]^2 with
// trapezoidal weights, using u(t, tau) = u(t - tau). Real by construction.
std::vector<double> compute_v_diag(const KernelSamples& kernels,
                                   std::span<const std::complex<double>> u,
                                   const TimeGrid& grid);

// dv/dt on the grid with the shared finite-difference stencil.
std::vector<double> v_dot_diag(std::span<const double> v, const TimeGrid& grid);

// Kernel tables, u, u_dot, v and v_dot in one pass.
PropagatorSolution solve_propagator(const BathSpec& bath, const TimeGrid& grid);

// Reuses an already solved u for a bath that differs only in temperature.
PropagatorSolution attach_noise(const BathSpec& bath, const TimeGrid& grid, const USolution& u);

} // namespace nqt
