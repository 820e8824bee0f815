// gaussian_state.hpp — Quadrature moments, covariance matrix and Gaussian entropy

#pragma once

#include "noneq_qthermo/fock_state.hpp"
#include "noneq_qthermo/propagator.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

namespace nqt {

inline constexpr double kPurityTol = 1e-6;
inline constexpr double kIsotropyTol = 1e-8;

// Moments in the quadrature basis xi1 = a + a^dagger, xi2 = -i (a - a^dagger).
struct GaussianMoments {
    double time{0.0};
    std::complex<double> mean_a;    // <a>
    double number{0.0};             // <a^dagger a>
    std::complex<double> anomalous; // <a a>
    Eigen::Matrix2d covariance{Eigen::Matrix2d::Identity()};
    double symplectic_nu{1.0};      // sqrt(det V)
};

// V_ij = <{dxi_i, dxi_j}>, assembled from <a>, <a^dagger a>, <a a>.
Eigen::Matrix2d covariance_from_moments(std::complex<double> mean_a, double number,
                                        std::complex<double> anomalous);

// <a> = u alpha0, <a^dagger a> = |u|^2 |alpha0|^2 + v, <a a> = u^2 alpha0^2.
// Throws DomainError when det V < 1 - 1e-6.
GaussianMoments moments_at(const PropagatorSolution& sol, const CoherentInit& init,
                           std::size_t t_index);

// S = ((nu+1)/2) ln((nu+1)/2) - ((nu-1)/2) ln((nu-1)/2); nu within 1e-6 below 1 is
// clipped to 1, lower values throw DomainError.
double von_neumann_gaussian(double nu);
long double von_neumann_gaussian(long double nu);

// S(t) at every grid time. Throws InconsistencyError when sqrt(det V) departs
// from 2v + 1 by more than 1e-8.
std::vector<long double> von_neumann_series(const PropagatorSolution& sol,
                                            const CoherentInit& init);

} // namespace nqt
