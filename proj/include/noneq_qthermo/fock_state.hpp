// fock_state.hpp — Truncated Fock-basis density matrix, populations and entropies

#pragma once

#include "noneq_qthermo/propagator.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace nqt {

inline constexpr double kDefaultTailTol = 1e-10;
inline constexpr double kCoherenceTol = 1e-6;

struct CoherentInit {
    std::complex<double> alpha0{1.0, 0.0};
};

// rho(t) for a coherent start is a displaced thermal state with displacement
// alpha(t) = u(t) alpha0 and thermal occupation v(t,t).
struct DisplacedThermal {
    std::complex<double> alpha;
    double v{0.0};
};

DisplacedThermal state_at(const PropagatorSolution& sol, const CoherentInit& init,
                          std::size_t t_index);

struct FockDensityMatrix {
    double time{0.0};
    std::size_t n_max{0};
    Eigen::MatrixXcd elements;       // <m|rho|n>, 0 <= m, n <= n_max
    std::vector<double> populations; // diagonal of elements
    double tail_mass{0.0};           // 1 - sum of populations
};

// p_n for n = 0 .. n_max by the Laguerre three-term recurrence in long double.
// Terms far past the mode that fall below 1e-40 relative are left at zero.
std::vector<long double> displaced_thermal_populations(const DisplacedThermal& state,
                                                       std::size_t n_max);

// Full matrix <m|rho|n>, 0 <= m, n <= n_max, one recurrence per diagonal band.
Eigen::MatrixXcd displaced_thermal_elements(const DisplacedThermal& state, std::size_t n_max);

// Throws TruncationError when the tail mass exceeds tail_tol, DomainError when v < 0.
std::vector<double> populations_at(const PropagatorSolution& sol, const CoherentInit& init,
                                   std::size_t t_index, std::size_t n_max,
                                   double tail_tol = kDefaultTailTol);

FockDensityMatrix density_matrix_at(const PropagatorSolution& sol, const CoherentInit& init,
                                    std::size_t t_index, std::size_t n_max,
                                    double tail_tol = kDefaultTailTol);

// Smallest n_max = ceil(10 (|alpha0|^2 + v_max)) * 2^k whose tail mass is within
// tail_tol at every grid time.
std::size_t auto_n_max(const PropagatorSolution& sol, const CoherentInit& init,
                       double tail_tol = kDefaultTailTol);

// -sum p ln p with 0 ln 0 = 0. Throws DomainError for p < -1e-14.
double energy_entropy(std::span<const double> p);
long double energy_entropy(std::span<const long double> p);

struct EnergyEntropySeries {
    std::vector<long double> entropy;
    std::vector<double> tail_mass;
    double worst_tail{0.0};
};

// Energy entropy at every grid time; throws TruncationError on the first
// snapshot whose tail exceeds tail_tol.
EnergyEntropySeries energy_entropy_series(const PropagatorSolution& sol,
                                          const CoherentInit& init, std::size_t n_max,
                                          double tail_tol = kDefaultTailTol);

// -tr rho ln rho from the eigenvalues of the truncated matrix. Eigenvalues in
// (-1e-10, 0) are clipped; anything lower throws TruncationError.
double von_neumann_fock(const FockDensityMatrix& rho);

// C = S_energy - S_vn; InconsistencyError when C < -1e-6.
double coherence_rel_entropy(double s_energy, double s_vn);

} // namespace nqt
