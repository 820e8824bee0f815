// coefficients.hpp — Time-dependent master-equation coefficients from the propagator

#pragma once

#include "noneq_qthermo/propagator.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace nqt {

inline constexpr double kDefaultUFloor = 1e-12;

struct MasterCoefficients {
    TimeGrid grid;
    std::vector<double> omega_ren;   // omega(t) = -Im(u_dot / u)
    std::vector<double> gamma;       // gamma(t) = -Re(u_dot / u)
    std::vector<double> gamma_tilde; // gamma~(t) = v_dot + 2 v gamma

    // Set when |u| fell below the floor; the series then stop at the last safe index
    // and grid.count is reduced to match.
    bool truncated{false};
    std::string truncation_note;

    std::size_t size() const { return omega_ren.size(); }
};

MasterCoefficients derive_coefficients(const PropagatorSolution& sol,
                                       double u_floor = kDefaultUFloor);

} // namespace nqt
