// coefficients.cpp — Time-dependent master-equation coefficients from the propagator

#include "noneq_qthermo/coefficients.hpp"

#include "noneq_qthermo/errors.hpp"

#include <cmath>
#include <sstream>

namespace nqt {

MasterCoefficients derive_coefficients(const PropagatorSolution& sol, double u_floor) {
    const std::size_t n = sol.u.size();
    if (sol.u_dot.size() != n || sol.v.size() != n || sol.v_dot.size() != n ||
        sol.grid.count != n) {
        throw DomainError("derive_coefficients: propagator series have inconsistent lengths");
    }

    std::size_t safe = n;
    for (std::size_t j = 0; j < n; ++j) {
        if (!(std::abs(sol.u[j]) > u_floor)) {
            safe = j;
            break;
        }
    }

    MasterCoefficients out;
    out.grid = sol.grid;
    if (safe < n) {
        if (safe < 2) {
            throw NumericalError("derive_coefficients: |u| below floor at the first samples");
        }
        out.truncated = true;
        std::ostringstream msg;
        msg << "|u| < " << u_floor << " at t = " << sol.grid.time(safe)
            << "; coefficients truncated to " << safe << " samples";
        out.truncation_note = msg.str();
        out.grid.count = safe;
    }

    out.omega_ren.resize(safe);
    out.gamma.resize(safe);
    out.gamma_tilde.resize(safe);
    for (std::size_t j = 0; j < safe; ++j) {
        const std::complex<double> ratio = sol.u_dot[j] / sol.u[j];
        out.omega_ren[j] = -ratio.imag();
        out.gamma[j] = -ratio.real();
        out.gamma_tilde[j] = sol.v_dot[j] + 2.0 * sol.v[j] * out.gamma[j];
    }
    return out;
}

} // namespace nqt
