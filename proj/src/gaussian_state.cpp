// gaussian_state.cpp — Quadrature moments, covariance matrix and Gaussian entropy

#include "noneq_qthermo/gaussian_state.hpp"

#include "noneq_qthermo/errors.hpp"

#include <cmath>
#include <sstream>

namespace nqt {

Eigen::Matrix2d covariance_from_moments(std::complex<double> mean_a, double number,
                                        std::complex<double> anomalous) {
    // Central moments: N = <a^dagger a> - |<a>|^2, M = <a a> - <a>^2.
    const double n_c = number - std::norm(mean_a);
    const std::complex<double> m_c = anomalous - mean_a * mean_a;
    Eigen::Matrix2d cov;
    cov(0, 0) = 2.0 * n_c + 1.0 + 2.0 * m_c.real();
    cov(1, 1) = 2.0 * n_c + 1.0 - 2.0 * m_c.real();
    cov(0, 1) = 2.0 * m_c.imag();
    cov(1, 0) = cov(0, 1);
    return cov;
}

GaussianMoments moments_at(const PropagatorSolution& sol, const CoherentInit& init,
                           std::size_t t_index) {
    if (t_index >= sol.u.size() || t_index >= sol.v.size()) {
        throw DomainError("moments_at: time index outside the solved grid");
    }
    const std::complex<double> alpha = sol.u[t_index] * init.alpha0;
    GaussianMoments m;
    m.time = sol.grid.time(t_index);
    m.mean_a = alpha;
    m.number = std::norm(alpha) + sol.v[t_index];
    m.anomalous = alpha * alpha;
    m.covariance = covariance_from_moments(m.mean_a, m.number, m.anomalous);
    const double det = m.covariance.determinant();
    if (det < 1.0 - kPurityTol) {
        std::ostringstream msg;
        msg << "covariance determinant " << det << " < 1 at t = " << m.time
            << " violates the uncertainty bound";
        throw DomainError(msg.str());
    }
    m.symplectic_nu = std::sqrt(det);
    return m;
}

template <class Real>
static Real gaussian_entropy(Real nu) {
    if (nu < Real(1) - static_cast<Real>(kPurityTol)) {
        std::ostringstream msg;
        msg << "symplectic eigenvalue " << static_cast<double>(nu) << " < 1 - " << kPurityTol;
        throw DomainError(msg.str());
    }
    if (nu <= Real(1)) {
        return Real(0);
    }
    const Real plus = (nu + Real(1)) / Real(2);
    const Real minus = (nu - Real(1)) / Real(2);
    return plus * std::log(plus) - minus * std::log(minus);
}

double von_neumann_gaussian(double nu) { return gaussian_entropy(nu); }

long double von_neumann_gaussian(long double nu) { return gaussian_entropy(nu); }

std::vector<long double> von_neumann_series(const PropagatorSolution& sol,
                                            const CoherentInit& init) {
    std::vector<long double> s(sol.grid.count);
    for (std::size_t j = 0; j < s.size(); ++j) {
        const GaussianMoments m = moments_at(sol, init, j);
        // The coherent start keeps V isotropic with nu = 2v + 1; the closed form is
        // used in extended precision once the assembled covariance confirms it.
        const long double nu = 2.0L * static_cast<long double>(sol.v[j]) + 1.0L;
        if (std::abs(m.symplectic_nu - static_cast<double>(nu)) > kIsotropyTol) {
            std::ostringstream msg;
            msg << "symplectic eigenvalue " << m.symplectic_nu << " differs from 2v + 1 = "
                << static_cast<double>(nu) << " at t = " << m.time;
            throw InconsistencyError(msg.str());
        }
        s[j] = von_neumann_gaussian(nu);
    }
    return s;
}

} // namespace nqt
