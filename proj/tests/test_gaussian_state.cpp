// test_gaussian_state.cpp — Quadrature moments, covariance and Gaussian entropy

#include "noneq_qthermo/errors.hpp"
#include "noneq_qthermo/fock_state.hpp"
#include "noneq_qthermo/gaussian_state.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace nqt;

namespace {

const BathSpec kFig1 = BathSpec::from_ratio(0.1, 10.0, 20.0);

double thermal_entropy(double nbar) {
    return (nbar + 1.0) * std::log(nbar + 1.0) - nbar * std::log(nbar);
}

} // namespace

TEST_CASE("coherent start is a minimum-uncertainty state") {
    const auto sol = solve_propagator(kFig1, TimeGrid::covering(1.0, 0.001));
    const CoherentInit init{{0.7, -0.2}};
    const auto m = moments_at(sol, init, 0);
    CHECK(m.mean_a == init.alpha0);
    CHECK(m.number == doctest::Approx(std::norm(init.alpha0)));
    CHECK((m.covariance - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(m.symplectic_nu == doctest::Approx(1.0));
    CHECK(von_neumann_gaussian(m.symplectic_nu) == 0.0);
}

TEST_CASE("closed system stays pure") {
    const auto sol = solve_propagator(BathSpec::from_ratio(0.0, 10.0, 20.0),
                                      TimeGrid::covering(10.0, 0.001));
    const auto s = von_neumann_series(sol, CoherentInit{});
    for (std::size_t j = 0; j < s.size(); j += 97) {
        CHECK(moments_at(sol, CoherentInit{}, j).symplectic_nu == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(s[j] == 0.0L);
    }
}

TEST_CASE("covariance isotropy and agreement with Fock-basis quadrature moments") {
    const auto sol = solve_propagator(BathSpec::from_ratio(0.1, 10.0, 2.0), TimeGrid::covering(6.0, 0.001));
    const CoherentInit init{{1.0, 0.0}};
    const std::size_t n_max = auto_n_max(sol, init);
    const auto dim = static_cast<Eigen::Index>(n_max + 1);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index n = 1; n < dim; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    const Eigen::MatrixXcd xi1 = a + a.adjoint();
    const Eigen::MatrixXcd xi2 = std::complex<double>(0.0, -1.0) * (a - a.adjoint());
    for (std::size_t j : {1000u, 3000u, 6000u}) {
        const auto m = moments_at(sol, init, j);
        CHECK(std::abs(m.covariance(0, 1)) <= 1e-10);
        CHECK(std::abs(m.covariance(0, 0) - m.covariance(1, 1)) <= 1e-10);
        CHECK(m.covariance(0, 0) == doctest::Approx(2.0 * sol.v[j] + 1.0).epsilon(1e-12));

        const auto rho = density_matrix_at(sol, init, j, n_max);
        const double mean1 = (xi1 * rho.elements).trace().real();
        const double mean2 = (xi2 * rho.elements).trace().real();
        const double v11 = (xi1 * xi1 * rho.elements).trace().real() - mean1 * mean1;
        const double v22 = (xi2 * xi2 * rho.elements).trace().real() - mean2 * mean2;
        CHECK(std::abs(v11 - m.covariance(0, 0)) <= 1e-8);
        CHECK(std::abs(v22 - m.covariance(1, 1)) <= 1e-8);
        CHECK(std::abs(mean1 - 2.0 * m.mean_a.real()) <= 1e-10);
    }
}

TEST_CASE("covariance from general moments") {
    // Squeezed-vacuum-like moments: N = sinh^2 r, M = cosh r sinh r e^{i phi}.
    const double r = 0.4;
    const double phi = 0.9;
    const std::complex<double> m = std::polar(std::cosh(r) * std::sinh(r), phi);
    const auto v = covariance_from_moments(0.0, std::sinh(r) * std::sinh(r), m);
    CHECK(v(0, 1) == v(1, 0));
    CHECK(v.determinant() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(v(0, 0) == doctest::Approx(std::cosh(2 * r) + std::sinh(2 * r) * std::cos(phi)));
}

TEST_CASE("uncertainty violation is a domain error") {
    PropagatorSolution sol;
    sol.grid = TimeGrid{0.0, 0.1, 1};
    sol.u = {0.5};
    sol.u_dot = {0.0};
    sol.v = {-0.01};
    sol.v_dot = {0.0};
    CHECK_THROWS_AS(moments_at(sol, CoherentInit{}, 0), DomainError);
}

TEST_CASE("Gaussian entropy formula") {
    CHECK(von_neumann_gaussian(1.0) == 0.0);
    CHECK(von_neumann_gaussian(3.0) == doctest::Approx(2.0 * std::numbers::ln2).epsilon(1e-15));
    CHECK(von_neumann_gaussian(1.0 - 5e-7) == 0.0);
    CHECK_THROWS_AS(von_neumann_gaussian(1.0 - 1e-5), DomainError);
    for (double nbar : {0.01, 0.5, 19.5041664930659}) {
        CHECK(von_neumann_gaussian(2.0 * nbar + 1.0) == doctest::Approx(thermal_entropy(nbar)).epsilon(1e-14));
    }
    CHECK(static_cast<double>(von_neumann_gaussian(3.0L)) ==
          doctest::Approx(2.0 * std::numbers::ln2).epsilon(1e-15));
}

TEST_CASE("late-time entropy is the thermal entropy at the renormalized frequency") {
    const auto sol = solve_propagator(kFig1, TimeGrid::covering(140.0, 0.002));
    const std::size_t j = sol.grid.count - 1;
    const auto s = von_neumann_series(sol, CoherentInit{});
    const double omega = -(sol.u_dot[j] / sol.u[j]).imag();
    const double expected = thermal_entropy(bose_occupation(omega, 20.0));
    CHECK(static_cast<double>(s[j]) == doctest::Approx(expected).epsilon(0.02));
    // S is non-decreasing on this weak-coupling run.
    for (std::size_t k = 10; k < s.size(); k += 10) {
        CHECK(s[k] - s[k - 10] >= -1e-8L);
    }
}
