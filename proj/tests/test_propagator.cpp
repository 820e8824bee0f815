// test_propagator.cpp — Volterra solver for u and the noise function v

#include "noneq_qthermo/errors.hpp"
#include "noneq_qthermo/numerics.hpp"
#include "noneq_qthermo/propagator.hpp"

#include <doctest.h>

#include <cmath>

using namespace nqt;

namespace {

const BathSpec kFig1 = BathSpec::from_ratio(0.1, 10.0, 20.0);

// u(5) from the inverse Laplace transform of 1/(s + i w0 + g_hat(s)): pole residue
// plus the branch-cut integral with Delta(w) = eta [-wc + w e^{-w/wc} Ei(w/wc)],
// evaluated to 18 digits in multiprecision.
const std::complex<double> kU5{-0.226095513585277624, 0.847416828217891354};

std::complex<double> u_at(double t, double h) {
    const auto sol = solve_u(kFig1, TimeGrid::covering(t, h));
    return sol.u.back();
}

} // namespace

TEST_CASE("time grid covering") {
    const TimeGrid g = TimeGrid::covering(30.0, 0.001);
    CHECK(g.count == 30001);
    CHECK(g.t_end() == doctest::Approx(30.0).epsilon(1e-15));
    CHECK(g.time(1000) == doctest::Approx(1.0));
    CHECK_THROWS_AS(TimeGrid::covering(1.0, 0.3), DomainError);
    CHECK_THROWS_AS(TimeGrid::covering(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(TimeGrid::covering(0.0, 0.1), DomainError);
    CHECK_THROWS_AS((TimeGrid{0.0, 0.1, 1}.validate()), DomainError);
}

TEST_CASE("closed system: unitary phase rotation and no noise") {
    const BathSpec closed = BathSpec::from_ratio(0.0, 10.0, 20.0);
    const auto sol = solve_propagator(closed, TimeGrid::covering(30.0, 0.001));
    double worst_mod = 0.0;
    double worst_v = 0.0;
    for (std::size_t j = 0; j < sol.u.size(); ++j) {
        worst_mod = std::max(worst_mod, std::abs(std::abs(sol.u[j]) - 1.0));
        worst_v = std::max(worst_v, std::abs(sol.v[j]));
    }
    // The Cayley step is unitary; only rounding accumulates over 3e4 steps.
    CHECK(worst_mod <= 1e-11);
    CHECK(worst_v == 0.0);
    // Trapezoidal phase error is O(h^2 t): arg u(30) = -30 within 30 h^2 / 12.
    CHECK(std::abs(sol.u.back() - std::polar(1.0, -30.0)) <= 30.0 * 1e-6 / 12.0 * 1.01);
    CHECK(sol.warnings.empty());
}

TEST_CASE("u(5) against the resolvent oracle") {
    const auto coarse = u_at(5.0, 0.001);
    const auto fine = u_at(5.0, 0.0005);
    CHECK(std::abs(coarse - kU5) <= 1e-5);
    // Richardson extrapolation removes the h^2 term.
    const auto extrapolated = (4.0 * fine - coarse) / 3.0;
    CHECK(std::abs(extrapolated - kU5) <= 2e-9);
}

TEST_CASE("u converges at second order") {
    const auto a = solve_u(kFig1, TimeGrid::covering(5.0, 0.004)).u;
    const auto b = solve_u(kFig1, TimeGrid::covering(5.0, 0.002)).u;
    const auto c = solve_u(kFig1, TimeGrid::covering(5.0, 0.001)).u;
    double d1 = 0.0, d2 = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        d1 = std::max(d1, std::abs(a[j] - b[2 * j]));
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
        d2 = std::max(d2, std::abs(b[j] - c[2 * j]));
    }
    CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.05));
}

namespace {

// max |D4[u] - u_dot| on [0, 10]: the trapezoidal step is second order, so the
// equation-side derivative departs from the differenced samples by O(h^2).
double u_dot_mismatch(double h) {
    const TimeGrid grid = TimeGrid::covering(10.0, h);
    const auto sol = solve_u(kFig1, grid);
    std::vector<double> re(sol.u.size()), im(sol.u.size());
    for (std::size_t j = 0; j < sol.u.size(); ++j) {
        re[j] = sol.u[j].real();
        im[j] = sol.u[j].imag();
    }
    const auto dre = num::derivative(std::span<const double>(re), grid.step);
    const auto dim = num::derivative(std::span<const double>(im), grid.step);
    double worst = 0.0;
    for (std::size_t j = 0; j < re.size(); ++j) {
        worst = std::max(worst, std::abs(std::complex<double>(dre[j], dim[j]) - sol.u_dot[j]));
    }
    return worst;
}

} // namespace

TEST_CASE("u is contractive and u_dot is consistent with the step") {
    const TimeGrid grid = TimeGrid::covering(10.0, 0.001);
    const auto sol = solve_u(kFig1, grid);
    CHECK(sol.u[0] == std::complex<double>(1.0, 0.0));
    CHECK(sol.u_dot[0] == std::complex<double>(0.0, -1.0));
    double worst_mod = 0.0;
    double worst_trap = 0.0;
    for (std::size_t j = 1; j < sol.u.size(); ++j) {
        worst_mod = std::max(worst_mod, std::abs(sol.u[j]));
        const auto trap = (sol.u[j] - sol.u[j - 1]) / grid.step - 0.5 * (sol.u_dot[j] + sol.u_dot[j - 1]);
        worst_trap = std::max(worst_trap, std::abs(trap));
    }
    CHECK(worst_mod <= 1.0 + kContractivityTol);
    CHECK(worst_trap <= 1e-10);
    CHECK(sol.warnings.empty());

    const double coarse = u_dot_mismatch(0.001);
    const double fine = u_dot_mismatch(0.0005);
    MESSAGE("u_dot vs differenced u: " << coarse << " then " << fine);
    CHECK(coarse <= 5e-6);
    CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.1));
}
