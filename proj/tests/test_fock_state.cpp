// test_fock_state.cpp — Fock-basis density matrix, populations and entropies

#include "noneq_qthermo/errors.hpp"
#include "noneq_qthermo/fock_state.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace nqt;

namespace {

const BathSpec kFig1 = BathSpec::from_ratio(0.1, 10.0, 20.0);

// -sum e^{-1}/n! ln(e^{-1}/n!) summed to convergence in multiprecision.
constexpr double kPoissonEntropy = 1.30484224225625148430880;

// Term-by-term evaluation of the closed-form matrix element with the k-sum written
// out as printed, in long double with log-factorials.
std::complex<long double> printed_element(std::size_t m, std::size_t n, std::complex<double> u,
                                          std::complex<double> alpha0, double v) {
    const long double a0 = std::norm(alpha0);
    const long double A = std::norm(u) / (1.0L + v);
    const std::complex<long double> alpha(u.real() * alpha0.real() - u.imag() * alpha0.imag(),
                                          u.real() * alpha0.imag() + u.imag() * alpha0.real());
    const long double abs_alpha = std::abs(alpha);
    const long double phase = std::arg(alpha);
    const long double ratio = v / (A * a0);
    long double sum = 0.0L;
    const auto lf = [](std::size_t k) { return std::lgamma(static_cast<long double>(k) + 1.0L); };
    for (std::size_t k = 0; k <= std::min(m, n); ++k) {
        const long double log_term = 0.5L * (lf(m) + lf(n)) - lf(m - k) - lf(n - k) - lf(k) +
                                     static_cast<long double>(k) * std::log(ratio);
        sum += std::exp(log_term + static_cast<long double>(m + n) * std::log(abs_alpha) -
                        static_cast<long double>(m + n + 1) * std::log(1.0L + v));
    }
    const long double magnitude = std::exp(-A * a0) * sum;
    const long double angle = static_cast<long double>(static_cast<long>(m) - static_cast<long>(n)) * phase;
    return std::polar(magnitude, angle);
}

PropagatorSolution single_instant(std::complex<double> u, double v) {
    PropagatorSolution sol;
    sol.grid = TimeGrid{0.0, 0.1, 1};
    sol.u = {u};
    sol.u_dot = {0.0};
    sol.v = {v};
    sol.v_dot = {0.0};
    return sol;
}

} // namespace

TEST_CASE("initial coherent state |alpha0><alpha0|") {
    const auto sol = single_instant(1.0, 0.0);
    const auto rho = density_matrix_at(sol, CoherentInit{}, 0, 40);
    for (std::size_t m = 0; m <= 15; ++m) {
        for (std::size_t n = 0; n <= 15; ++n) {
            const double expected = std::exp(-1.0 - 0.5 * (std::lgamma(m + 1.0) + std::lgamma(n + 1.0)));
            CHECK(std::abs(rho.elements(m, n) - expected) <= 1e-15);
        }
    }
    const auto p = populations_at(sol, CoherentInit{}, 0, 40);
    for (std::size_t n = 0; n <= 20; ++n) {
        CHECK(p[n] == doctest::Approx(std::exp(-1.0 - std::lgamma(n + 1.0))).epsilon(1e-13));
    }
    CHECK(rho.tail_mass <= 1e-10);
}

TEST_CASE("vacuum start gives the geometric distribution with mean v") {
    const double v = 3.7;
    const auto p = populations_at(single_instant({0.3, 0.8}, v), CoherentInit{{0.0, 0.0}}, 0, 200);
    for (std::size_t n = 0; n <= 60; ++n) {
        CHECK(p[n] == doctest::Approx(std::pow(v, n) / std::pow(1.0 + v, n + 1.0)).epsilon(1e-12));
    }
    const auto rho = density_matrix_at(single_instant({0.3, 0.8}, v), CoherentInit{{0.0, 0.0}}, 0, 200);
    CHECK((rho.elements - rho.elements.diagonal().asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("populations match the printed sum mid-evolution") {
    const auto sol = solve_propagator(kFig1, TimeGrid::covering(2.0, 0.001));
    const CoherentInit init{{1.0, 0.0}};
    const std::size_t j = sol.grid.count - 1;
    const auto p = populations_at(sol, init, j, 400);
    for (std::size_t n = 0; n <= 50; ++n) {
        const double oracle = static_cast<double>(printed_element(n, n, sol.u[j], init.alpha0, sol.v[j]).real());
        CHECK(std::abs(p[n] - oracle) <= 1e-12);
    }
}

TEST_CASE("matrix elements match the printed sum with a complex amplitude") {
    const std::complex<double> u{0.31, -0.72};
    const double v = 2.4;
    const CoherentInit init{{0.8, 0.9}};
    const auto rho = density_matrix_at(single_instant(u, v), init, 0, 200);
    for (std::size_t m = 0; m <= 25; ++m) {
        for (std::size_t n = 0; n <= 25; ++n) {
            const auto oracle = printed_element(m, n, u, init.alpha0, v);
            const std::complex<double> ref(static_cast<double>(oracle.real()),
                                           static_cast<double>(oracle.imag()));
            CHECK(std::abs(rho.elements(m, n) - ref) <= 1e-13);
        }
    }
    CHECK((rho.elements - rho.elements.adjoint()).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(std::abs(rho.elements.trace().real() - (1.0 - rho.tail_mass)) <= 1e-13);
    const auto p = populations_at(single_instant(u, v), init, 0, 200);
    for (std::size_t n = 0; n <= 200; ++n) {
        CHECK(std::abs(p[n] - rho.populations[n]) <= 1e-12);
    }
}

TEST_CASE("deep recurrences stay finite") {
    const DisplacedThermal wide{{6.0, 2.0}, 25.0};
    const auto p = displaced_thermal_populations(wide, 2000);
    long double total = 0.0L;
    for (long double x : p) {
        CHECK(x >= 0.0L);
        total += x;
    }
    CHECK(static_cast<double>(total) == doctest::Approx(1.0).epsilon(1e-12));
    const auto rho = displaced_thermal_elements(wide, 1000);
    CHECK(rho.allFinite());
    CHECK(std::abs(rho.trace().real() - 1.0) <= 1e-10);
}

TEST_CASE("truncation and negative noise are rejected") {
    const auto sol = single_instant(1.0, 5.0);
    CHECK_THROWS_AS(populations_at(sol, CoherentInit{}, 0, 20), TruncationError);
    CHECK_THROWS_AS(density_matrix_at(sol, CoherentInit{}, 0, 20), TruncationError);
    CHECK_THROWS_AS(populations_at(single_instant(1.0, -1e-6), CoherentInit{}, 0, 40), DomainError);
    CHECK_THROWS_AS(populations_at(sol, CoherentInit{}, 3, 40), DomainError);
}

TEST_CASE("automatic truncation meets the tail tolerance") {
    const auto sol = solve_propagator(kFig1, TimeGrid::covering(3.0, 0.001));
    const CoherentInit init{};
    const std::size_t n_max = auto_n_max(sol, init);
    const auto series = energy_entropy_series(sol, init, n_max);
    CHECK(series.worst_tail <= kDefaultTailTol);
    CHECK_THROWS_AS(energy_entropy_series(sol, init, n_max / 4), TruncationError);
}

TEST_CASE("energy entropy") {
    const std::vector<double> pure{1.0, 0.0, 0.0};
    CHECK(energy_entropy(pure) == 0.0);
    const std::vector<double> uniform(7, 1.0 / 7.0);
    CHECK(energy_entropy(uniform) == doctest::Approx(std::log(7.0)).epsilon(1e-15));
    const auto p = populations_at(single_instant(1.0, 0.0), CoherentInit{}, 0, 60);
    CHECK(energy_entropy(p) == doctest::Approx(kPoissonEntropy).epsilon(1e-14));
    const std::vector<double> bad{1.1, -0.1};
    CHECK_THROWS_AS(energy_entropy(bad), DomainError);
}

TEST_CASE("von Neumann entropy of the Fock matrix") {
    const auto pure = density_matrix_at(single_instant({0.6, 0.3}, 0.0), CoherentInit{{1.2, -0.4}}, 0, 60);
    CHECK(std::abs(von_neumann_fock(pure)) <= 1e-8);

    // Thermal state with mean 1: (n+1) ln(n+1) - n ln n = 2 ln 2.
    const auto thermal = density_matrix_at(single_instant(1.0, 1.0), CoherentInit{{0.0, 0.0}}, 0, 80);
    CHECK(von_neumann_fock(thermal) == doctest::Approx(2.0 * std::numbers::ln2).epsilon(1e-12));

    FockDensityMatrix broken = thermal;
    broken.elements(0, 0) = -1e-3;
    CHECK_THROWS_AS(von_neumann_fock(broken), TruncationError);
    broken.elements(0, 1) = 0.5;
    CHECK_THROWS_AS(von_neumann_fock(broken), NumericalError);
}

TEST_CASE("relative entropy of coherence") {
    const auto rho = density_matrix_at(single_instant(1.0, 0.0), CoherentInit{}, 0, 60);
    const double c = coherence_rel_entropy(energy_entropy(rho.populations), von_neumann_fock(rho));
    CHECK(c == doctest::Approx(kPoissonEntropy).epsilon(1e-8));
    CHECK(coherence_rel_entropy(1.0, 1.0) == 0.0);
    CHECK(coherence_rel_entropy(1.0, 1.0 + 5e-7) == doctest::Approx(-5e-7));
    CHECK_THROWS_AS(coherence_rel_entropy(1.0, 1.01), InconsistencyError);
}

TEST_CASE("late-time populations are thermal at the renormalized frequency") {
    const auto sol = solve_propagator(kFig1, TimeGrid::covering(140.0, 0.002));
    const std::size_t j = sol.grid.count - 1;
    const CoherentInit init{};
    const auto p = populations_at(sol, init, j, 2000);
    const std::complex<double> ratio = sol.u_dot[j] / sol.u[j];
    const double nbar = bose_occupation(-ratio.imag(), 20.0);
    double tv = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) {
        tv += std::abs(p[n] - std::pow(nbar / (1.0 + nbar), n) / (1.0 + nbar));
    }
    tv *= 0.5;
    MESSAGE("total variation distance " << tv);
    CHECK(tv <= 0.01);
}
