// test_numerics.cpp — Quadrature rules, stencils and special functions

#include "noneq_qthermo/errors.hpp"
#include "noneq_qthermo/numerics.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

using namespace nqt;
using std::numbers::pi;

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
    for (int order : {1, 2, 5, 20}) {
        const auto rule = num::gauss_legendre(order);
        double weight_sum = 0.0;
        for (double w : rule.weights) {
            weight_sum += w;
        }
        CHECK(weight_sum == doctest::Approx(2.0).epsilon(1e-14));
        const int degree = 2 * order - 1;
        double integral = 0.0;
        for (int k = 0; k < order; ++k) {
            integral += rule.weights[k] * std::pow(rule.nodes[k], degree - 1);
        }
        // int_{-1}^{1} x^(d-1) dx with d - 1 even
        CHECK(integral == doctest::Approx(2.0 / degree).epsilon(1e-13));
    }
}

TEST_CASE("panel doubling converges and reports non-convergence") {
    const auto report = num::integrate_converged(
        [](double x) { return std::complex<double>(std::exp(-x), std::sin(x)); }, 0.0, 3.0, 2, 10,
        1e-13);
    CHECK(report.value.real() == doctest::Approx(1.0 - std::exp(-3.0)).epsilon(1e-13));
    CHECK(report.value.imag() == doctest::Approx(1.0 - std::cos(3.0)).epsilon(1e-13));

    // 1/sqrt(x) has an endpoint singularity that Gauss panels resolve only slowly.
    CHECK_THROWS_AS(num::integrate_converged(
                        [](double x) { return std::complex<double>(1.0 / std::sqrt(x), 0.0); },
                        0.0, 1.0, 1, 2, 1e-14, 4),
                    NumericalError);
}

TEST_CASE("trigamma at known real points") {
    CHECK(num::trigamma(1.0).real() == doctest::Approx(pi * pi / 6.0).epsilon(1e-15));
    CHECK(num::trigamma(0.5).real() == doctest::Approx(pi * pi / 2.0).epsilon(1e-15));
    CHECK(num::trigamma(2.0).real() == doctest::Approx(pi * pi / 6.0 - 1.0).epsilon(1e-15));
    CHECK_THROWS_AS(num::trigamma({-0.5, 1.0}), DomainError);
}

TEST_CASE("trigamma reflection and recurrence in the complex plane") {
    for (std::complex<double> z : {std::complex<double>(0.5, 0.3), std::complex<double>(0.2, -2.0),
                                   std::complex<double>(0.7, 15.0)}) {
        const std::complex<double> s = std::sin(pi * z);
        const std::complex<double> reflection = pi * pi / (s * s);
        const std::complex<double> sum = num::trigamma(z) + num::trigamma(1.0 - z);
        // Away from the real axis the two terms cancel, so the scale is their size.
        const double scale = std::abs(num::trigamma(z)) + std::abs(num::trigamma(1.0 - z));
        CHECK(std::abs(sum - reflection) <= 1e-14 * scale);
        const std::complex<double> step = num::trigamma(z) - num::trigamma(z + 1.0);
        CHECK(std::abs(step - 1.0 / (z * z)) <= 1e-13 * std::abs(1.0 / (z * z)));
    }
}

TEST_CASE("five-point stencil is exact for quartics, including the end rows") {
    const double h = 0.1;
    std::vector<double> f(12);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = h * static_cast<double>(i);
        f[i] = 3.0 - 2.0 * x + x * x - 0.5 * x * x * x + 0.25 * x * x * x * x;
    }
    const auto d = num::derivative(std::span<const double>(f), h);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = h * static_cast<double>(i);
        CHECK(d[i] == doctest::Approx(-2.0 + 2.0 * x - 1.5 * x * x + x * x * x).epsilon(1e-11));
    }
    CHECK_THROWS_AS(num::derivative(std::span<const double>(f).first(4), h), DomainError);
}

TEST_CASE("fourth-order stencil error falls by 16 per halving") {
    auto max_err = [](double h) {
        std::vector<long double> f(static_cast<std::size_t>(2.0 / h) + 1);
        for (std::size_t i = 0; i < f.size(); ++i) {
            f[i] = std::sin(static_cast<long double>(h * static_cast<double>(i)));
        }
        const auto d = num::derivative(std::span<const long double>(f), h);
        double err = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            err = std::max(err, std::abs(static_cast<double>(d[i]) - std::cos(h * static_cast<double>(i))));
        }
        return err;
    };
    const double ratio = max_err(0.02) / max_err(0.01);
    CHECK(ratio > 14.0);
    CHECK(ratio < 18.0);
}

TEST_CASE("log factorial matches lgamma past the cached table") {
    CHECK(num::log_factorial(0) == 0.0);
    CHECK(num::log_factorial(10) == doctest::Approx(std::log(3628800.0)).epsilon(1e-15));
    CHECK(num::log_factorial(5000) == doctest::Approx(std::lgamma(5001.0)).epsilon(1e-15));
}

TEST_CASE("thread count from the environment") {
    ::unsetenv("NONEQ_QTHERMO_THREADS");
    CHECK(num::threads_from_environment() == 0);
    ::setenv("NONEQ_QTHERMO_THREADS", "3", 1);
    CHECK(num::threads_from_environment() == 3);
    for (const char* bad : {"0", "-2", "two", "4x"}) {
        ::setenv("NONEQ_QTHERMO_THREADS", bad, 1);
        CHECK_THROWS_AS(num::threads_from_environment(), ConfigError);
    }
    ::unsetenv("NONEQ_QTHERMO_THREADS");
}
