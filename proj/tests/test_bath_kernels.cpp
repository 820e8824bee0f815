// test_bath_kernels.cpp — Spectral density, occupation and memory kernels

#include "noneq_qthermo/bath_kernels.hpp"
#include "noneq_qthermo/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <doctest.h>

#include <cmath>

using namespace nqt;

namespace {

const BathSpec kFig1 = BathSpec::from_ratio(0.1, 10.0, 20.0);

// Independent adaptive Gauss-Kronrod evaluation of
// int_0^wmax J(w) nbar(w) e^{-i w s} dw, split into real and imaginary parts.
std::complex<double> gtilde_kronrod(double lag, const BathSpec& bath, double wmax) {
    using boost::math::quadrature::gauss_kronrod;
    auto weight = [&](double w) {
        if (w == 0.0) {
            return bath.coupling_eta * bath.temperature;
        }
        return bath.coupling_eta * w * std::exp(-w / bath.cutoff) / std::expm1(w / bath.temperature);
    };
    const double re = gauss_kronrod<double, 61>::integrate(
        [&](double w) { return weight(w) * std::cos(w * lag); }, 0.0, wmax, 25, 1e-13);
    const double im = gauss_kronrod<double, 61>::integrate(
        [&](double w) { return -weight(w) * std::sin(w * lag); }, 0.0, wmax, 25, 1e-13);
    return {re, im};
}

} // namespace

TEST_CASE("bath parameters from the coupling ratio") {
    CHECK(kFig1.coupling_eta == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(kFig1.critical_coupling() == doctest::Approx(0.1));
    CHECK(kFig1.is_weak_coupling());
    CHECK_FALSE(BathSpec::from_ratio(1.5, 10.0, 20.0).is_weak_coupling());
    CHECK_NOTHROW(BathSpec::from_ratio(0.0, 10.0, 0.0));
    CHECK_THROWS_AS(BathSpec::from_ratio(-0.1, 10.0, 20.0), DomainError);
    CHECK_THROWS_AS(BathSpec::from_ratio(0.1, 0.0, 20.0), DomainError);
    CHECK_THROWS_AS(BathSpec::from_ratio(0.1, 10.0, -1.0), DomainError);
}

TEST_CASE("Ohmic spectral density") {
    CHECK(spectral_density(0.0, kFig1) == 0.0);
    CHECK(spectral_density(1.0, kFig1) == doctest::Approx(0.01 * std::exp(-0.1)).epsilon(1e-15));
    CHECK_THROWS_AS(spectral_density(-1.0, kFig1), DomainError);
}

TEST_CASE("Bose-Einstein occupation") {
    // nbar(omega0, kT0 = 20) = 19.504 at the bare frequency.
    CHECK(bose_occupation(1.0, 20.0) == doctest::Approx(19.5041664930659).epsilon(1e-13));
    CHECK(bose_occupation(1.0, 15.0) == doctest::Approx(14.5055551440765).epsilon(1e-13));
    CHECK(bose_occupation(1.0, 25.0) == doctest::Approx(24.5033332444478).epsilon(1e-13));
    CHECK(bose_occupation(1.0, 0.0) == 0.0);
    CHECK_THROWS_AS(bose_occupation(0.0, 20.0), DomainError);
    CHECK_THROWS_AS(bose_occupation(-1.0, 20.0), DomainError);
    // High-temperature expansion kT/omega - 1/2 + omega/(12 kT)
    CHECK(bose_occupation(1e-3, 20.0) ==
          doctest::Approx(20.0 / 1e-3 - 0.5 + 1e-3 / 240.0).epsilon(1e-12));
}

TEST_CASE("thermal weight is continuous at omega = 0") {
    CHECK(thermal_weight(0.0, kFig1) == doctest::Approx(0.2));
    CHECK(thermal_weight(1e-9, kFig1) == doctest::Approx(0.2).epsilon(1e-8));
    const double w = 3.0;
    CHECK(thermal_weight(w, kFig1) ==
          doctest::Approx(spectral_density(w, kFig1) * bose_occupation(w, 20.0)).epsilon(1e-14));
}

TEST_CASE("g kernel closed form matches quadrature and Hermitian symmetry") {
    for (double s : {0.0, 0.03, 0.4, 2.5}) {
        const auto closed = g_kernel(s, kFig1);
        const auto quad = g_kernel_quadrature(s, kFig1);
        CHECK(std::abs(closed - quad) <= 1e-9 * std::abs(closed));
        CHECK(std::abs(g_kernel(-s, kFig1) - std::conj(closed)) <= 1e-15 * std::abs(closed));
    }
    // g(0) = eta wc^2
    CHECK(g_kernel(0.0, kFig1).real() == doctest::Approx(1.0));
}

TEST_CASE("g~(0) frozen value") {
    // eta kT0^2 psi1(1 + kT0/wc) at eta = 0.01, wc = 10, kT0 = 20; high-precision quadrature.
    const double v0 = 1.57973626739290574588966;
    CHECK(g_tilde_series(0.0, kFig1).real() == doctest::Approx(v0).epsilon(1e-14));
    CHECK(g_tilde_series(0.0, kFig1).imag() == 0.0);
    CHECK(g_tilde_kernel(0.0, kFig1).real() == doctest::Approx(v0).epsilon(1e-10));
}

TEST_CASE("g~ series, panel quadrature and Gauss-Kronrod agree") {
    for (double temperature : {2.0, 15.0, 25.0}) {
        const BathSpec bath = BathSpec::from_ratio(0.1, 10.0, temperature);
        const double wmax = QuadratureSettings{}.omega_max(bath);
        for (double s : {0.0, 0.02, 0.3, 1.5}) {
            const auto series = g_tilde_series(s, bath);
            const auto panels = g_tilde_kernel(s, bath);
            const auto kronrod = gtilde_kronrod(s, bath, wmax);
            const double scale = std::abs(series);
            CHECK(std::abs(series - panels) <= 1e-9 * scale);
            CHECK(std::abs(series - kronrod) <= 1e-9 * scale);
        }
    }
}

TEST_CASE("g~ vanishes without temperature or coupling and is Hermitian in the lag") {
    CHECK(g_tilde_series(0.7, BathSpec::from_ratio(0.1, 10.0, 0.0)) == std::complex<double>{});
    CHECK(g_tilde_kernel(0.7, BathSpec::from_ratio(0.0, 10.0, 20.0)) == std::complex<double>{});
    for (double s : {0.05, 1.0, 40.0}) {
        const auto a = g_tilde_series(s, kFig1);
        const auto b = g_tilde_series(-s, kFig1);
        CHECK(std::abs(b - std::conj(a)) <= 1e-14 * std::abs(a));
    }
}

TEST_CASE("kernel tables sample the closed forms on the lag grid") {
    const auto k = build_kernel_samples(kFig1, 0.01, 50);
    REQUIRE(k.size() == 50);
    CHECK(k.g_samples[7] == g_kernel(0.07, kFig1));
    CHECK(std::abs(k.gtilde_samples[7] - g_tilde_series(0.07, kFig1)) == 0.0);
    CHECK(k.gtilde_at(-7) == std::conj(k.gtilde_samples[7]));
    CHECK(k.g_at(-3) == std::conj(k.g_samples[3]));
    CHECK_THROWS(k.gtilde_at(50));
    CHECK_THROWS_AS(build_kernel_samples(kFig1, 0.0, 5), DomainError);
}
