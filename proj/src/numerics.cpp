// numerics.cpp — Quadrature rules, finite-difference stencils and special functions

#include "noneq_qthermo/numerics.hpp"

#include "noneq_qthermo/errors.hpp"

#include <omp.h>

#include <array>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

namespace nqt::num {

GaussRule gauss_legendre(int order) {
    if (order < 1) {
        throw DomainError("gauss_legendre: order must be positive");
    }
    GaussRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    if (order % 2 == 1) {
        rule.nodes[order / 2] = 0.0;
    }
    return rule;
}

std::complex<double> integrate_panels(const ComplexIntegrand& f, double a, double b,
                                      std::size_t panels, const GaussRule& rule) {
    const double width = (b - a) / static_cast<double>(panels);
    const double half = 0.5 * width;
    std::complex<double> total{0.0, 0.0};
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = a + (static_cast<double>(p) + 0.5) * width;
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            acc += rule.weights[k] * f(mid + half * rule.nodes[k]);
        }
        total += half * acc;
    }
    return total;
}

PanelReport integrate_converged(const ComplexIntegrand& f, double a, double b,
                                std::size_t initial_panels, int max_doublings,
                                double rel_tol, int order) {
    const GaussRule rule = gauss_legendre(order);
    std::size_t panels = std::max<std::size_t>(1, initial_panels);
    std::complex<double> previous = integrate_panels(f, a, b, panels, rule);
    double change = 0.0;
    for (int d = 0; d < max_doublings; ++d) {
        panels *= 2;
        const std::complex<double> current = integrate_panels(f, a, b, panels, rule);
        const double scale = std::max(std::abs(current), 1e-300);
        change = std::abs(current - previous) / scale;
        if (change <= rel_tol || std::abs(current - previous) < 1e-300) {
            return {current, panels, change};
        }
        previous = current;
    }
    std::ostringstream msg;
    msg << "quadrature did not converge on [" << a << ", " << b << "] after " << panels
        << " panels: last relative change " << change << " > " << rel_tol
        << ", estimate " << previous.real() << (previous.imag() < 0 ? "" : "+")
        << previous.imag() << "i";
    throw NumericalError(msg.str());
}

std::complex<double> trigamma(std::complex<double> z) {
    if (!(z.real() > 0.0)) {
        throw DomainError("trigamma: requires Re z > 0");
    }
    // Recurrence psi1(z) = psi1(z+1) + 1/z^2 until |z| is in the asymptotic range.
    std::complex<double> shift{0.0, 0.0};
    while (std::abs(z) < 16.0) {
        shift += 1.0 / (z * z);
        z += 1.0;
    }
    // psi1(z) ~ 1/z + 1/(2 z^2) + sum_k B_2k / z^(2k+1)
    static constexpr std::array<double, 8> bernoulli{
        1.0 / 6.0,       -1.0 / 30.0,  1.0 / 42.0,  -1.0 / 30.0,
        5.0 / 66.0, -691.0 / 2730.0,   7.0 / 6.0, -3617.0 / 510.0};
    const std::complex<double> inv = 1.0 / z;
    const std::complex<double> inv2 = inv * inv;
    std::complex<double> series{0.0, 0.0};
    std::complex<double> power = inv2 * inv; // z^-3
    for (double b : bernoulli) {
        series += b * power;
        power *= inv2;
    }
    return shift + inv + 0.5 * inv2 + series;
}

template <class Real>
Real derivative_at(std::span<const Real> f, double step, std::size_t i) {
    const std::size_t n = f.size();
    if (n < 5) {
        throw DomainError("derivative: need at least 5 samples");
    }
    const Real h12 = Real(12) * static_cast<Real>(step);
    if (i >= 2 && i + 2 < n) {
        return (f[i - 2] - Real(8) * f[i - 1] + Real(8) * f[i + 1] - f[i + 2]) / h12;
    }
    if (i == 0) {
        return (Real(-25) * f[0] + Real(48) * f[1] - Real(36) * f[2] + Real(16) * f[3] -
                Real(3) * f[4]) / h12;
    }
    if (i == 1) {
        return (Real(-3) * f[0] - Real(10) * f[1] + Real(18) * f[2] - Real(6) * f[3] + f[4]) /
               h12;
    }
    const std::size_t k = n - 1;
    if (i == k) {
        return (Real(25) * f[k] - Real(48) * f[k - 1] + Real(36) * f[k - 2] -
                Real(16) * f[k - 3] + Real(3) * f[k - 4]) / h12;
    }
    // i == k - 1
    return (Real(3) * f[k] + Real(10) * f[k - 1] - Real(18) * f[k - 2] + Real(6) * f[k - 3] -
            f[k - 4]) / h12;
}

template <class Real>
std::vector<Real> derivative(std::span<const Real> f, double step) {
    std::vector<Real> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        out[i] = derivative_at(f, step, i);
    }
    return out;
}

template std::vector<double> derivative(std::span<const double>, double);
template std::vector<long double> derivative(std::span<const long double>, double);
template double derivative_at(std::span<const double>, double, std::size_t);
template long double derivative_at(std::span<const long double>, double, std::size_t);

double log_factorial(std::size_t n) {
    static const std::vector<double> table = [] {
        std::vector<double> t(2048);
        t[0] = 0.0;
        for (std::size_t k = 1; k < t.size(); ++k) {
            t[k] = t[k - 1] + std::log(static_cast<double>(k));
        }
        return t;
    }();
    if (n < table.size()) {
        return table[n];
    }
    return std::lgamma(static_cast<double>(n) + 1.0);
}

void set_thread_count(int threads) {
    if (threads > 0) {
        omp_set_num_threads(threads);
    }
}

int thread_count() { return omp_get_max_threads(); }

int threads_from_environment() {
    const char* raw = std::getenv("NONEQ_QTHERMO_THREADS");
    if (raw == nullptr || *raw == '\0') {
        return 0;
    }
    char* end = nullptr;
    const long value = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || value < 1 || value > 4096) {
        throw ConfigError(std::string("NONEQ_QTHERMO_THREADS must be a positive integer, got '") +
                          raw + "'");
    }
    return static_cast<int>(value);
}

} // namespace nqt::num
