// numerics.hpp — Quadrature rules, finite-difference stencils and special functions

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace nqt::num {

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule gauss_legendre(int order);

using ComplexIntegrand = std::function<std::complex<double>(double)>;

// Composite Gauss-Legendre over `panels` equal sub-intervals of [a, b].
std::complex<double> integrate_panels(const ComplexIntegrand& f, double a, double b,
                                      std::size_t panels, const GaussRule& rule);

struct PanelReport {
    std::complex<double> value;
    std::size_t panels{0};
    double last_change{0.0}; // relative change at the final doubling
};

// Doubles the panel count until the relative change drops below rel_tol.
// Throws NumericalError (with the last estimates) after max_doublings.
PanelReport integrate_converged(const ComplexIntegrand& f, double a, double b,
                                std::size_t initial_panels, int max_doublings,
                                double rel_tol, int order = 20);

// Complex trigamma psi'(z), valid for Re z > 0.
std::complex<double> trigamma(std::complex<double> z);

// Fourth-order finite-difference derivative of uniformly sampled data.
// Centred five-point stencil in the interior, one-sided five-point at the
// two samples closest to each end. Requires at least 5 samples.
template <class Real>
std::vector<Real> derivative(std::span<const Real> f, double step);

// The same stencil evaluated at a single index.
template <class Real>
Real derivative_at(std::span<const Real> f, double step, std::size_t i);

extern template std::vector<double> derivative(std::span<const double>, double);
extern template std::vector<long double> derivative(std::span<const long double>, double);
extern template double derivative_at(std::span<const double>, double, std::size_t);
extern template long double derivative_at(std::span<const long double>, double, std::size_t);

// ln(n!) via lgamma, cached for small n.
double log_factorial(std::size_t n);

// Set the OpenMP team size used by the parallel kernels; 0 keeps the runtime default.
void set_thread_count(int threads);
int thread_count();

// Reads NONEQ_QTHERMO_THREADS; returns 0 when unset and throws ConfigError when invalid.
int threads_from_environment();

} // namespace nqt::num
